use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parts must be positive and weakly decreasing: {0}")]
    NotPartition(String),
    #[error("parts must be strictly decreasing and non-negative: {0}")]
    NotStrict(String),
    #[error("strict partition has odd cardinality and already contains 0: {0}")]
    CannotSupplement(String),
    #[error("doubled partition requires a zero-free strict partition: {0}")]
    ZeroPart(String),
    #[error("inner shape not contained in outer shape")]
    Containment,
    #[error("r-parameter undefined at index {0}")]
    UndefinedR(i64),
    #[error("r-parameters are not B-symmetric (r_j = r_(1-j) fails at j = {0})")]
    NotSymmetricR(i64),
    #[error("truncation degree {have} is smaller than required degree {need}")]
    DegreeTooSmall { have: u32, need: u32 },
    #[error("mixed truncation degrees: {0} vs {1}")]
    TruncationMismatch(u32, u32),
    #[error("polynomial has even-variable support")]
    EvenSupport,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not skew-symmetric at ({0}, {1})")]
    NotSkew(usize, usize),
    #[error("index {0} out of range for dimension {1}")]
    IndexRange(usize, usize),
    #[error("minor row and column lists must be strictly increasing and equal length")]
    BadMinor,
    #[error("cardinality parity mismatch between labels")]
    Parity,
    #[error("fermionic window [-{0}, {0}) too small for this computation")]
    WindowTooSmall(i64),
    #[error("operator index {0} outside the window [-{1}, {1})")]
    IndexOutsideWindow(i64, i64),
    #[error("square-root-of-two exponent {0} is odd; value is irrational")]
    IrrationalScalar(i32),
    #[error("linear solve inconsistent at degree {0}")]
    SolveInconsistent(u32),
    #[error("invalid Frobenius data: {0}")]
    BadFrobenius(String),
    #[error("parse error: {0}")]
    Parse(String),
}
