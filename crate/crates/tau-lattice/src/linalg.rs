//! Exact determinants, Pfaffians and minor extraction over commutative
//! coefficient rings.
//!
//! Two determinant backends: fraction-free Gaussian elimination over the
//! rationals (a field, so division is fine) and memoized cofactor expansion
//! for arbitrary rings such as [`GradedPoly`]. The Pfaffian uses first-row
//! expansion with memoization on index subsets; instance sizes here stay
//! small (n <= 12), so the 2^n memo table is cheap.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Deserialize;

use crate::poly::GradedPoly;
use crate::rat::{parse_rat, Rat};
use crate::Error;

/// Minimal commutative-ring interface for the generic backends.
pub trait Ring: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Whether exact division is available (field fast path).
    const IS_FIELD: bool;
    /// Division; only called when `IS_FIELD` is true.
    fn div(&self, _other: &Self) -> Self {
        unimplemented!("division unavailable in this ring")
    }
}

impl Ring for Rat {
    const IS_FIELD: bool = true;
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
}

impl Ring for GradedPoly {
    const IS_FIELD: bool = false;
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("truncation mismatch")
    }
    fn sub(&self, other: &Self) -> Self {
        self.checked_add(&other.clone().neg()).expect("truncation mismatch")
    }
    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("truncation mismatch")
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
}

/// Dense rectangular matrix over a ring.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self, Error> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::NotSquare { rows: nrows, cols: ncols });
        }
        Ok(Matrix { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    /// Entry-wise minor `M_(I|J)`; index lists are strictly increasing.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Matrix<R>, Error> {
        for w in rows.windows(2).chain(cols.windows(2)) {
            if w[0] >= w[1] {
                return Err(Error::BadMinor);
            }
        }
        if let Some(&i) = rows.iter().find(|&&i| i >= self.rows) {
            return Err(Error::IndexRange(i, self.rows));
        }
        if let Some(&j) = cols.iter().find(|&&j| j >= self.cols) {
            return Err(Error::IndexRange(j, self.cols));
        }
        Ok(Matrix::from_fn(rows.len(), cols.len(), |a, b| self.get(rows[a], cols[b]).clone()))
    }

    /// Exact determinant; elimination over fields, memoized Laplace otherwise.
    pub fn det(&self) -> Result<R, Error> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(R::one());
        }
        if R::IS_FIELD {
            return Ok(self.det_elimination());
        }
        // Expand along columns, memoizing on the subset of surviving rows.
        // State: the first `popcount(mask)` columns remain to be matched with
        // the rows in `mask`.
        let mut memo: HashMap<u64, R> = HashMap::new();
        Ok(self.det_laplace((1u64 << n) - 1, &mut memo))
    }

    fn det_laplace(&self, mask: u64, memo: &mut HashMap<u64, R>) -> R {
        if mask == 0 {
            return R::one();
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let col = mask.count_ones() as usize - 1;
        let mut acc = R::zero();
        // Cofactor sign (-1)^{row rank + col}; the column index contributes
        // a fixed parity at this level of the expansion.
        let mut sign_neg = col % 2 == 1;
        for i in 0..self.rows {
            if mask & (1 << i) == 0 {
                continue;
            }
            let entry = self.get(i, col);
            if !entry.is_zero() {
                let sub = self.det_laplace(mask & !(1 << i), memo);
                let term = entry.mul(&sub);
                acc = if sign_neg { acc.sub(&term) } else { acc.add(&term) };
            }
            sign_neg = !sign_neg;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    fn det_elimination(&self) -> R {
        let n = self.rows;
        let mut m: Vec<Vec<R>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut det = R::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&i| !m[i][col].is_zero()) else {
                return R::zero();
            };
            if piv != col {
                m.swap(piv, col);
                det = det.neg();
            }
            let pivot = m[col][col].clone();
            det = det.mul(&pivot);
            for i in col + 1..n {
                if m[i][col].is_zero() {
                    continue;
                }
                let factor = m[i][col].div(&pivot);
                for j in col..n {
                    let delta = factor.mul(&m[col][j]);
                    m[i][j] = m[i][j].sub(&delta);
                }
            }
        }
        det
    }
}

/// Skew-symmetric square matrix; skewness is validated on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewMatrix<R> {
    mat: Matrix<R>,
}

impl<R: Ring> SkewMatrix<R> {
    pub fn from_matrix(mat: Matrix<R>) -> Result<Self, Error> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::NotSquare { rows: mat.nrows(), cols: mat.ncols() });
        }
        for i in 0..mat.nrows() {
            for j in i..mat.ncols() {
                if *mat.get(i, j) != mat.get(j, i).neg() {
                    return Err(Error::NotSkew(i, j));
                }
            }
        }
        Ok(SkewMatrix { mat })
    }

    /// Builds from the strict upper triangle: `upper(i, j)` for `i < j`.
    pub fn from_upper(n: usize, mut upper: impl FnMut(usize, usize) -> R) -> Self {
        let mut entries: HashMap<(usize, usize), R> = HashMap::new();
        for i in 0..n {
            for j in i + 1..n {
                entries.insert((i, j), upper(i, j));
            }
        }
        let mat = Matrix::from_fn(n, n, |i, j| {
            if i < j {
                entries[&(i, j)].clone()
            } else if i > j {
                entries[&(j, i)].neg()
            } else {
                R::zero()
            }
        });
        SkewMatrix { mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.mat
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        self.mat.get(i, j)
    }

    /// Principal submatrix `M_(I|I)`; stays skew-symmetric.
    pub fn principal(&self, idx: &[usize]) -> Result<SkewMatrix<R>, Error> {
        Ok(SkewMatrix { mat: self.mat.submatrix(idx, idx)? })
    }

    /// Pfaffian. Odd dimension returns ring zero with `odd = true` so sum
    /// identities can drop those terms rather than fail.
    pub fn pfaffian(&self) -> PfaffianResult<R> {
        let n = self.dim();
        if n % 2 == 1 {
            return PfaffianResult { value: R::zero(), odd: true };
        }
        let mut memo: HashMap<u64, R> = HashMap::new();
        let mask = if n == 0 { 0 } else { (1u64 << n) - 1 };
        PfaffianResult { value: self.pf_rec(mask, &mut memo), odd: false }
    }

    fn pf_rec(&self, mask: u64, memo: &mut HashMap<u64, R>) -> R {
        if mask == 0 {
            return R::one();
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let first = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << first);
        let mut acc = R::zero();
        let mut sign_neg = false;
        let mut j = rest;
        while j != 0 {
            let k = j.trailing_zeros() as usize;
            j &= j - 1;
            let entry = self.get(first, k);
            if !entry.is_zero() {
                let sub = self.pf_rec(rest & !(1 << k), memo);
                let term = entry.mul(&sub);
                acc = if sign_neg { acc.sub(&term) } else { acc.add(&term) };
            }
            sign_neg = !sign_neg;
        }
        memo.insert(mask, acc.clone());
        acc
    }
}

/// Pfaffian value with the odd-dimension flag.
#[derive(Debug, Clone, PartialEq)]
pub struct PfaffianResult<R> {
    pub value: R,
    pub odd: bool,
}

/// Reads a rational skew matrix from a JSON array-of-arrays of rational
/// strings (or plain numbers); skewness is validated.
pub fn skew_matrix_from_json(text: &str) -> Result<SkewMatrix<Rat>, Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Cell {
        Int(i64),
        Str(String),
    }
    let raw: Vec<Vec<Cell>> =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut rows = Vec::with_capacity(raw.len());
    for r in raw {
        let mut row = Vec::with_capacity(r.len());
        for c in r {
            row.push(match c {
                Cell::Int(n) => crate::rat::rat(n),
                Cell::Str(s) => parse_rat(&s)?,
            });
        }
        rows.push(row);
    }
    SkewMatrix::from_matrix(Matrix::from_rows(rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn rmat(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn det_examples() {
        assert_eq!(rmat(&[&[7]]).det().unwrap(), rat(7));
        assert_eq!(rmat(&[&[0, 3], &[-3, 0]]).det().unwrap(), rat(9));
        assert_eq!(rmat(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]).det().unwrap(), rat(-3));
        assert_eq!(Matrix::<Rat>::from_rows(vec![]).unwrap().det().unwrap(), rat(1));
    }

    #[test]
    fn det_backends_agree() {
        // Same integer matrix through the field path and the ring path.
        let entries = [[3, -1, 2, 0], [5, 4, -2, 1], [0, 2, 2, -3], [1, 1, 1, 1]];
        let field = Matrix::from_fn(4, 4, |i, j| rat(entries[i][j]));
        let ring = Matrix::from_fn(4, 4, |i, j| {
            GradedPoly::constant(rat(entries[i][j]), crate::poly::TRUNC_ANY)
        });
        let d_field = field.det().unwrap();
        let d_ring = ring.det().unwrap();
        assert_eq!(d_ring, GradedPoly::constant(d_field, crate::poly::TRUNC_ANY));
    }

    #[test]
    fn det_polynomial_entries() {
        let t1 = GradedPoly::var(1, 6);
        let t2 = GradedPoly::var(2, 6);
        let m = Matrix::from_rows(vec![
            vec![t1.clone(), t2.clone()],
            vec![<GradedPoly as Ring>::one(), t1.clone()],
        ])
        .unwrap();
        assert_eq!(m.det().unwrap(), t1.clone() * t1 - t2);
    }

    #[test]
    fn pfaffian_examples() {
        let empty = SkewMatrix::<Rat>::from_upper(0, |_, _| unreachable!());
        assert_eq!(empty.pfaffian().value, rat(1));
        let two = SkewMatrix::from_upper(2, |_, _| rat(5));
        assert_eq!(two.pfaffian().value, rat(5));
        // a12 a34 - a13 a24 + a14 a23 with entries 1..6
        let vals = [[0, 1, 2, 3], [0, 0, 4, 5], [0, 0, 0, 6]];
        let four = SkewMatrix::from_upper(4, |i, j| rat(vals[i][j]));
        assert_eq!(four.pfaffian().value, rat(1 * 6 - 2 * 5 + 3 * 4));
    }

    #[test]
    fn odd_pfaffian_flagged_zero() {
        let m = SkewMatrix::from_upper(3, |i, j| rat((i + j) as i64));
        let pf = m.pfaffian();
        assert!(pf.odd);
        assert_eq!(pf.value, rat(0));
    }

    #[test]
    fn pfaffian_squares_to_det() {
        // deterministic pseudo-random entries
        let mut state = 1u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            rat(((state >> 33) as i64 % 19) - 9)
        };
        for n in [2usize, 4, 6, 8] {
            let m = SkewMatrix::from_upper(n, |_, _| next());
            let pf = m.pfaffian().value;
            assert_eq!(&pf * &pf, m.matrix().det().unwrap());
        }
    }

    #[test]
    fn pfaffian_matches_perfect_matching_sum() {
        fn matching_sum(m: &SkewMatrix<Rat>) -> Rat {
            fn rec(m: &SkewMatrix<Rat>, left: Vec<usize>) -> Rat {
                if left.is_empty() {
                    return rat(1);
                }
                let first = left[0];
                let mut acc = rat(0);
                for (pos, &k) in left.iter().enumerate().skip(1) {
                    let mut rest = left.clone();
                    rest.remove(pos);
                    rest.remove(0);
                    let sign = if pos % 2 == 1 { rat(1) } else { rat(-1) };
                    acc += sign * m.get(first, k) * rec(m, rest);
                }
                acc
            }
            rec(m, (0..m.dim()).collect())
        }
        let mut c = 0i64;
        for n in [2usize, 4, 6] {
            let m = SkewMatrix::from_upper(n, |_, _| {
                c += 1;
                rat((c * c) % 13 - 6)
            });
            assert_eq!(m.pfaffian().value, matching_sum(&m));
        }
    }

    #[test]
    fn submatrix_examples() {
        let vals = [[0, 1, 2, 3], [0, 0, 4, 5], [0, 0, 0, 6]];
        let m = SkewMatrix::from_upper(4, |i, j| rat(vals[i][j]));
        let full = m.matrix().submatrix(&[0, 1, 2, 3], &[0, 1, 2, 3]).unwrap();
        assert_eq!(&full, m.matrix());
        let cell = m.matrix().submatrix(&[0], &[1]).unwrap();
        assert_eq!(cell.get(0, 0), &rat(1));
        let pr = m.principal(&[0, 2]).unwrap();
        assert_eq!(pr.get(0, 1), &rat(2));
        assert!(m.matrix().submatrix(&[1, 0], &[0, 1]).is_err());
        assert!(m.matrix().submatrix(&[0, 9], &[0, 1]).is_err());
    }

    #[test]
    fn json_load_validates_skewness() {
        let ok = skew_matrix_from_json(r#"[["0","1/2"],["-1/2","0"]]"#).unwrap();
        assert_eq!(ok.get(0, 1), &crate::rat::ratio(1, 2));
        let mixed = skew_matrix_from_json(r#"[[0,3],[-3,0]]"#).unwrap();
        assert_eq!(mixed.get(0, 1), &rat(3));
        assert!(skew_matrix_from_json(r#"[[0,1],[1,0]]"#).is_err());
        assert!(skew_matrix_from_json(r#"[[1,1],[-1,0]]"#).is_err());
    }
}
