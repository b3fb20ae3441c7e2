//! Exact computer algebra for lattices of polynomial KP and BKP tau-functions.
//!
//! The KP lattice elements are Schur functions (and their content-product
//! deformations) written as polynomials in the flow variables `t1, t2, ...`
//! with `deg t_j = j`; the BKP lattice elements are Schur Q-functions in the
//! odd flow variables. The `lab` module verifies, in zero-tolerance rational
//! arithmetic, the bilinear expansions of KP lattice elements in products of
//! pairs of BKP lattice elements, the determinant/Pfaffian minor identity,
//! and the generalized and Laguerre specializations.
//!
//! Every coefficient is an exact `BigRational`; there is no floating point
//! anywhere in the core.

pub mod error;
pub mod fock;
pub mod lab;
pub mod linalg;
pub mod partition;
pub mod polarization;
pub mod poly;
pub mod qschur;
pub mod rat;
pub mod schur;

pub use error::Error;
pub use partition::{FrobeniusCoords, Partition, RParams, SkewShape, StrictPartition};
pub use polarization::Polarization;
pub use poly::{FlowVector, GradedPoly};
pub use rat::Rat;
