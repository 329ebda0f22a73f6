//! Exact symbolic engine for a q-deformed GL(2), the quantum Minkowski space
//! built on it, and the free-field (BRST) realization of its harmonic
//! analysis. Everything is computed over exact coefficient fields; there is
//! no floating point anywhere in the crate.

pub mod cft;
pub mod linalg;
pub mod rewrite;
pub mod scalar;
pub mod qminkowski;
pub mod uqgl2;

pub use scalar::{ExactScalar, Scalar};

/// Default symbolic coefficient field: rational functions of the deformation
/// and level parameters.
pub type Scal = ExactScalar;

/// Plain rational numbers, used when every parameter has been specialized.
pub type QRat = num_rational::BigRational;
