//! Scalar arithmetic: exact rational functions of the deformation and level
//! parameters, plain rationals for specialized runs, and the trait that lets
//! the rest of the crate stay generic over the two.

pub mod gcd;
pub mod parse;
pub mod poly;
pub mod qcomb;
pub mod ratfun;

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use gcd::{poly_gcd, poly_lcm};
pub use parse::parse_scalar;
pub use poly::{qr, qr2, MPoly, Mono, NVARS, VAR_NAMES, VETA, VKAPPA, VP, VS, VT, VU};
pub use qcomb::{gaussian_binomial, q_binomial, q_factorial, q_integer, round_bracket};
pub use ratfun::ExactScalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("specialization hits a pole of {value}")]
    Pole { value: String },
    #[error("parse error: {message}")]
    Parse { message: String },
}

/// The field the linear algebra and module machinery is generic over.
/// Everything here is exact; there is deliberately no floating point
/// realization.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_i64(n: i64) -> Self;

    /// Inject a rational constant.
    fn from_qrat(r: &BigRational) -> Self;

    /// Multiplicative inverse; panics on zero (callers gate on `is_zero`).
    fn inv(&self) -> Self;
}

impl Scalar for ExactScalar {
    fn from_i64(n: i64) -> Self {
        ExactScalar::from_int(n)
    }

    fn from_qrat(r: &BigRational) -> Self {
        ExactScalar::from_qrat(r.clone())
    }

    fn inv(&self) -> Self {
        ExactScalar::inv(self)
    }
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }

    fn from_qrat(r: &BigRational) -> Self {
        r.clone()
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        self.recip()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field_laws<T: Scalar>(a: T, b: T, c: T) {
        assert_eq!(
            a.clone() + (b.clone() + c.clone()),
            (a.clone() + b.clone()) + c.clone()
        );
        assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        assert_eq!(
            a.clone() * (b.clone() + c.clone()),
            a.clone() * b.clone() + a.clone() * c.clone()
        );
        assert_eq!(a.clone() - a.clone(), T::zero());
        if !b.is_zero() {
            assert_eq!(b.clone() * b.inv(), T::one());
            assert_eq!((a.clone() * b.clone()) / b.clone(), a.clone());
        }
        assert_eq!(T::from_i64(2) + T::from_i64(3), T::from_i64(5));
        assert_eq!(-a.clone() + a.clone(), T::zero());
    }

    #[test]
    fn both_realizations_satisfy_field_laws() {
        field_laws(
            ExactScalar::q() + ExactScalar::from_int(1),
            ExactScalar::q_pow(-1),
            ExactScalar::var(VKAPPA),
        );
        field_laws(qr2(3, 4), qr(-2), qr2(7, 5));
    }
}
