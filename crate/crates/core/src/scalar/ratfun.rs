//! The exact coefficient field: rational functions in the named
//! indeterminates, kept in canonical form (reduced fraction, monic
//! denominator). Equality of values is structural equality, which the
//! whole verification strategy leans on.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gcd::poly_gcd;
use super::poly::{qr, MPoly, Mono, NVARS, VS};
use super::ScalarError;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactScalar {
    num: MPoly,
    den: MPoly,
}

impl ExactScalar {
    /// Build from an arbitrary fraction, reducing to canonical form.
    pub fn new(num: MPoly, den: MPoly) -> ExactScalar {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return ExactScalar {
                num: MPoly::zero(),
                den: MPoly::one(),
            };
        }
        let g = poly_gcd(&num, &den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if !lc.is_one() {
            num = num.div_qrat(&lc);
            den = den.div_qrat(&lc);
        }
        ExactScalar { num, den }
    }

    pub fn from_poly(p: MPoly) -> ExactScalar {
        ExactScalar {
            num: p,
            den: MPoly::one(),
        }
    }

    pub fn from_qrat(r: BigRational) -> ExactScalar {
        ExactScalar::from_poly(MPoly::constant(r))
    }

    pub fn from_int(n: i64) -> ExactScalar {
        ExactScalar::from_poly(MPoly::from_i64(n))
    }

    pub fn ratio(num: i64, den: i64) -> ExactScalar {
        assert!(den != 0);
        ExactScalar::from_qrat(BigRational::new(num.into(), den.into()))
    }

    pub fn var(v: usize) -> ExactScalar {
        ExactScalar::from_poly(MPoly::var(v))
    }

    /// The deformation parameter `q = s^2`.
    pub fn q() -> ExactScalar {
        ExactScalar::from_poly(MPoly::var_pow(VS, 2))
    }

    /// Integer power of `q`, negative exponents allowed.
    pub fn q_pow(k: i64) -> ExactScalar {
        ExactScalar::s_pow(2 * k)
    }

    /// Integer power of `s = q^{1/2}`, negative exponents allowed.
    pub fn s_pow(k: i64) -> ExactScalar {
        let e = u16::try_from(k.unsigned_abs()).expect("exponent too large");
        let p = MPoly::var_pow(VS, e);
        if k >= 0 {
            ExactScalar::from_poly(p)
        } else {
            ExactScalar {
                num: MPoly::one(),
                den: p,
            }
        }
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The constant rational value, if there is one.
    pub fn as_qrat(&self) -> Option<BigRational> {
        match (self.num.as_constant(), self.den.as_constant()) {
            (Some(n), Some(d)) => Some(n / d),
            _ => None,
        }
    }

    pub fn inv(&self) -> ExactScalar {
        assert!(!self.is_zero(), "inverse of zero");
        ExactScalar::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, k: i64) -> ExactScalar {
        if k < 0 {
            return self.inv().pow(-k);
        }
        let e = u32::try_from(k).unwrap();
        ExactScalar {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Full evaluation at a rational point; reports the offending value on a
    /// vanishing denominator.
    pub fn specialize(&self, vals: &[BigRational; NVARS]) -> Result<BigRational, ScalarError> {
        let d = self.den.eval_all(vals);
        if d.is_zero() {
            return Err(ScalarError::Pole {
                value: self.to_string(),
            });
        }
        Ok(self.num.eval_all(vals) / d)
    }

    /// Substitute a scalar for one variable (composition of rational
    /// functions).
    pub fn subst_var(&self, v: usize, val: &ExactScalar) -> ExactScalar {
        let sub_poly = |p: &MPoly| -> (MPoly, u16) {
            // p with x_v -> a/b, returned as (numerator, power of b below)
            if !p.uses_var(v) {
                return (p.clone(), 0);
            }
            let coeffs = p.coeffs_in_var(v);
            let d = (coeffs.len() - 1) as u16;
            let mut acc = MPoly::zero();
            for (k, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let term = c
                    .mul(&val.num.pow(k as u32))
                    .mul(&val.den.pow((d - k as u16) as u32));
                acc = acc.add(&term);
            }
            (acc, d)
        };
        let (n_poly, n_pow) = sub_poly(&self.num);
        let (d_poly, d_pow) = sub_poly(&self.den);
        // (n / b^n_pow) / (d / b^d_pow)
        let num = n_poly.mul(&val.den.pow(d_pow as u32));
        let den = d_poly.mul(&val.den.pow(n_pow as u32));
        ExactScalar::new(num, den)
    }

    /// Does the value mention this variable at all?
    pub fn uses_var(&self, v: usize) -> bool {
        self.num.uses_var(v) || self.den.uses_var(v)
    }

    /// True when the graded-lex leading coefficient of the numerator is
    /// negative; used for sign-aware pretty printing.
    pub fn has_negative_lead(&self) -> bool {
        use num_traits::Signed;
        self.num
            .leading_coeff()
            .map(|c| c.is_negative())
            .unwrap_or(false)
    }

    /// Single monomial over a single monomial, so it prints without
    /// parentheses ambiguity in products.
    pub fn is_single_term(&self) -> bool {
        self.num.num_terms() == 1 && self.den.num_terms() == 1
    }

    /// Scalar with every even power of `s` rendered via `q`; falls back to
    /// `s` when odd powers occur.
    fn use_q_rendering(&self) -> bool {
        self.num.s_exponents_even() && self.den.s_exponents_even()
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let use_q = self.use_q_rendering();
        if self.den.is_one() {
            write!(f, "{}", self.num.render(use_q))
        } else {
            write!(
                f,
                "({})/({})",
                self.num.render(use_q),
                self.den.render(use_q)
            )
        }
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: ExactScalar) -> ExactScalar {
        &self + &rhs
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        ExactScalar::new(num, den)
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: ExactScalar) -> ExactScalar {
        &self - &rhs
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        if rhs.is_zero() {
            return self.clone();
        }
        let num = self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        ExactScalar::new(num, den)
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: ExactScalar) -> ExactScalar {
        &self * &rhs
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        if self.is_zero() || rhs.is_zero() {
            return ExactScalar::zero();
        }
        // cross-reduce before multiplying to keep intermediates small
        let g1 = poly_gcd(&self.num, &rhs.den);
        let g2 = poly_gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        ExactScalar::new(n1.mul(&n2), d1.mul(&d2))
    }
}

impl Div for ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: ExactScalar) -> ExactScalar {
        &self / &rhs
    }
}

impl Div for &ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        assert!(!rhs.is_zero(), "division by zero scalar");
        self * &rhs.inv()
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Zero for ExactScalar {
    fn zero() -> Self {
        ExactScalar {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        ExactScalar {
            num: MPoly::one(),
            den: MPoly::one(),
        }
    }
    fn is_one(&self) -> bool {
        ExactScalar::is_one(self)
    }
}

/// Convenience: `q^a * (coefficient)` products show up everywhere in rule
/// tables, so give them a compact constructor.
pub fn q_times(k: i64, c: i64) -> ExactScalar {
    ExactScalar::q_pow(k) * ExactScalar::from_int(c)
}

/// `q^k` minus `q^l`, another very common shape.
pub fn q_diff(k: i64, l: i64) -> ExactScalar {
    ExactScalar::q_pow(k) - ExactScalar::q_pow(l)
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_int(n)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(r: BigRational) -> Self {
        ExactScalar::from_qrat(r)
    }
}

#[allow(unused)]
fn _assert_send_sync() {
    fn check<T: Send + Sync>() {}
    check::<ExactScalar>();
    check::<MPoly>();
    check::<Mono>();
    let _ = qr(0);
}
