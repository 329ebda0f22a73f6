//! Multivariate polynomials over the rationals, in a fixed set of named
//! indeterminates. This is the substrate for the exact coefficient field:
//! everything downstream (rewrite coefficients, R-matrix entries, Gram
//! determinants) is a ratio of these.
//!
//! Variable order matters for canonical forms. We use graded lexicographic
//! order where ties in total degree are broken by the *later* variable, so
//! `s` is the smallest variable and `u` the largest.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Number of base indeterminates.
pub const NVARS: usize = 6;

/// Names, in variable-index order. `s` is a square root of the deformation
/// parameter (printed as `q = s^2` when only even powers occur), `kappa` and
/// `eta` are the two level-like parameters of the free-field side, `p` is a
/// formal phase, and `t`, `u` are spare generic parameters used for symbolic
/// weights.
pub const VAR_NAMES: [&str; NVARS] = ["s", "kappa", "eta", "p", "t", "u"];

pub const VS: usize = 0;
pub const VKAPPA: usize = 1;
pub const VETA: usize = 2;
pub const VP: usize = 3;
pub const VT: usize = 4;
pub const VU: usize = 5;

/// Shorthand rational constructor.
pub fn qr(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand rational fraction constructor (`qr2(a, b) = a/b`).
pub fn qr2(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exponent vector of a single monomial.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub [u16; NVARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; NVARS]);

    pub fn var(v: usize, e: u16) -> Mono {
        let mut m = [0; NVARS];
        m[v] = e;
        Mono(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut m = [0; NVARS];
        for i in 0..NVARS {
            m[i] = self.0[i]
                .checked_add(other.0[i])
                .expect("monomial exponent overflow");
        }
        Mono(m)
    }

    /// Componentwise quotient, if `other` divides `self`.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut m = [0; NVARS];
        for i in 0..NVARS {
            m[i] = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Mono(m))
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Mono) -> Mono {
        let mut m = [0; NVARS];
        for i in 0..NVARS {
            m[i] = self.0[i].min(other.0[i]);
        }
        Mono(m)
    }

    pub fn pow(&self, k: u16) -> Mono {
        let mut m = [0; NVARS];
        for i in 0..NVARS {
            m[i] = self.0[i]
                .checked_mul(k)
                .expect("monomial exponent overflow");
        }
        Mono(m)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        let (da, db) = (self.total_degree(), other.total_degree());
        if da != db {
            return da.cmp(&db);
        }
        for i in (0..NVARS).rev() {
            if self.0[i] != other.0[i] {
                return self.0[i].cmp(&other.0[i]);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with rational coefficients. Invariant: no stored coefficient is
/// zero, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MPoly {
    terms: BTreeMap<Mono, BigRational>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> MPoly {
        MPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::ONE, c);
        }
        MPoly { terms }
    }

    pub fn from_i64(n: i64) -> MPoly {
        MPoly::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn var(v: usize) -> MPoly {
        MPoly::monomial(Mono::var(v, 1), BigRational::one())
    }

    pub fn var_pow(v: usize, e: u16) -> MPoly {
        MPoly::monomial(Mono::var(v, e), BigRational::one())
    }

    pub fn monomial(m: Mono, c: BigRational) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn from_terms(list: impl IntoIterator<Item = (Mono, BigRational)>) -> MPoly {
        let mut p = MPoly::zero();
        for (m, c) in list {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Mono::ONE)
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(Mono::is_one)
    }

    /// The constant value, if this polynomial is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            Some(BigRational::zero())
        } else if self.is_constant() {
            self.terms.get(&Mono::ONE).cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::total_degree).max()
    }

    /// Highest exponent of variable `v` appearing anywhere.
    pub fn deg_in(&self, v: usize) -> u16 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.0[v] > 0)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.leading().map(|(_, c)| c)
    }

    fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_qrat(&self, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (*m, k * c))
                .collect(),
        }
    }

    pub fn div_qrat(&self, c: &BigRational) -> MPoly {
        assert!(!c.is_zero(), "division of polynomial by zero rational");
        self.mul_qrat(&c.recip())
    }

    pub fn mul_mono(&self, m: &Mono) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact polynomial division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "exact division by zero polynomial");
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.div_qrat(&c));
        }
        let (dm, dc) = d.leading().unwrap();
        let (dm, dc) = (*dm, dc.clone());
        let mut rem = self.clone();
        let mut quo = MPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(&dm)?;
            let qc = rc / &dc;
            quo.add_term(qm, qc.clone());
            let piece = d.mul(&MPoly::monomial(qm, qc));
            rem = rem.sub(&piece);
        }
        Some(quo)
    }

    /// Greatest monomial dividing every term (zero polynomial gives 1).
    pub fn monomial_content(&self) -> Mono {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => *m,
            None => return Mono::ONE,
        };
        it.fold(first, |acc, m| acc.gcd(m))
    }

    /// Positive rational `c` (carrying the sign of the leading coefficient)
    /// such that `self / c` has coprime integer coefficients with positive
    /// leading coefficient. Zero polynomial gives 1.
    pub fn rational_content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::one();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        if self.leading_coeff().unwrap().is_negative() {
            content = -content;
        }
        content
    }

    /// Divide out the rational content (integer coprime coefficients,
    /// positive leading coefficient).
    pub fn integer_primitive(&self) -> MPoly {
        if self.is_zero() {
            return MPoly::zero();
        }
        self.div_qrat(&self.rational_content())
    }

    /// Scale so the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> MPoly {
        match self.leading_coeff() {
            None => MPoly::zero(),
            Some(c) => self.div_qrat(&c.clone()),
        }
    }

    /// Coefficients with respect to variable `v`, densely indexed by the
    /// exponent of `v`. Each coefficient has the `v`-exponent stripped.
    pub fn coeffs_in_var(&self, v: usize) -> Vec<MPoly> {
        let d = self.deg_in(v) as usize;
        let mut out = vec![MPoly::zero(); d + 1];
        for (m, c) in &self.terms {
            let e = m.0[v] as usize;
            let mut stripped = *m;
            stripped.0[v] = 0;
            out[e].add_term(stripped, c.clone());
        }
        out
    }

    pub fn from_coeffs_in_var(v: usize, coeffs: &[MPoly]) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            let shifted = c.mul_mono(&Mono::var(v, e as u16));
            out = out.add(&shifted);
        }
        out
    }

    /// Substitute a polynomial for variable `v` (Horner evaluation).
    pub fn subst(&self, v: usize, val: &MPoly) -> MPoly {
        if !self.uses_var(v) {
            return self.clone();
        }
        let coeffs = self.coeffs_in_var(v);
        let mut acc = MPoly::zero();
        for c in coeffs.iter().rev() {
            acc = acc.mul(val).add(c);
        }
        acc
    }

    /// Full evaluation at a rational point.
    pub fn eval_all(&self, vals: &[BigRational; NVARS]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term *= &vals[v];
                }
            }
            acc += term;
        }
        acc
    }

    /// Render one monomial-with-coefficient, optionally folding even powers
    /// of `s` into powers of `q`.
    fn fmt_term(m: &Mono, c: &BigRational, use_q: bool, out: &mut String) {
        let mut factors: Vec<String> = Vec::new();
        for (v, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if v == VS && use_q {
                debug_assert!(e % 2 == 0);
                let k = e / 2;
                if k == 1 {
                    factors.push("q".to_string());
                } else {
                    factors.push(format!("q^{}", k));
                }
            } else if e == 1 {
                factors.push(VAR_NAMES[v].to_string());
            } else {
                factors.push(format!("{}^{}", VAR_NAMES[v], e));
            }
        }
        let abs = c.abs();
        if factors.is_empty() {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }

    /// Whether every occurrence of `s` has even exponent (so the polynomial
    /// is honestly a polynomial in `q`).
    pub fn s_exponents_even(&self) -> bool {
        self.terms.keys().all(|m| m.0[VS] % 2 == 0)
    }

    /// Canonical string; terms from leading to trailing.
    pub fn render(&self, use_q: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push('-');
            } else {
                out.push('+');
            }
            MPoly::fmt_term(m, c, use_q, &mut out);
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(self.s_exponents_even()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> MPoly {
        MPoly::var_pow(VS, 2)
    }

    #[test]
    fn mono_order_grades_first_then_later_vars_dominate() {
        let s = Mono::var(VS, 1);
        let k = Mono::var(VKAPPA, 1);
        let s2 = Mono::var(VS, 2);
        assert!(s < k, "same degree: kappa beats s");
        assert!(k < s2, "degree dominates lex tie break");
        assert!(Mono::ONE < s);
    }

    #[test]
    fn arithmetic_basics() {
        let a = MPoly::var(VS).add(&MPoly::one());
        let b = MPoly::var(VS).sub(&MPoly::one());
        let prod = a.mul(&b);
        let direct = MPoly::var_pow(VS, 2).sub(&MPoly::one());
        assert_eq!(prod, direct);
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.pow(2), a.mul(&a));
        assert_eq!(MPoly::from_i64(0), MPoly::zero());
    }

    #[test]
    fn exact_division_round_trip() {
        let a = MPoly::var(VS).add(&MPoly::var(VKAPPA));
        let b = q().add(&MPoly::var(VETA)).add(&MPoly::from_i64(3));
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&b), Some(a.clone()));
        let off = p.add(&MPoly::one());
        assert_eq!(off.div_exact(&a), None);
    }

    #[test]
    fn contents_and_primitive_parts() {
        // 4/3 s^2 - 2/3 s: rational content 2/3, monomial content s
        let p = MPoly::var_pow(VS, 2)
            .mul_qrat(&BigRational::new(4.into(), 3.into()))
            .sub(&MPoly::var(VS).mul_qrat(&BigRational::new(2.into(), 3.into())));
        assert_eq!(p.rational_content(), BigRational::new(2.into(), 3.into()));
        let prim = p.integer_primitive();
        let expect = MPoly::var_pow(VS, 2)
            .mul_qrat(&BigRational::from_integer(2.into()))
            .sub(&MPoly::var(VS));
        assert_eq!(prim, expect);
        assert_eq!(p.monomial_content(), Mono::var(VS, 1));
        // content carries the leading sign
        assert!(p.neg().rational_content().is_negative());
        assert_eq!(p.neg().integer_primitive(), expect);
    }

    #[test]
    fn coeff_extraction_and_rebuild() {
        let p = q()
            .mul(&MPoly::var(VT))
            .add(&MPoly::var(VT).mul_qrat(&BigRational::from_integer(5.into())))
            .add(&MPoly::var(VS));
        let cs = p.coeffs_in_var(VT);
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0], MPoly::var(VS));
        assert_eq!(MPoly::from_coeffs_in_var(VT, &cs), p);
    }

    #[test]
    fn substitution_is_composition() {
        // p(t) = t^2 + 1, substitute t -> s + 1
        let p = MPoly::var_pow(VT, 2).add(&MPoly::one());
        let val = MPoly::var(VS).add(&MPoly::one());
        let got = p.subst(VT, &val);
        let expect = MPoly::var_pow(VS, 2)
            .add(&MPoly::var(VS).mul_qrat(&BigRational::from_integer(2.into())))
            .add(&MPoly::from_i64(2));
        assert_eq!(got, expect);
    }

    #[test]
    fn evaluation() {
        let p = q().add(&MPoly::var(VKAPPA));
        let mut vals: [BigRational; NVARS] = std::array::from_fn(|_| BigRational::zero());
        vals[VS] = BigRational::from_integer(3.into());
        vals[VKAPPA] = BigRational::from_integer(4.into());
        assert_eq!(p.eval_all(&vals), BigRational::from_integer(13.into()));
    }

    #[test]
    fn rendering_uses_q_for_even_s_powers() {
        let p = q().mul(&q()).add(&q()).add(&MPoly::one());
        assert_eq!(p.to_string(), "q^2+q+1");
        let odd = MPoly::var_pow(VS, 3).sub(&MPoly::one());
        assert_eq!(odd.to_string(), "s^3-1");
        let mixed = q().mul(&MPoly::var(VKAPPA)).sub(&MPoly::var(VETA));
        assert_eq!(mixed.to_string(), "q*kappa-eta");
        assert_eq!(MPoly::zero().to_string(), "0");
        let c = MPoly::constant(BigRational::new((-3).into(), 2.into()));
        assert_eq!(c.to_string(), "-3/2");
    }
}
