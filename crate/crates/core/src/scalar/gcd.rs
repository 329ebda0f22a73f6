//! Multivariate polynomial gcd via a primitive pseudo-remainder sequence.
//!
//! The returned gcd is normalized to have graded-lex leading coefficient 1,
//! so `poly_gcd(a, b)` is a canonical representative and fraction reduction
//! produces canonical results. Speed is adequate at our sizes because the
//! remainder is made primitive (both over the integers and over the lower
//! variables) after every pseudo-division step.

use super::poly::MPoly;

/// Canonical (monic) gcd. `poly_gcd(0, 0) = 0`.
pub fn poly_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    // Common monomial factor comes out first; it also covers the frequent
    // monomial/monomial case exactly.
    let one = num_rational::BigRational::from_integer(1.into());
    let mono = a.monomial_content().gcd(&b.monomial_content());
    let a0 = a
        .div_exact(&MPoly::monomial(a.monomial_content(), one.clone()))
        .unwrap();
    let b0 = b
        .div_exact(&MPoly::monomial(b.monomial_content(), one.clone()))
        .unwrap();
    let core = gcd_content_free(&a0.integer_primitive(), &b0.integer_primitive());
    core.mul(&MPoly::monomial(mono, one)).monic()
}

/// gcd of nonzero integer-primitive inputs with trivial monomial content.
fn gcd_content_free(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    // main variable: highest index present in either operand
    let v = (0..super::poly::NVARS)
        .rev()
        .find(|&v| a.uses_var(v) || b.uses_var(v))
        .expect("nonconstant polynomial uses some variable");

    if !a.uses_var(v) {
        return gcd_with_coeffs(a, b, v);
    }
    if !b.uses_var(v) {
        return gcd_with_coeffs(b, a, v);
    }

    let (cont_a, pp_a) = split_content(a, v);
    let (cont_b, pp_b) = split_content(b, v);
    let cont_gcd = poly_gcd(&cont_a, &cont_b);

    let mut f = pp_a;
    let mut g = pp_b;
    if f.deg_in(v) < g.deg_in(v) {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = pseudo_rem(&f, &g, v);
        if r.is_zero() {
            break;
        }
        if r.deg_in(v) == 0 {
            // coprime in the main variable
            return cont_gcd;
        }
        f = g;
        g = make_primitive(&r, v);
    }
    cont_gcd.mul(&g)
}

/// gcd(a, b) where `a` does not involve the main variable `v`: reduce to the
/// content of `b` with respect to `v`.
fn gcd_with_coeffs(a: &MPoly, b: &MPoly, v: usize) -> MPoly {
    let mut acc = a.clone();
    for c in b.coeffs_in_var(v) {
        if c.is_zero() {
            continue;
        }
        acc = poly_gcd(&acc, &c);
        if acc.is_one() {
            return acc;
        }
    }
    acc
}

/// Content (gcd of coefficients) and primitive part with respect to `v`.
fn split_content(p: &MPoly, v: usize) -> (MPoly, MPoly) {
    let coeffs = p.coeffs_in_var(v);
    let mut content = MPoly::zero();
    for c in &coeffs {
        if c.is_zero() {
            continue;
        }
        content = poly_gcd(&content, c);
        if content.is_one() {
            break;
        }
    }
    let pp = p.div_exact(&content).expect("content divides");
    (content, pp)
}

fn make_primitive(p: &MPoly, v: usize) -> MPoly {
    let (_, pp) = split_content(&p.integer_primitive(), v);
    pp.integer_primitive()
}

/// Pseudo-remainder of `f` by `g` in variable `v` (leading coefficient of `g`
/// is multiplied in as needed rather than the full deficiency power; callers
/// re-primitivize anyway).
fn pseudo_rem(f: &MPoly, g: &MPoly, v: usize) -> MPoly {
    let dg = g.deg_in(v);
    let g_coeffs = g.coeffs_in_var(v);
    let lc_g = g_coeffs[dg as usize].clone();
    let mut r = f.clone();
    while !r.is_zero() {
        let dr = r.deg_in(v);
        if dr < dg {
            break;
        }
        let r_coeffs = r.coeffs_in_var(v);
        let lc_r = r_coeffs[dr as usize].clone();
        let shift = MPoly::var_pow(v, dr - dg);
        r = r.mul(&lc_g).sub(&g.mul(&lc_r).mul(&shift));
    }
    r
}

pub fn poly_lcm(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() || b.is_zero() {
        return MPoly::zero();
    }
    let g = poly_gcd(a, b);
    a.mul(b).div_exact(&g).expect("gcd divides product").monic()
}
