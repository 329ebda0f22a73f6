//! First-order differential calculus on the quantum coordinate algebra.
//!
//! The mixed algebra joins the four coordinates with the four partial
//! derivatives. Coordinate-coordinate and derivative-derivative relations
//! are the shipped presentations; the cross relations
//!
//!   d_a x_b  =  delta_{ab} + sum c^{ab}_{b'a'} x_{b'} d_{a'}
//!
//! are not written down by hand. `derive_calculus` treats the 256 cross
//! coefficients as unknowns and imposes every consistency condition that
//! is linear in them: each derivative must act the same way on both sides
//! of each coordinate relation, each derivative relation must act
//! consistently on each coordinate, both weight gradings must be
//! preserved, and degree-two harmonics must be annihilated. The affine
//! family that survives is cut down by the quadratic confluence
//! conditions in relinearized form, and the resulting point is certified
//! genuinely (confluence of the 28-rule system, cubic harmonics,
//! eigenvalues on interval powers). The result is frozen in
//! `data/calculus.json` and the derivation is re-run against it by a
//! test. Of the two weight-compatible pairings only the transposed one
//! survives the harmonicity rows; the diagonal one dies at the quadratic
//! cut.

use super::harmonic::{harmonic_polynomial, weight_labels};
use super::{interval, x_algebra};
use crate::linalg::Matrix;
use crate::rewrite::json::{algebra_from_json, minkowski_dx_algebra};
use crate::rewrite::{Algebra, Generator, NcPoly, Rule, RewriteSystem, Word};
use crate::scalar::{round_bracket, ExactScalar};
use num_traits::{One, Zero};
use std::sync::OnceLock;

/// The frozen mixed presentation: x11..x22 then d11..d22.
pub fn mixed_algebra() -> Algebra {
    static CACHE: OnceLock<Algebra> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            algebra_from_json(include_str!("../../data/calculus.json"))
                .expect("frozen calculus presentation loads")
        })
        .clone()
}

/// Rebuild a coordinate polynomial inside an algebra that shares the first
/// four letters (and their relations) with the coordinate algebra.
pub fn transplant_x(p: &NcPoly, target: &Algebra) -> NcPoly {
    target.poly_from_terms(p.terms().map(|(w, c)| (c.clone(), w.clone())))
}

/// Keep the derivative-free part and read it back in the coordinate
/// algebra. For a normalized product (operator) * (function) this is the
/// value of the operator on the function.
pub fn project_x(p: &NcPoly) -> NcPoly {
    let xs = x_algebra();
    xs.poly_from_terms(
        p.terms()
            .filter(|(w, _)| w.0.iter().all(|&l| l < 4))
            .map(|(w, c)| (c.clone(), w.clone())),
    )
}

/// The quadratic invariant operator in a mixed algebra. The bare word
/// determinant d11 d22 - d12 d21 pairs with the interval at 1; the bracket
/// normalization rescales it so the interval maps to (1)(2).
pub fn laplacian(alg: &Algebra) -> NcPoly {
    (&alg.word(&["d11", "d22"]) - &alg.word(&["d12", "d21"])).scale(&round_bracket(2))
}

/// Value of the invariant operator on a coordinate polynomial.
pub fn laplacian_apply_in(alg: &Algebra, f: &NcPoly) -> NcPoly {
    project_x(&(&laplacian(alg) * &transplant_x(f, alg)))
}

/// Same, against the frozen presentation.
pub fn laplacian_apply(f: &NcPoly) -> NcPoly {
    laplacian_apply_in(&mixed_algebra(), f)
}

/// Expected eigenvalue on (interval)^j X^lambda: (j)(j+lambda+1) in round
/// brackets, (n) = (q^2n - 1)/(q^2 - 1).
pub fn laplacian_eigenvalue(j: u32, lambda: u32) -> ExactScalar {
    round_bracket(j as i64) * round_bracket(j as i64 + lambda as i64 + 1)
}

/// Check the eigen relation on (interval)^j X^lambda_{r,k}; the operator
/// strips one power of the interval. Returns the eigenvalue on success.
pub fn laplacian_eigencheck(j: u32, lambda: u32, r: i64, k: i64) -> Result<ExactScalar, String> {
    laplacian_eigencheck_in(&mixed_algebra(), j, lambda, r, k)
}

fn laplacian_eigencheck_in(
    alg: &Algebra,
    j: u32,
    lambda: u32,
    r: i64,
    k: i64,
) -> Result<ExactScalar, String> {
    assert!(j >= 1, "needs at least one interval factor");
    let xs = x_algebra();
    let det = interval(&xs);
    let x = harmonic_polynomial(lambda, r, k);
    let f = &det.pow(j) * &x;
    let got = laplacian_apply_in(alg, &f);
    let want = (&det.pow(j - 1) * &x).scale(&laplacian_eigenvalue(j, lambda));
    if got == want {
        Ok(laplacian_eigenvalue(j, lambda))
    } else {
        Err(format!(
            "eigencheck failed at j={} lambda={} r={} k={}",
            j, lambda, r, k
        ))
    }
}

/// Which coordinate each derivative pairs with in the constant term of the
/// cross relation d_a x_b = delta_{mate(a), b} + (exchange terms). The two
/// weight-compatible involutions: d_ij against x_ij, or d_ij against x_ji.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Pairing {
    Diagonal,
    Transposed,
}

impl Pairing {
    fn mate(self, a: usize) -> usize {
        match self {
            Pairing::Diagonal => a,
            Pairing::Transposed => match a {
                1 => 2,
                2 => 1,
                other => other,
            },
        }
    }
}

/// Position of the unknown coefficient of x_bp d_ap in the rule for d_a x_b.
fn cidx(a: usize, b: usize, bp: usize, ap: usize) -> usize {
    ((a * 4 + b) * 4 + bp) * 4 + ap
}

/// Affine-linear equations over the 256 cross coefficients.
struct EquationSet {
    rows: Vec<Vec<ExactScalar>>,
    rhs: Vec<ExactScalar>,
}

impl EquationSet {
    fn new() -> EquationSet {
        EquationSet {
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    /// Add the equation sum(coeff * c_idx) + constant = 0, skipping it when
    /// everything vanishes.
    fn push(&mut self, terms: Vec<(usize, ExactScalar)>, constant: ExactScalar) {
        if terms.iter().all(|(_, v)| v.is_zero()) && constant.is_zero() {
            return;
        }
        let mut row = vec![ExactScalar::zero(); 256];
        for (i, v) in terms {
            row[i] = row[i].clone() + v;
        }
        self.rows.push(row);
        self.rhs.push(-constant);
    }
}

const ROW_OF: [i64; 4] = [-1, -1, 1, 1];
const COL_OF: [i64; 4] = [-1, 1, -1, 1];

/// The two words of the invariant operator with their signs: d11 d22 minus
/// d12 d21, as derivative letter pairs.
const LAPLACIAN_PAIRS: [(usize, usize, i64); 2] = [(0, 3, 1), (1, 2, -1)];

fn assemble_equations(pairing: Pairing, harmonic_rows: bool) -> EquationSet {
    let xs = x_algebra();
    let ds = minkowski_dx_algebra();
    let mate = |a: usize| pairing.mate(a);
    let mut eqs = EquationSet::new();

    // both weight gradings survive the exchange; d_a carries the weight
    // opposite to its mate
    for a in 0..4 {
        for b in 0..4 {
            for bp in 0..4 {
                for ap in 0..4 {
                    let row_ok = ROW_OF[b] - ROW_OF[mate(a)] == ROW_OF[bp] - ROW_OF[mate(ap)];
                    let col_ok = COL_OF[b] - COL_OF[mate(a)] == COL_OF[bp] - COL_OF[mate(ap)];
                    if !(row_ok && col_ok) {
                        eqs.push(
                            vec![(cidx(a, b, bp, ap), ExactScalar::one())],
                            ExactScalar::zero(),
                        );
                    }
                }
            }
        }
    }

    // value of d_a on both sides of each coordinate relation: the constant
    // part of d_a x_u x_v is delta_{mate(a) u} x_v plus c^{au}_{m mate(v)} x_m
    for rule in &xs.system().rules {
        assert_eq!(rule.lhs.len(), 2);
        let (u, v) = (rule.lhs.0[0] as usize, rule.lhs.0[1] as usize);
        for a in 0..4 {
            for m in 0..4 {
                let mut terms = vec![(cidx(a, u, m, mate(v)), ExactScalar::one())];
                let mut constant = if mate(a) == u && m == v {
                    ExactScalar::one()
                } else {
                    ExactScalar::zero()
                };
                for (beta, w) in &rule.rhs {
                    assert_eq!(w.len(), 2);
                    let (u2, v2) = (w.0[0] as usize, w.0[1] as usize);
                    terms.push((cidx(a, u2, m, mate(v2)), -beta.clone()));
                    if mate(a) == u2 && m == v2 {
                        constant = constant - beta.clone();
                    }
                }
                eqs.push(terms, constant);
            }
        }
    }

    // first-order part of each derivative relation against one coordinate:
    // the d_n component of d_p d_q x_b is delta_{mate(q) b} delta_{np} plus
    // c^{qb}_{mate(p) n}
    for rule in &ds.system().rules {
        assert_eq!(rule.lhs.len(), 2);
        let (p, q) = (rule.lhs.0[0] as usize, rule.lhs.0[1] as usize);
        for b in 0..4 {
            for n in 0..4 {
                let mut terms = vec![(cidx(q, b, mate(p), n), ExactScalar::one())];
                let mut constant = if mate(q) == b && n == p {
                    ExactScalar::one()
                } else {
                    ExactScalar::zero()
                };
                for (gamma, w) in &rule.rhs {
                    assert_eq!(w.len(), 2);
                    let (p2, q2) = (w.0[0] as usize, w.0[1] as usize);
                    terms.push((cidx(q2, b, mate(p2), n), -gamma.clone()));
                    if mate(q2) == b && n == p2 {
                        constant = constant - gamma.clone();
                    }
                }
                eqs.push(terms, constant);
            }
        }
    }

    if harmonic_rows {
        for &r in &weight_labels(2) {
            for &k in &weight_labels(2) {
                let (w, k0) =
                    quadratic_value_functional(pairing, &harmonic_polynomial(2, r, k));
                let terms = w.into_iter().enumerate().collect();
                eqs.push(terms, k0);
            }
        }
    }
    eqs
}

/// Affine functional on coefficient space reading off the scalar value of
/// the invariant operator on a quadratic F_{uv} x_u x_v: each signed word
/// d_p d_q contributes sign (delta_{mate(q) u} delta_{mate(p) v} +
/// c^{qu}_{mate(p) mate(v)}). Returns (weights, constant) with
/// value = weights . c + constant.
fn quadratic_value_functional(pairing: Pairing, f: &NcPoly) -> (Vec<ExactScalar>, ExactScalar) {
    let mate = |a: usize| pairing.mate(a);
    let mut weights = vec![ExactScalar::zero(); 256];
    let mut constant = ExactScalar::zero();
    for (w, coeff) in f.terms() {
        assert_eq!(w.len(), 2);
        let (u, v) = (w.0[0] as usize, w.0[1] as usize);
        for &(p, q, sign) in &LAPLACIAN_PAIRS {
            let signed = if sign > 0 {
                coeff.clone()
            } else {
                -coeff.clone()
            };
            let i = cidx(q, u, mate(p), mate(v));
            weights[i] = weights[i].clone() + signed.clone();
            if mate(q) == u && mate(p) == v {
                constant = constant + signed;
            }
        }
    }
    (weights, constant)
}

/// Build the 16 cross rules from a solved coefficient vector.
fn cross_rules(pairing: Pairing, c: &[ExactScalar]) -> Vec<Rule> {
    let mut rules = Vec::with_capacity(16);
    for a in 0..4usize {
        for b in 0..4usize {
            let mut rhs: Vec<(ExactScalar, Word)> = Vec::new();
            if pairing.mate(a) == b {
                rhs.push((ExactScalar::one(), Word::empty()));
            }
            for bp in 0..4usize {
                for ap in 0..4usize {
                    let coeff = c[cidx(a, b, bp, ap)].clone();
                    if !coeff.is_zero() {
                        rhs.push((coeff, Word::from_letters(&[bp as u8, (ap + 4) as u8])));
                    }
                }
            }
            rules.push(Rule {
                lhs: Word::from_letters(&[(a + 4) as u8, b as u8]),
                rhs,
            });
        }
    }
    rules
}

/// Assemble coordinates, derivatives and a cross block into one system.
fn mixed_system(cross: Vec<Rule>) -> Algebra {
    let xs = x_algebra();
    let ds = minkowski_dx_algebra();
    let mut gens: Vec<Generator> = xs
        .system()
        .gens
        .iter()
        .map(|g| Generator {
            name: g.name.clone(),
            grading: vec![1, 0],
        })
        .collect();
    gens.extend(ds.system().gens.iter().map(|g| Generator {
        name: g.name.clone(),
        grading: vec![0, 1],
    }));
    let mut rules: Vec<Rule> = xs.system().rules.clone();
    let shift = |w: &Word| Word::from_letters(&w.0.iter().map(|l| l + 4).collect::<Vec<_>>());
    rules.extend(ds.system().rules.iter().map(|r| Rule {
        lhs: shift(&r.lhs),
        rhs: r.rhs.iter().map(|(c, w)| (c.clone(), shift(w))).collect(),
    }));
    rules.extend(cross);
    Algebra::new(RewriteSystem::new("minkowski_calculus", gens, rules).expect("valid system"))
}

#[cfg(test)]
fn same_presentation(a: &Algebra, b: &Algebra) -> bool {
    let (sa, sb) = (a.system(), b.system());
    if sa.gens.len() != sb.gens.len()
        || sa.gens.iter().zip(&sb.gens).any(|(x, y)| x.name != y.name)
        || sa.rules.len() != sb.rules.len()
    {
        return false;
    }
    let key = |r: &Rule| {
        let mut rhs = r.rhs.clone();
        rhs.sort_by(|x, y| x.1.cmp(&y.1));
        (r.lhs.clone(), rhs)
    };
    let mut ka: Vec<_> = sa.rules.iter().map(key).collect();
    let mut kb: Vec<_> = sb.rules.iter().map(key).collect();
    ka.sort_by(|x, y| x.0.cmp(&y.0));
    kb.sort_by(|x, y| x.0.cmp(&y.0));
    ka == kb
}

/// Confluence residuals of a candidate system, keyed by the overlap that
/// produced them and the word carrying the discrepancy. Missing keys are
/// zero, so these maps add and scale like sparse vectors.
type ResidualKey = (usize, usize, Word, Word);
type Residuals = std::collections::BTreeMap<ResidualKey, ExactScalar>;

fn residuals_of(pairing: Pairing, c: &[ExactScalar]) -> Residuals {
    let alg = mixed_system(cross_rules(pairing, c));
    let mut out = Residuals::new();
    for amb in alg.system().confluence_failures() {
        for (w, v) in amb.difference {
            out.insert((amb.rule_a, amb.rule_b, amb.word.clone(), w), v);
        }
    }
    out
}

fn add_scaled(acc: &mut Residuals, other: &Residuals, factor: &ExactScalar) {
    for (k, v) in other {
        let entry = acc.entry(k.clone()).or_insert_with(ExactScalar::zero);
        *entry = entry.clone() + v.clone() * factor.clone();
    }
    acc.retain(|_, v| !v.is_zero());
}

fn vec_add(a: &[ExactScalar], b: &[ExactScalar], scale: i64) -> Vec<ExactScalar> {
    let s = ExactScalar::from_int(scale);
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() + y.clone() * s.clone())
        .collect()
}

#[derive(Debug)]
pub struct CalculusDerivation {
    pub algebra: Algebra,
    pub pairing: Pairing,
    pub equations: usize,
    pub unknowns: usize,
    pub free_directions: usize,
}

/// Quadratic leftovers of consistency, checked on the solved system:
/// confluence of all 28 rules, cubic harmonics in the kernel, and the
/// eigen relation on small interval powers.
fn passes_full_certificate(alg: &Algebra) -> Result<(), String> {
    if !alg.system().is_confluent() {
        return Err("mixed system is not confluent".into());
    }
    for lambda in [2u32, 3] {
        for &r in &weight_labels(lambda) {
            for &k in &weight_labels(lambda) {
                if !laplacian_apply_in(alg, &harmonic_polynomial(lambda, r, k)).is_zero() {
                    return Err(format!(
                        "degree-{} harmonic ({}, {}) not annihilated",
                        lambda, r, k
                    ));
                }
            }
        }
    }
    for (j, lambda) in [(1u32, 0u32), (1, 1), (1, 2), (2, 0)] {
        for &r in &weight_labels(lambda) {
            for &k in &weight_labels(lambda) {
                laplacian_eigencheck_in(alg, j, lambda, r, k)?;
            }
        }
    }
    Ok(())
}

/// Solve the linear consistency system; if solutions remain, cut the
/// affine family down with the quadratic confluence conditions. The
/// residual of every critical pair is exactly quadratic in the cross
/// coefficients, so sampling it at center, single, doubled and paired
/// offsets along the free directions reconstructs its expansion
///
///   F(t) = K + sum B_i t_i + sum D_ij t_i t_j
///
/// and F(t) = 0 becomes a linear system in the monomials (t_i, t_i t_j).
/// A unique monomial solution that is consistent (the pair values equal
/// the products of the singles) pins the calculus exactly.
pub fn derive_calculus() -> Result<CalculusDerivation, String> {
    let mut notes = Vec::new();
    for pairing in [Pairing::Diagonal, Pairing::Transposed] {
        match derive_with(pairing) {
            Ok(d) => return Ok(d),
            Err(e) => notes.push(format!("{:?} pairing: {}", pairing, e)),
        }
    }
    Err(notes.join("; "))
}

fn derive_with(pairing: Pairing) -> Result<CalculusDerivation, String> {
    let eqs = assemble_equations(pairing, true);
    let n_eqs = eqs.rows.len();
    let mat = Matrix::from_fn(n_eqs, 256, |i, j| eqs.rows[i][j].clone());
    let c0 = mat
        .solve(&eqs.rhs)
        .ok_or("linear consistency system is inconsistent")?;
    let null = mat.nullspace();
    let solution = if null.is_empty() {
        c0
    } else {
        pin_with_quadratic_residuals(pairing, &c0, &null)?
    };
    let alg = mixed_system(cross_rules(pairing, &solution));
    passes_full_certificate(&alg)?;
    Ok(CalculusDerivation {
        algebra: alg,
        pairing,
        equations: n_eqs,
        unknowns: 256,
        free_directions: null.len(),
    })
}

fn mono_index(n: usize, i: usize, j: usize) -> usize {
    // i <= j, position after the n linear slots
    n + (0..i).map(|a| n - a).sum::<usize>() + (j - i)
}

/// Residual conditions along the affine family c0 + t . null, written as a
/// linear system over the monomial unknowns (t_1 .. t_n, t_i t_j for i <= j).
fn relinearized_residual_system(
    pairing: Pairing,
    c0: &[ExactScalar],
    null: &[Vec<ExactScalar>],
) -> (Matrix<ExactScalar>, Vec<ExactScalar>) {
    let n = null.len();
    let f0 = residuals_of(pairing, c0);
    let single: Vec<Residuals> = null
        .iter()
        .map(|d| residuals_of(pairing, &vec_add(c0, d, 1)))
        .collect();
    let doubled: Vec<Residuals> = null
        .iter()
        .map(|d| residuals_of(pairing, &vec_add(c0, d, 2)))
        .collect();

    let one = ExactScalar::one();
    let minus = -ExactScalar::one();
    let half = ExactScalar::from_int(2).inv();

    // D_ii = (F(c0 + 2n_i) - 2 F(c0 + n_i) + F(c0)) / 2
    // B_i  = F(c0 + n_i) - F(c0) - D_ii
    let mut d_diag: Vec<Residuals> = Vec::with_capacity(n);
    let mut b_lin: Vec<Residuals> = Vec::with_capacity(n);
    for i in 0..n {
        let mut dii = doubled[i].clone();
        add_scaled(&mut dii, &single[i], &ExactScalar::from_int(-2));
        add_scaled(&mut dii, &f0, &one);
        for v in dii.values_mut() {
            *v = v.clone() * half.clone();
        }
        let mut bi = single[i].clone();
        add_scaled(&mut bi, &f0, &minus);
        add_scaled(&mut bi, &dii, &minus);
        d_diag.push(dii);
        b_lin.push(bi);
    }
    // D_ij = F(c0 + n_i + n_j) - F(c0 + n_i) - F(c0 + n_j) + F(c0), i < j
    let mut d_pair: std::collections::BTreeMap<(usize, usize), Residuals> = Default::default();
    for i in 0..n {
        for j in i + 1..n {
            let mixed = residuals_of(pairing, &vec_add(&vec_add(c0, &null[i], 1), &null[j], 1));
            let mut dij = mixed;
            add_scaled(&mut dij, &single[i], &minus);
            add_scaled(&mut dij, &single[j], &minus);
            add_scaled(&mut dij, &f0, &one);
            d_pair.insert((i, j), dij);
        }
    }

    // assemble rows over the union of residual keys; unknowns are the n
    // parameters followed by the n(n+1)/2 pair monomials
    let mut keys: std::collections::BTreeSet<ResidualKey> = f0.keys().cloned().collect();
    for r in single.iter().chain(d_diag.iter()).chain(b_lin.iter()) {
        keys.extend(r.keys().cloned());
    }
    for r in d_pair.values() {
        keys.extend(r.keys().cloned());
    }
    let key_list: Vec<ResidualKey> = keys.into_iter().collect();
    let cols = n + n * (n + 1) / 2;
    let rows = key_list.len();
    let mut sys = Matrix::zeros(rows, cols);
    let mut rhs = vec![ExactScalar::zero(); rows];
    let get = |r: &Residuals, k: &ResidualKey| r.get(k).cloned().unwrap_or_else(ExactScalar::zero);
    for (row, key) in key_list.iter().enumerate() {
        rhs[row] = -get(&f0, key);
        for i in 0..n {
            sys[(row, i)] = get(&b_lin[i], key);
            sys[(row, mono_index(n, i, i))] = get(&d_diag[i], key);
        }
        for ((i, j), dij) in &d_pair {
            sys[(row, mono_index(n, *i, *j))] = get(dij, key);
        }
    }
    (sys, rhs)
}

fn pin_with_quadratic_residuals(
    pairing: Pairing,
    c0: &[ExactScalar],
    null: &[Vec<ExactScalar>],
) -> Result<Vec<ExactScalar>, String> {
    let n = null.len();
    let (sys, rhs) = relinearized_residual_system(pairing, c0, null);
    let m = sys
        .solve(&rhs)
        .ok_or("quadratic residual system is inconsistent")?;
    // leftover freedom may live in the redundant pair monomials, but a free
    // linear slot would leave the coefficients themselves undetermined
    for dir in sys.nullspace() {
        if dir[..n].iter().any(|v| !v.is_zero()) {
            return Err("quadratic cut leaves coefficient directions free".into());
        }
    }
    let mut c = c0.to_vec();
    for (i, d) in null.iter().enumerate() {
        for (slot, v) in c.iter_mut().zip(d) {
            *slot = slot.clone() + m[i].clone() * v.clone();
        }
    }
    // the relinearization forgot that pair monomials are products of the
    // singles, so certify the point against the genuine residuals
    if !residuals_of(pairing, &c).is_empty() {
        return Err("relinearized solution is not a confluence point".into());
    }
    Ok(c)
}

/// Value of an affine functional w . c + k0 on the solution set of the
/// relinearized system, when that set is nonempty and the functional is
/// constant on it. Returns None if the system is inconsistent or the
/// functional still varies.
#[cfg(test)]
fn pinned_functional_value(
    c0: &[ExactScalar],
    null: &[Vec<ExactScalar>],
    sys: &Matrix<ExactScalar>,
    rhs: &[ExactScalar],
    w: &[ExactScalar],
    k0: &ExactScalar,
) -> Option<ExactScalar> {
    let n = null.len();
    let dot = |a: &[ExactScalar], b: &[ExactScalar]| {
        a.iter()
            .zip(b)
            .fold(ExactScalar::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
    };
    let t_star = sys.solve(rhs)?;
    let base = dot(w, c0) + k0.clone();
    let coeffs: Vec<ExactScalar> = null.iter().map(|d| dot(w, d)).collect();
    for dir in sys.nullspace() {
        let drift = (0..n).fold(ExactScalar::zero(), |acc, i| {
            acc + coeffs[i].clone() * dir[i].clone()
        });
        if !drift.is_zero() {
            return None;
        }
    }
    let shift = (0..n).fold(ExactScalar::zero(), |acc, i| {
        acc + coeffs[i].clone() * t_star[i].clone()
    });
    Some(base + shift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::json::algebra_to_json;

    /// Full search over both pairings; takes tens of minutes, so it is run
    /// explicitly (--ignored) rather than on every pass.
    #[test]
    #[ignore]
    fn derivation_recovers_the_frozen_presentation() {
        let derived = derive_calculus().expect("unique calculus");
        assert!(same_presentation(&derived.algebra, &mixed_algebra()));
    }

    /// Cheap standing guard: the frozen cross coefficients solve the whole
    /// linear consistency system for the transposed pairing.
    #[test]
    fn frozen_point_solves_the_linear_consistency_system() {
        let c = frozen_coefficients();
        let eqs = assemble_equations(Pairing::Transposed, true);
        for (row, rhs) in eqs.rows.iter().zip(&eqs.rhs) {
            let lhs = row
                .iter()
                .zip(&c)
                .fold(ExactScalar::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
            assert_eq!(lhs, rhs.clone());
        }
    }

    #[test]
    fn frozen_calculus_passes_the_full_certificate() {
        passes_full_certificate(&mixed_algebra()).unwrap();
    }

    /// Read the cross coefficients back out of the frozen presentation.
    fn frozen_coefficients() -> Vec<ExactScalar> {
        let alg = mixed_algebra();
        let mut c = vec![ExactScalar::zero(); 256];
        for rule in &alg.system().rules {
            let l = &rule.lhs.0;
            if l.len() != 2 || l[0] < 4 || l[1] >= 4 {
                continue;
            }
            let (a, b) = ((l[0] - 4) as usize, l[1] as usize);
            for (coeff, w) in &rule.rhs {
                if w.len() != 2 {
                    continue;
                }
                let (bp, ap) = (w.0[0] as usize, (w.0[1] - 4) as usize);
                c[cidx(a, b, bp, ap)] = coeff.clone();
            }
        }
        c
    }

    /// Maintenance helper: regenerate data/calculus.json after a deliberate
    /// convention change. Run with --ignored --nocapture and commit the file.
    #[test]
    #[ignore]
    fn regenerate_frozen_calculus() {
        match derive_calculus() {
            Ok(d) => {
                eprintln!("derived from {} equations in {} unknowns", d.equations, d.unknowns);
                let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/calculus.json");
                std::fs::write(path, algebra_to_json(&d.algebra)).unwrap();
                eprintln!("wrote {}", path);
            }
            Err(e) => panic!("derivation failed: {}", e),
        }
    }

    /// Scratch probe: for each pairing and row set, how big is the affine
    /// family, does the quadratic confluence cut survive, and what scalar
    /// does the invariant operator take on the interval quadratic?
    #[test]
    #[ignore]
    fn probe_structural_family() {
        for pairing in [Pairing::Diagonal, Pairing::Transposed] {
            for harm in [false, true] {
                eprintln!("--- pairing {:?}, harmonic rows {} ---", pairing, harm);
                let eqs = assemble_equations(pairing, harm);
                let n_eqs = eqs.rows.len();
                let mat = Matrix::from_fn(n_eqs, 256, |i, j| eqs.rows[i][j].clone());
                let Some(c0) = mat.solve(&eqs.rhs) else {
                    eprintln!("linear stage inconsistent");
                    continue;
                };
                let null = mat.nullspace();
                eprintln!(
                    "linear stage: {} equations, {} free directions",
                    n_eqs,
                    null.len()
                );
                let (sys, rhs) = relinearized_residual_system(pairing, &c0, &null);
                if sys.solve(&rhs).is_none() {
                    eprintln!("quadratic cut inconsistent");
                    continue;
                }
                eprintln!(
                    "quadratic cut consistent, {} monomial directions free",
                    sys.nullspace().len()
                );
                let (w, k0) = quadratic_value_functional(pairing, &interval(&x_algebra()));
                match pinned_functional_value(&c0, &null, &sys, &rhs, &w, &k0) {
                    Some(v) => eprintln!("box(det) pinned to: {}", v),
                    None => eprintln!("box(det) not pinned by the relinearized cut"),
                }
                for &r in &weight_labels(2) {
                    for &k in &weight_labels(2) {
                        let (w, k0) =
                            quadratic_value_functional(pairing, &harmonic_polynomial(2, r, k));
                        match pinned_functional_value(&c0, &null, &sys, &rhs, &w, &k0) {
                            Some(v) if v.is_zero() => {}
                            Some(v) => {
                                eprintln!("box(X^2_({},{})) pinned to nonzero: {}", r, k, v)
                            }
                            None => eprintln!("box(X^2_({},{})) not pinned", r, k),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn frozen_mixed_system_is_confluent() {
        assert!(mixed_algebra().system().is_confluent());
    }

    #[test]
    fn frozen_system_restricts_to_the_shipped_presentations() {
        let mixed = mixed_algebra();
        let xs = x_algebra();
        let ds = minkowski_dx_algebra();
        let sys = mixed.system();
        for r in &xs.system().rules {
            let m = &sys.rules[sys.rules.iter().position(|mr| mr.lhs == r.lhs).unwrap()];
            assert_eq!(m.rhs, r.rhs);
        }
        let shift = |w: &Word| Word::from_letters(&w.0.iter().map(|l| l + 4).collect::<Vec<_>>());
        for r in &ds.system().rules {
            let lhs = shift(&r.lhs);
            let m = &sys.rules[sys.rules.iter().position(|mr| mr.lhs == lhs).unwrap()];
            let want: Vec<_> = r.rhs.iter().map(|(c, w)| (c.clone(), shift(w))).collect();
            assert_eq!(m.rhs, want);
        }
        assert_eq!(sys.rules.len(), 28);
    }

    #[test]
    fn harmonics_are_in_the_kernel() {
        for lambda in 0..=3u32 {
            for &r in &weight_labels(lambda) {
                for &k in &weight_labels(lambda) {
                    let x = harmonic_polynomial(lambda, r, k);
                    assert!(
                        laplacian_apply(&x).is_zero(),
                        "lambda={} r={} k={}",
                        lambda,
                        r,
                        k
                    );
                }
            }
        }
    }

    #[test]
    fn interval_powers_carry_bracket_eigenvalues() {
        for (j, lambda) in [(1u32, 0u32), (1, 1), (1, 2), (2, 0), (2, 1)] {
            for &r in &weight_labels(lambda) {
                for &k in &weight_labels(lambda) {
                    laplacian_eigencheck(j, lambda, r, k).unwrap();
                }
            }
        }
    }

    #[test]
    fn derivatives_pair_diagonally_with_coordinates() {
        // the constant term of d_a x_b is exactly delta_{ab}
        let mixed = mixed_algebra();
        let names = ["x11", "x12", "x21", "x22"];
        let dnames = ["d11", "d12", "d21", "d22"];
        for (i, d) in dnames.iter().enumerate() {
            for (j, x) in names.iter().enumerate() {
                let p = &mixed.gen(d) * &mixed.gen(x);
                let constant = project_x(&p);
                let want = if i == j {
                    x_algebra().one()
                } else {
                    x_algebra().zero()
                };
                assert_eq!(constant, want, "{} {}", d, x);
            }
        }
    }
}
