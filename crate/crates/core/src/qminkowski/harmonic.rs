//! Harmonic polynomials on the quantum coordinate algebra, graded by a
//! highest weight `lambda` and two weight labels: `r` for the column index
//! and `k` for the row index (both run over lambda, lambda-2, .., -lambda).
//!
//! The defining expansion of X^lambda_{r,k} sums the words
//! x11^i x21^{a-i} x12^j x22^{b-j} with a = (lambda-r)/2, b = (lambda+r)/2,
//! i+j = (lambda-k)/2, weighted by two Gaussian binomials in base q^2. An
//! independent cross-check multiplies out (x11 t + x21)^a (x12 t + x22)^b
//! with t a central marker and reads the same polynomials off the powers
//! of t.

use super::{extension_algebra, interval, x_algebra};
use crate::linalg::Matrix;
use crate::rewrite::{Algebra, Generator, Letter, NcPoly, Rule, RewriteSystem, Word};
use crate::scalar::{gaussian_binomial, ExactScalar};
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use std::sync::OnceLock;

/// Valid weight labels for a given highest weight: lambda, lambda-2, ...
pub fn weight_labels(lambda: u32) -> Vec<i64> {
    let l = lambda as i64;
    (-l..=l).step_by(2).collect()
}

/// The harmonic X^lambda_{r,k} in the coordinate algebra.
pub fn harmonic_polynomial(lambda: u32, r: i64, k: i64) -> NcPoly {
    let l = lambda as i64;
    assert!(r.abs() <= l && (l - r) % 2 == 0, "bad column label {}", r);
    assert!(k.abs() <= l && (l - k) % 2 == 0, "bad row label {}", k);
    let alg = x_algebra();
    let a = ((l - r) / 2) as usize;
    let b = ((l + r) / 2) as usize;
    let m = ((l - k) / 2) as usize;
    let q2 = ExactScalar::q_pow(2);
    let mut acc = alg.zero();
    let i_lo = m.saturating_sub(b);
    for i in i_lo..=m.min(a) {
        let j = m - i;
        let coeff = gaussian_binomial(a as u32, i as u32, &q2)
            * gaussian_binomial(b as u32, j as u32, &q2);
        let mut letters: Vec<Letter> = Vec::with_capacity(lambda as usize);
        letters.extend(std::iter::repeat(0).take(i)); // x11
        letters.extend(std::iter::repeat(2).take(a - i)); // x21
        letters.extend(std::iter::repeat(1).take(j)); // x12
        letters.extend(std::iter::repeat(3).take(b - j)); // x22
        acc = &acc + &alg.poly_from_word(Word::from_letters(&letters), coeff);
    }
    acc
}

/// Coordinate algebra with an extra central marker generator `t`, used by
/// the generating-product cross-check.
fn marked_algebra() -> Algebra {
    static CACHE: OnceLock<Algebra> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            let xs = x_algebra();
            let mut gens = vec![Generator {
                name: "t".into(),
                grading: vec![0],
            }];
            gens.extend(xs.system().gens.iter().cloned());
            let shift = |w: &Word| {
                Word::from_letters(&w.0.iter().map(|l| l + 1).collect::<Vec<_>>())
            };
            let mut rules: Vec<Rule> = xs
                .system()
                .rules
                .iter()
                .map(|r| Rule {
                    lhs: shift(&r.lhs),
                    rhs: r.rhs.iter().map(|(c, w)| (c.clone(), shift(w))).collect(),
                })
                .collect();
            for l in 1..=4u8 {
                rules.push(Rule {
                    lhs: Word::from_letters(&[l, 0]),
                    rhs: vec![(ExactScalar::one(), Word::from_letters(&[0, l]))],
                });
            }
            Algebra::new(RewriteSystem::new("minkowski_x_marked", gens, rules).unwrap())
        })
        .clone()
}

/// Independent construction of the whole k-tower over (lambda, r): expand
/// (x11 t + x21)^a (x12 t + x22)^b and split by the power of t. Returns
/// pairs (k, polynomial) with k descending from lambda.
pub fn harmonic_tower_oracle(lambda: u32, r: i64) -> Vec<(i64, NcPoly)> {
    let l = lambda as i64;
    assert!(r.abs() <= l && (l - r) % 2 == 0);
    let a = ((l - r) / 2) as u32;
    let b = ((l + r) / 2) as u32;
    let marked = marked_algebra();
    let xs = x_algebra();
    let first = marked.poly_from_terms(vec![
        (ExactScalar::one(), Word::from_letters(&[1, 0])), // x11 t
        (ExactScalar::one(), Word::from_letters(&[3])),    // x21
    ]);
    let second = marked.poly_from_terms(vec![
        (ExactScalar::one(), Word::from_letters(&[2, 0])), // x12 t
        (ExactScalar::one(), Word::from_letters(&[4])),    // x22
    ]);
    let product = &first.pow(a) * &second.pow(b);

    let mut split: std::collections::BTreeMap<usize, Vec<(ExactScalar, Word)>> =
        Default::default();
    for (w, c) in product.terms() {
        let t_count = w.0.iter().take_while(|&&l| l == 0).count();
        debug_assert!(w.0.iter().skip(t_count).all(|&l| l != 0));
        let stripped: Vec<Letter> = w.0.iter().skip(t_count).map(|l| l - 1).collect();
        split
            .entry(t_count)
            .or_default()
            .push((c.clone(), Word::from_letters(&stripped)));
    }
    split
        .into_iter()
        .map(|(m, terms)| (l - 2 * m as i64, xs.poly_from_terms(terms)))
        .collect()
}

/// Rank of the span of a family, over the monomial basis of shared words.
pub fn span_rank(polys: &[NcPoly]) -> usize {
    let words: BTreeSet<Word> = polys
        .iter()
        .flat_map(|p| p.terms().map(|(w, _)| w.clone()))
        .collect();
    let index: Vec<&Word> = words.iter().collect();
    let mat = Matrix::from_fn(polys.len(), index.len(), |i, j| polys[i].coeff(index[j]));
    mat.rank()
}

/// The scaled harmonics zetai^{2j+lambda} (x11 x22 - x12 x21)^j X^lambda_{r,k}
/// over all lambda + 2j = d, taken inside the extension algebra. They avoid
/// the scaling generator entirely and span a space of dimension
/// binomial(d+3, 3), matching the coordinate algebra in degree d.
pub fn scaled_basis(d: u32) -> Vec<NcPoly> {
    let ext = extension_algebra();
    let xs = x_algebra();
    let det = interval(&xs);
    let mut out = Vec::new();
    let mut lambda = d;
    loop {
        let j = (d - lambda) / 2;
        let prefix = ext.gen("zetai").pow(2 * j + lambda);
        let det_pow = det.pow(j);
        for &r in &weight_labels(lambda) {
            for &k in &weight_labels(lambda) {
                let x = harmonic_polynomial(lambda, r, k);
                let body = super::embed_x(&(&det_pow * &x));
                out.push(&prefix * &body);
            }
        }
        if lambda < 2 {
            break;
        }
        lambda -= 2;
    }
    out
}

/// One ladder step of the symmetry action on the coordinate algebra. Each
/// operator is a twisted derivation: the raising form inserts the twist on
/// the suffix, the lowering form on the prefix. The letter tables were
/// solved for once from the requirement that the six coordinate relations
/// stay invariant; the tests re-verify that.
#[derive(Clone, Debug)]
pub struct LetterAction {
    /// image of each letter, None when the letter is annihilated
    pub base: Vec<Option<(ExactScalar, Letter)>>,
    /// twist exponents per letter
    pub twist: Vec<i64>,
    /// raising form if true (twist on the suffix), lowering otherwise
    pub raising: bool,
}

impl LetterAction {
    /// Apply to a single word with a coefficient, without assuming the word
    /// is normal. Used both for the action itself and for checking that the
    /// action respects the defining relations.
    pub fn apply_word(&self, alg: &Algebra, w: &Word, c: &ExactScalar) -> NcPoly {
        let mut acc = alg.zero();
        for i in 0..w.len() {
            let Some((bc, bl)) = &self.base[w.0[i] as usize] else {
                continue;
            };
            let mut letters = w.0.clone();
            letters[i] = *bl;
            let twist: i64 = if self.raising {
                w.0[i + 1..].iter().map(|&l| self.twist[l as usize]).sum()
            } else {
                -w.0[..i].iter().map(|&l| self.twist[l as usize]).sum::<i64>()
            };
            let coeff = c.clone() * bc.clone() * ExactScalar::q_pow(twist);
            acc = &acc + &alg.poly_from_word(Word(letters), coeff);
        }
        acc
    }

    pub fn apply(&self, p: &NcPoly) -> NcPoly {
        let alg = p.algebra().clone();
        let mut acc = alg.zero();
        for (w, c) in p.terms() {
            acc = &acc + &self.apply_word(&alg, w, c);
        }
        acc
    }
}

fn one() -> ExactScalar {
    ExactScalar::one()
}

/// Moves a column-1 letter to column 2: sends X^l_{r,k} towards r+2.
pub fn col_raising() -> LetterAction {
    LetterAction {
        base: vec![Some((one(), 1)), None, Some((one(), 3)), None],
        twist: vec![2, 0, 2, 0],
        raising: false,
    }
}

/// Moves a column-2 letter to column 1: sends X^l_{r,k} towards r-2.
pub fn col_lowering() -> LetterAction {
    LetterAction {
        base: vec![None, Some((one(), 0)), None, Some((one(), 2))],
        twist: vec![0, -2, 0, -2],
        raising: true,
    }
}

/// Moves a row-1 letter to row 2: sends X^l_{r,k} towards k+2.
pub fn row_raising() -> LetterAction {
    LetterAction {
        base: vec![Some((one(), 2)), Some((one(), 3)), None, None],
        twist: vec![0, 0, -2, -2],
        raising: false,
    }
}

/// Moves a row-2 letter to row 1: sends X^l_{r,k} towards k-2.
pub fn row_lowering() -> LetterAction {
    LetterAction {
        base: vec![None, None, Some((one(), 0)), Some((one(), 1))],
        twist: vec![2, 2, 0, 0],
        raising: true,
    }
}

/// Scale every word by q^(sum of per-letter weights): the diagonal part of
/// the action. Column weights are [-1, 1, -1, 1], row weights [-1, -1, 1, 1].
pub fn weight_scale(weights: &[i64], p: &NcPoly) -> NcPoly {
    let alg = p.algebra().clone();
    let mut acc = alg.zero();
    for (w, c) in p.terms() {
        let total: i64 = w.0.iter().map(|&l| weights[l as usize]).sum();
        acc = &acc + &alg.poly_from_word(w.clone(), c.clone() * ExactScalar::q_pow(total));
    }
    acc
}

pub const COL_WEIGHTS: [i64; 4] = [-1, 1, -1, 1];
pub const ROW_WEIGHTS: [i64; 4] = [-1, -1, 1, 1];

/// If `p` is a scalar multiple of `target`, return the multiplier.
pub fn proportionality(p: &NcPoly, target: &NcPoly) -> Option<ExactScalar> {
    if target.is_zero() {
        return p.is_zero().then(ExactScalar::zero);
    }
    let (w, c) = target.terms().next().unwrap();
    let ratio = p.coeff(w) * c.clone().inv();
    (p == &target.scale(&ratio)).then_some(ratio)
}
