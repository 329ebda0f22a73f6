//! Noncommutative polynomial arithmetic driven by a rewriting system.
//!
//! An algebra is presented by generators and a list of oriented rules
//! `lhs -> sum of (coeff, word)` where every right-hand word is strictly
//! smaller than the left-hand word in graded-lex order (length first, then
//! letters). That makes rewriting terminate unconditionally; confluence is
//! checked separately (see `confluence`) so normal forms are canonical.

pub mod basis;
pub mod confluence;
pub mod json;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use smallvec::SmallVec;
use thiserror::Error;

use crate::scalar::ExactScalar;

pub type Letter = u8;

/// A word in the generators; the identity is the empty word.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub SmallVec<[Letter; 16]>);

impl Word {
    pub fn empty() -> Word {
        Word(SmallVec::new())
    }

    pub fn single(g: Letter) -> Word {
        Word(SmallVec::from_slice(&[g]))
    }

    pub fn from_letters(letters: &[Letter]) -> Word {
        Word(SmallVec::from_slice(letters))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        Word(w)
    }

    /// Count of each letter, for grading computations.
    pub fn letter_counts(&self, num_gens: usize) -> Vec<usize> {
        let mut counts = vec![0; num_gens];
        for &g in &self.0 {
            counts[g as usize] += 1;
        }
        counts
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub name: String,
    /// Multi-grading; component 0 is the principal degree.
    pub grading: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Vec<(ExactScalar, Word)>,
}

#[derive(Debug, Error)]
pub enum RewriteError {
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("rule {lhs:?} is not strictly decreasing: right-hand word {rhs:?} is not smaller")]
    NonDecreasing { lhs: String, rhs: String },
    #[error("duplicate rule for left-hand side {0:?}")]
    DuplicateLhs(String),
    #[error("left-hand side must have length at least 2, got {0:?}")]
    ShortLhs(String),
    #[error("presentation error: {0}")]
    Presentation(String),
    #[error("scalar error: {0}")]
    Scalar(#[from] crate::scalar::ScalarError),
    #[error("json error: {0}")]
    Json(String),
}

#[derive(Debug)]
pub struct RewriteSystem {
    pub name: String,
    pub gens: Vec<Generator>,
    pub rules: Vec<Rule>,
    by_lhs: HashMap<Vec<Letter>, usize>,
    max_lhs_len: usize,
    name_to_id: HashMap<String, Letter>,
}

impl RewriteSystem {
    pub fn new(
        name: impl Into<String>,
        gens: Vec<Generator>,
        rules: Vec<Rule>,
    ) -> Result<RewriteSystem, RewriteError> {
        let name = name.into();
        if gens.len() > Letter::MAX as usize {
            return Err(RewriteError::Presentation(format!(
                "too many generators ({})",
                gens.len()
            )));
        }
        let mut name_to_id = HashMap::new();
        for (i, g) in gens.iter().enumerate() {
            if name_to_id.insert(g.name.clone(), i as Letter).is_some() {
                return Err(RewriteError::Presentation(format!(
                    "duplicate generator name {:?}",
                    g.name
                )));
            }
        }
        let grading_len = gens.first().map(|g| g.grading.len()).unwrap_or(0);
        if gens.iter().any(|g| g.grading.len() != grading_len) {
            return Err(RewriteError::Presentation(
                "generators disagree on grading arity".into(),
            ));
        }
        let mut by_lhs = HashMap::new();
        let mut max_lhs_len = 0;
        let render = |w: &Word| -> String {
            w.0.iter()
                .map(|&g| gens[g as usize].name.clone())
                .collect::<Vec<_>>()
                .join("*")
        };
        for (i, rule) in rules.iter().enumerate() {
            if rule.lhs.len() < 2 {
                return Err(RewriteError::ShortLhs(render(&rule.lhs)));
            }
            for (_, w) in &rule.rhs {
                if *w >= rule.lhs {
                    return Err(RewriteError::NonDecreasing {
                        lhs: render(&rule.lhs),
                        rhs: render(w),
                    });
                }
            }
            if by_lhs.insert(rule.lhs.0.to_vec(), i).is_some() {
                return Err(RewriteError::DuplicateLhs(render(&rule.lhs)));
            }
            max_lhs_len = max_lhs_len.max(rule.lhs.len());
        }
        Ok(RewriteSystem {
            name,
            gens,
            rules,
            by_lhs,
            max_lhs_len,
            name_to_id,
        })
    }

    pub fn gen_id(&self, name: &str) -> Result<Letter, RewriteError> {
        self.name_to_id
            .get(name)
            .copied()
            .ok_or_else(|| RewriteError::UnknownGenerator(name.to_string()))
    }

    pub fn gen_name(&self, id: Letter) -> &str {
        &self.gens[id as usize].name
    }

    pub fn grading_arity(&self) -> usize {
        self.gens.first().map(|g| g.grading.len()).unwrap_or(0)
    }

    pub fn max_lhs_len(&self) -> usize {
        self.max_lhs_len
    }

    pub(crate) fn has_rule_for(&self, slice: &[Letter]) -> bool {
        self.by_lhs.contains_key(slice)
    }

    pub fn word_grading(&self, w: &Word) -> Vec<i64> {
        let mut acc = vec![0i64; self.grading_arity()];
        for &g in &w.0 {
            for (a, b) in acc.iter_mut().zip(&self.gens[g as usize].grading) {
                *a += b;
            }
        }
        acc
    }

    /// Leftmost redex position and rule, if any. At a fixed position longer
    /// left-hand sides are preferred.
    fn find_redex(&self, w: &Word) -> Option<(usize, usize)> {
        let n = w.len();
        for pos in 0..n {
            let longest = self.max_lhs_len.min(n - pos);
            for l in (2..=longest).rev() {
                if let Some(&rule) = self.by_lhs.get(&w.0[pos..pos + l]) {
                    return Some((pos, rule));
                }
            }
        }
        None
    }

    pub fn is_normal_word(&self, w: &Word) -> bool {
        self.find_redex(w).is_none()
    }

    /// Normal form of a scalar multiple of a single word.
    pub fn normal_form_word(&self, w: Word, coeff: ExactScalar) -> BTreeMap<Word, ExactScalar> {
        let mut out: BTreeMap<Word, ExactScalar> = BTreeMap::new();
        let mut stack: Vec<(Word, ExactScalar)> = vec![(w, coeff)];
        while let Some((word, c)) = stack.pop() {
            if c.is_zero() {
                continue;
            }
            match self.find_redex(&word) {
                None => {
                    let entry = out.entry(word).or_insert_with(ExactScalar::zero);
                    *entry = entry.clone() + c;
                }
                Some((pos, rule_idx)) => {
                    let rule = &self.rules[rule_idx];
                    let l = rule.lhs.len();
                    for (rc, rw) in &rule.rhs {
                        let mut nw = SmallVec::from_slice(&word.0[..pos]);
                        nw.extend_from_slice(&rw.0);
                        nw.extend_from_slice(&word.0[pos + l..]);
                        stack.push((Word(nw), c.clone() * rc.clone()));
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

/// Cheap-to-clone handle to a rewrite system.
#[derive(Clone, Debug)]
pub struct Algebra(pub Arc<RewriteSystem>);

impl Algebra {
    pub fn new(sys: RewriteSystem) -> Algebra {
        Algebra(Arc::new(sys))
    }

    pub fn system(&self) -> &RewriteSystem {
        &self.0
    }

    pub fn same_as(&self, other: &Algebra) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.name == other.0.name
    }

    pub fn zero(&self) -> NcPoly {
        NcPoly {
            alg: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> NcPoly {
        self.scalar(ExactScalar::one())
    }

    pub fn scalar(&self, c: ExactScalar) -> NcPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Word::empty(), c);
        }
        NcPoly {
            alg: self.clone(),
            terms,
        }
    }

    /// Generator by name.
    pub fn gen(&self, name: &str) -> NcPoly {
        let id = self
            .0
            .gen_id(name)
            .unwrap_or_else(|e| panic!("{} in algebra {:?}", e, self.0.name));
        self.poly_from_word(Word::single(id), ExactScalar::one())
    }

    /// Product of named generators, normalized.
    pub fn word(&self, names: &[&str]) -> NcPoly {
        let mut letters = SmallVec::new();
        for n in names {
            let id = self
                .0
                .gen_id(n)
                .unwrap_or_else(|e| panic!("{} in algebra {:?}", e, self.0.name));
            letters.push(id);
        }
        self.poly_from_word(Word(letters), ExactScalar::one())
    }

    pub fn poly_from_word(&self, w: Word, c: ExactScalar) -> NcPoly {
        NcPoly {
            alg: self.clone(),
            terms: self.0.normal_form_word(w, c),
        }
    }

    pub fn poly_from_terms(
        &self,
        terms: impl IntoIterator<Item = (ExactScalar, Word)>,
    ) -> NcPoly {
        let mut acc = self.zero();
        for (c, w) in terms {
            acc = &acc + &self.poly_from_word(w, c);
        }
        acc
    }
}

/// Element of the presented algebra, kept in normal form at all times.
#[derive(Clone, Debug)]
pub struct NcPoly {
    alg: Algebra,
    terms: BTreeMap<Word, ExactScalar>,
}

impl NcPoly {
    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> ExactScalar {
        self.terms.get(w).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn scale(&self, c: &ExactScalar) -> NcPoly {
        if c.is_zero() {
            return self.alg.zero();
        }
        NcPoly {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, k)| (w.clone(), k.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> NcPoly {
        let mut acc = self.alg.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Commutator `self * other - other * self`.
    pub fn commutator(&self, other: &NcPoly) -> NcPoly {
        &(self * other) - &(other * self)
    }

    /// Total grading vector if the element is homogeneous, else `None`.
    pub fn homogeneous_grading(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys();
        let first = self.alg.0.word_grading(it.next()?);
        for w in it {
            if self.alg.0.word_grading(w) != first {
                return None;
            }
        }
        Some(first)
    }
}

impl PartialEq for NcPoly {
    fn eq(&self, other: &Self) -> bool {
        self.alg.same_as(&other.alg) && self.terms == other.terms
    }
}

impl std::ops::Add for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        assert!(
            self.alg.same_as(&rhs.alg),
            "mixing elements of different algebras"
        );
        let mut terms = self.terms.clone();
        for (w, c) in &rhs.terms {
            let entry = terms.entry(w.clone()).or_insert_with(ExactScalar::zero);
            *entry = entry.clone() + c.clone();
        }
        terms.retain(|_, c| !c.is_zero());
        NcPoly {
            alg: self.alg.clone(),
            terms,
        }
    }
}

impl std::ops::Sub for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        NcPoly {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl std::ops::Mul for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        assert!(
            self.alg.same_as(&rhs.alg),
            "mixing elements of different algebras"
        );
        let mut acc = self.alg.zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                let prod = self
                    .alg
                    .poly_from_word(wa.concat(wb), ca.clone() * cb.clone());
                acc = &acc + &prod;
            }
        }
        acc
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let sys = self.alg.system();
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let (sign, mag) = if c.has_negative_lead() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            let word_str = if w.is_empty() {
                None
            } else {
                Some(
                    w.0.iter()
                        .map(|&g| sys.gen_name(g))
                        .collect::<Vec<_>>()
                        .join("*"),
                )
            };
            match (word_str, mag.is_one()) {
                (None, _) => write!(f, "{}", mag)?,
                (Some(ws), true) => write!(f, "{}", ws)?,
                (Some(ws), false) => {
                    if mag.is_single_term() {
                        write!(f, "{}*{}", mag, ws)?;
                    } else {
                        write!(f, "({})*{}", mag, ws)?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_scalar;

    fn pq(t: &str) -> ExactScalar {
        parse_scalar(t).unwrap()
    }

    /// Quantum plane: two generators with yx -> q xy.
    fn quantum_plane() -> Algebra {
        let gens = vec![
            Generator {
                name: "x".into(),
                grading: vec![1],
            },
            Generator {
                name: "y".into(),
                grading: vec![1],
            },
        ];
        let rules = vec![Rule {
            lhs: Word::from_letters(&[1, 0]),
            rhs: vec![(pq("q"), Word::from_letters(&[0, 1]))],
        }];
        Algebra::new(RewriteSystem::new("qplane", gens, rules).unwrap())
    }

    #[test]
    fn word_order_is_graded_lex() {
        let a = Word::from_letters(&[0, 1]);
        let b = Word::from_letters(&[1, 0]);
        let c = Word::from_letters(&[2]);
        assert!(c < a, "shorter words are smaller");
        assert!(a < b, "lex on equal length");
        assert!(Word::empty() < c);
    }

    #[test]
    fn quantum_plane_normal_form() {
        let alg = quantum_plane();
        let x = alg.gen("x");
        let y = alg.gen("y");
        let yx = &y * &x;
        assert_eq!(yx, (&x * &y).scale(&pq("q")));
        // y^2 x = q^2 x y^2
        let y2x = &(&y * &y) * &x;
        let expect = (&(&x * &y) * &y).scale(&pq("q^2"));
        assert_eq!(y2x, expect);
    }

    #[test]
    fn binomial_in_quantum_plane() {
        // (x + y)^2 = x^2 + (1 + q) xy + y^2
        let alg = quantum_plane();
        let x = alg.gen("x");
        let y = alg.gen("y");
        let sum = &x + &y;
        let sq = sum.pow(2);
        let expect = &(&(&x * &x) + &(&x * &y).scale(&pq("1+q"))) + &(&y * &y);
        assert_eq!(sq, expect);
    }

    #[test]
    fn rejects_nondecreasing_rules() {
        let gens = vec![
            Generator {
                name: "x".into(),
                grading: vec![1],
            },
            Generator {
                name: "y".into(),
                grading: vec![1],
            },
        ];
        // xy -> yx is increasing (xy < yx), must be rejected
        let rules = vec![Rule {
            lhs: Word::from_letters(&[0, 1]),
            rhs: vec![(ExactScalar::one(), Word::from_letters(&[1, 0]))],
        }];
        assert!(matches!(
            RewriteSystem::new("bad", gens, rules),
            Err(RewriteError::NonDecreasing { .. })
        ));
    }

    #[test]
    fn homogeneous_grading_detection() {
        let alg = quantum_plane();
        let x = alg.gen("x");
        let y = alg.gen("y");
        assert_eq!((&x * &y).homogeneous_grading(), Some(vec![2]));
        assert_eq!((&x + &(&y * &y)).homogeneous_grading(), None);
        assert_eq!(alg.one().homogeneous_grading(), Some(vec![0]));
    }

    #[test]
    fn display_reads_naturally() {
        let alg = quantum_plane();
        let x = alg.gen("x");
        let y = alg.gen("y");
        let p = &(&x * &y).scale(&pq("q-q^-1")) - &alg.one();
        let s = p.to_string();
        assert_eq!(s, "((q^2-1)/(q))*x*y - 1");
        assert_eq!(alg.zero().to_string(), "0");
    }
}
