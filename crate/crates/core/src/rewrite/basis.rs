//! Basis enumeration for graded pieces, and centrality tests.
//!
//! When the rewriting system is confluent, the words containing no rule
//! left-hand side form a linear basis of the presented algebra; for a fixed
//! multi-degree they can be enumerated by depth-first search as long as every
//! generator has strictly positive principal degree (otherwise graded pieces
//! need not be finite dimensional).

use super::{Algebra, NcPoly, RewriteSystem, Word};

impl RewriteSystem {
    /// All normal words with the given multi-degree. Requires every
    /// generator grading to be componentwise nonnegative with positive
    /// principal (first) component.
    pub fn graded_basis(&self, target: &[i64]) -> Vec<Word> {
        assert_eq!(
            target.len(),
            self.grading_arity(),
            "grading arity mismatch"
        );
        assert!(
            self.gens
                .iter()
                .all(|g| g.grading.iter().all(|&d| d >= 0) && g.grading[0] > 0),
            "graded_basis needs nonnegative gradings with positive degree"
        );
        let mut out = Vec::new();
        let mut word = Word::empty();
        let mut acc = vec![0i64; target.len()];
        self.basis_dfs(target, &mut word, &mut acc, &mut out);
        out
    }

    fn basis_dfs(
        &self,
        target: &[i64],
        word: &mut Word,
        acc: &mut [i64],
        out: &mut Vec<Word>,
    ) {
        if acc == target {
            out.push(word.clone());
            return;
        }
        'letters: for g in 0..self.gens.len() {
            let grading = &self.gens[g].grading;
            for (i, &d) in grading.iter().enumerate() {
                if acc[i] + d > target[i] {
                    continue 'letters;
                }
            }
            word.0.push(g as super::Letter);
            // only suffixes ending at the new letter can become redexes
            if self.no_new_redex(word) {
                for (i, &d) in grading.iter().enumerate() {
                    acc[i] += d;
                }
                self.basis_dfs(target, word, acc, out);
                for (i, &d) in grading.iter().enumerate() {
                    acc[i] -= d;
                }
            }
            word.0.pop();
        }
    }

    fn no_new_redex(&self, word: &Word) -> bool {
        let n = word.len();
        let longest = n.min(self.max_lhs_len());
        for l in 2..=longest {
            if self.has_rule_for(&word.0[n - l..]) {
                return false;
            }
        }
        true
    }

    /// Dimension of the graded piece (basis cardinality).
    pub fn graded_dimension(&self, target: &[i64]) -> usize {
        self.graded_basis(target).len()
    }
}

impl Algebra {
    /// Does this element commute with every generator (hence with the whole
    /// algebra)?
    pub fn is_central(&self, p: &NcPoly) -> bool {
        (0..self.system().gens.len()).all(|g| {
            let gen = self.poly_from_word(
                Word::single(g as super::Letter),
                crate::scalar::ExactScalar::from_int(1),
            );
            p.commutator(&gen).is_zero()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::{Algebra, Generator, RewriteSystem, Rule, Word};
    use crate::scalar::{parse_scalar, ExactScalar};

    fn pq(t: &str) -> ExactScalar {
        parse_scalar(t).unwrap()
    }

    fn qplane() -> Algebra {
        Algebra::new(
            RewriteSystem::new(
                "qplane",
                vec![
                    Generator {
                        name: "x".into(),
                        grading: vec![1],
                    },
                    Generator {
                        name: "y".into(),
                        grading: vec![1],
                    },
                ],
                vec![Rule {
                    lhs: Word::from_letters(&[1, 0]),
                    rhs: vec![(pq("q"), Word::from_letters(&[0, 1]))],
                }],
            )
            .unwrap(),
        )
    }

    #[test]
    fn quantum_plane_dimensions_match_commutative_counts() {
        let alg = qplane();
        for d in 0..=6i64 {
            // x^a y^b with a + b = d: exactly d + 1 words
            assert_eq!(alg.system().graded_dimension(&[d]), (d + 1) as usize);
        }
    }

    #[test]
    fn basis_words_are_normal_and_sorted_sets() {
        let alg = qplane();
        let basis = alg.system().graded_basis(&[3]);
        assert_eq!(basis.len(), 4);
        for w in &basis {
            assert!(alg.system().is_normal_word(w));
        }
        // no duplicates
        let mut dedup = basis.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), basis.len());
    }

    #[test]
    fn centrality() {
        let alg = qplane();
        let x = alg.gen("x");
        let y = alg.gen("y");
        assert!(alg.is_central(&alg.one()));
        assert!(!alg.is_central(&x));
        assert!(!alg.is_central(&(&x * &y)));
    }
}
