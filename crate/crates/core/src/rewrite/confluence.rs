//! Local confluence via critical pairs. Because every rule strictly
//! decreases the graded-lex word order, rewriting terminates; by Newman's
//! lemma the system is confluent exactly when every overlap and inclusion
//! ambiguity resolves to the same normal form.

use std::collections::BTreeMap;

use crate::scalar::ExactScalar;

use super::{RewriteSystem, Word};

/// An unresolved ambiguity: the superposed word and the difference of its
/// two reductions (nonzero by construction).
#[derive(Debug, Clone)]
pub struct Ambiguity {
    pub rule_a: usize,
    pub rule_b: usize,
    pub word: Word,
    pub difference: BTreeMap<Word, ExactScalar>,
}

impl RewriteSystem {
    /// All critical pairs that fail to resolve; empty means confluent.
    pub fn confluence_failures(&self) -> Vec<Ambiguity> {
        let mut failures = Vec::new();
        for (i, ra) in self.rules.iter().enumerate() {
            for (j, rb) in self.rules.iter().enumerate() {
                // overlap: a proper suffix of lhs_a equals a proper prefix
                // of lhs_b
                let la = ra.lhs.len();
                let lb = rb.lhs.len();
                for o in 1..la.min(lb) {
                    if ra.lhs.0[la - o..] != rb.lhs.0[..o] {
                        continue;
                    }
                    let mut w = ra.lhs.0.clone();
                    w.extend_from_slice(&rb.lhs.0[o..]);
                    let word = Word(w);
                    self.check_pair(i, j, &word, 0, la - o, &mut failures);
                }
                // inclusion: lhs_b occurs strictly inside lhs_a
                if i != j && lb < la {
                    for pos in 0..=la - lb {
                        if ra.lhs.0[pos..pos + lb] == rb.lhs.0[..] {
                            self.check_pair(i, j, &ra.lhs, 0, pos, &mut failures);
                        }
                    }
                }
            }
        }
        failures
    }

    pub fn is_confluent(&self) -> bool {
        self.confluence_failures().is_empty()
    }

    /// Reduce `word` two ways (rule_a at pos_a, rule_b at pos_b), then
    /// normalize fully and compare.
    fn check_pair(
        &self,
        rule_a: usize,
        rule_b: usize,
        word: &Word,
        pos_a: usize,
        pos_b: usize,
        failures: &mut Vec<Ambiguity>,
    ) {
        let via_a = self.reduce_once_then_normalize(word, rule_a, pos_a);
        let via_b = self.reduce_once_then_normalize(word, rule_b, pos_b);
        let mut difference = via_a;
        for (w, c) in via_b {
            let entry = difference.entry(w).or_insert_with(num_traits::Zero::zero);
            *entry = entry.clone() - c;
        }
        difference.retain(|_, c| !c.is_zero());
        if !difference.is_empty() {
            failures.push(Ambiguity {
                rule_a,
                rule_b,
                word: word.clone(),
                difference,
            });
        }
    }

    fn reduce_once_then_normalize(
        &self,
        word: &Word,
        rule: usize,
        pos: usize,
    ) -> BTreeMap<Word, ExactScalar> {
        let r = &self.rules[rule];
        let l = r.lhs.len();
        debug_assert_eq!(&word.0[pos..pos + l], &r.lhs.0[..]);
        let mut out: BTreeMap<Word, ExactScalar> = BTreeMap::new();
        for (c, rw) in &r.rhs {
            let mut nw = smallvec::SmallVec::from_slice(&word.0[..pos]);
            nw.extend_from_slice(&rw.0);
            nw.extend_from_slice(&word.0[pos + l..]);
            for (w, k) in self.normal_form_word(Word(nw), c.clone()) {
                let entry = out.entry(w).or_insert_with(num_traits::Zero::zero);
                *entry = entry.clone() + k;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

/// Human-readable rendering of a failure list, for diagnostics.
pub fn describe_failures(sys: &RewriteSystem, failures: &[Ambiguity]) -> String {
    let mut out = String::new();
    for f in failures {
        let word: Vec<&str> = f.word.0.iter().map(|&g| sys.gen_name(g)).collect();
        out.push_str(&format!(
            "rules {} and {} disagree on {}: residual has {} terms\n",
            f.rule_a,
            f.rule_b,
            word.join("*"),
            f.difference.len()
        ));
    }
    out
}
