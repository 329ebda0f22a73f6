//! Matrix elements of a primary field between highest-weight modules.
//!
//! For an intermediate weight family indexed by nonnegative integers, the
//! field of label lambda maps the module of label mu into the module of
//! label nu (times a formal power of z). Every matrix element
//! f(P, S) = <nu, P| field |mu, S> between kept basis states is fixed by
//! the commutation rule of Virasoro modes with a primary field:
//!
//!   f(L_{-n} u, v) = (e(u, v) + (n+1) D) f(u, v) + f(u, L_n v)
//!   f(top, L_{-n} v) = -(e(top, v) + (1-n) D) f(top, v)
//!
//! where D is the field weight and e(u, v) the z-exponent of the element.
//! Both rules together with f(top, top) = 1 overdetermine the table, so
//! the solver assembles every instance as one linear system and checks
//! consistency and uniqueness. Inconsistency is meaningful: it is exactly
//! how a forbidden triple (nu, lambda, mu) or a degenerate central charge
//! shows up, since the kept bases already carry the singular vectors.

use super::virasoro::{c_hat, delta, Partition, VirState, VirasoroModule};
use crate::linalg::Matrix;
use crate::scalar::ExactScalar;
use num_traits::Zero;
use std::collections::BTreeMap;

pub struct Intertwiner {
    pub nu: i64,
    pub lambda: i64,
    pub mu: i64,
    pub cut: u32,
    pub out_module: VirasoroModule,
    pub in_module: VirasoroModule,
    pub field_weight: ExactScalar,
    values: BTreeMap<(Partition, Partition), ExactScalar>,
}

fn single(part: &[u32]) -> VirState {
    let mut s = VirState::new();
    s.insert(part.to_vec(), ExactScalar::from_int(1));
    s
}

impl Intertwiner {
    /// Table entry for a kept out-basis partition against a kept in-basis
    /// partition.
    pub fn value(&self, p: &[u32], s: &[u32]) -> ExactScalar {
        self.values
            .get(&(p.to_vec(), s.to_vec()))
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    /// z-exponent of the element between levels p and s.
    pub fn z_exponent(&self, p: i64, s: i64) -> ExactScalar {
        self.out_module.h.clone() + ExactScalar::from_int(p)
            - self.field_weight.clone()
            - self.in_module.h.clone()
            - ExactScalar::from_int(s)
    }
}

/// Solve for the full table of matrix elements up to the level cut,
/// normalized by f(top, top) = 1.
pub fn intertwiner(
    kappa: &ExactScalar,
    nu: i64,
    lambda: i64,
    mu: i64,
    cut: u32,
) -> Result<Intertwiner, String> {
    let c = c_hat(kappa);
    let out_m = VirasoroModule::irreducible(delta(nu, kappa), c.clone(), cut);
    let in_m = VirasoroModule::irreducible(delta(mu, kappa), c, cut);
    let dw = delta(lambda, kappa);

    let mut index: BTreeMap<(Partition, Partition), usize> = BTreeMap::new();
    for p in 0..=cut {
        for pp in out_m.basis(p) {
            for s in 0..=cut {
                for ss in in_m.basis(s) {
                    let k = index.len();
                    index.insert((pp.clone(), ss.clone()), k);
                }
            }
        }
    }
    let n_unknowns = index.len();
    let col = |p: &Partition, s: &Partition| index[&(p.clone(), s.clone())];

    let exponent = |p: i64, s: i64| {
        out_m.h.clone() + ExactScalar::from_int(p) - dw.clone() - in_m.h.clone()
            - ExactScalar::from_int(s)
    };

    let mut rows: Vec<Vec<ExactScalar>> = Vec::new();
    let mut rhs: Vec<ExactScalar> = Vec::new();

    // mode against the out index, valid from every row
    for n in 1..=cut as i64 {
        for p in 0..=(cut as i64 - n) {
            for u in out_m.basis(p as u32) {
                let lifted = out_m.reduce(&out_m.mode(-n, &single(u)));
                for s in 0..=cut as i64 {
                    for v in in_m.basis(s as u32) {
                        let mut row = vec![ExactScalar::zero(); n_unknowns];
                        for (pp, cf) in &lifted {
                            let j = col(pp, v);
                            row[j] = row[j].clone() + cf.clone();
                        }
                        let weight =
                            exponent(p, s) + ExactScalar::from_int(n + 1) * dw.clone();
                        let j = col(u, v);
                        row[j] = row[j].clone() - weight;
                        let lowered = in_m.reduce(&in_m.mode(n, &single(v)));
                        for (ss, cf) in &lowered {
                            let j = col(u, ss);
                            row[j] = row[j].clone() - cf.clone();
                        }
                        rows.push(row);
                        rhs.push(ExactScalar::zero());
                    }
                }
            }
        }
    }

    // mode against the in index, valid from the top row only
    let top: Partition = Vec::new();
    for n in 1..=cut as i64 {
        for s in 0..=(cut as i64 - n) {
            for v in in_m.basis(s as u32) {
                let raised = in_m.reduce(&in_m.mode(-n, &single(v)));
                let mut row = vec![ExactScalar::zero(); n_unknowns];
                for (ss, cf) in &raised {
                    let j = col(&top, ss);
                    row[j] = row[j].clone() + cf.clone();
                }
                let weight = exponent(0, s) + ExactScalar::from_int(1 - n) * dw.clone();
                let j = col(&top, v);
                row[j] = row[j].clone() + weight;
                rows.push(row);
                rhs.push(ExactScalar::zero());
            }
        }
    }

    // normalization
    {
        let mut row = vec![ExactScalar::zero(); n_unknowns];
        row[col(&top, &top)] = ExactScalar::from_int(1);
        rows.push(row);
        rhs.push(ExactScalar::from_int(1));
    }

    let mat = Matrix::from_fn(rows.len(), n_unknowns, |i, j| rows[i][j].clone());
    let sol = mat
        .solve(&rhs)
        .ok_or("inconsistent recursion (non-generic kappa)")?;
    if !mat.nullspace().is_empty() {
        return Err("matrix elements are not pinned at this cut".into());
    }

    let values = index
        .into_iter()
        .map(|(key, i)| (key, sol[i].clone()))
        .collect();
    Ok(Intertwiner {
        nu,
        lambda,
        mu,
        cut,
        out_module: out_m,
        in_module: in_m,
        field_weight: dw,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::poly::VKAPPA;

    fn sym_kappa() -> ExactScalar {
        ExactScalar::var(VKAPPA)
    }

    #[test]
    fn first_descendant_values_close_in_the_weights() {
        let kappa = sym_kappa();
        let iv = intertwiner(&kappa, 1, 1, 2, 2).unwrap();
        let e00 = iv.z_exponent(0, 0);
        // stepping the in state down by one level
        assert_eq!(iv.value(&[], &[1]), -e00.clone());
        // stepping the out state up by one level
        assert_eq!(
            iv.value(&[1], &[]),
            e00 + ExactScalar::from_int(2) * iv.field_weight.clone()
        );
    }

    #[test]
    fn z_exponent_tracks_levels() {
        let kappa = sym_kappa();
        let iv = intertwiner(&kappa, 1, 1, 2, 2).unwrap();
        let base = iv.out_module.h.clone() - iv.field_weight.clone() - iv.in_module.h.clone();
        assert_eq!(iv.z_exponent(0, 0), base.clone());
        assert_eq!(
            iv.z_exponent(2, 1),
            base + ExactScalar::from_int(1)
        );
    }

    #[test]
    fn symbolic_and_rational_backgrounds_are_both_consistent() {
        for kappa in [sym_kappa(), ExactScalar::ratio(17, 5)] {
            let iv = intertwiner(&kappa, 0, 1, 1, 3).unwrap();
            assert_eq!(iv.value(&[], &[]), ExactScalar::from_int(1));
        }
    }

    #[test]
    fn forbidden_triple_is_rejected() {
        let err = intertwiner(&sym_kappa(), 2, 1, 0, 2).err().unwrap();
        assert_eq!(err, "inconsistent recursion (non-generic kappa)");
    }

    #[test]
    fn triangle_rule_violations_die_even_at_higher_labels() {
        // 1 (x) 1 contains 0 and 2 but not 1 or 3
        assert!(intertwiner(&sym_kappa(), 2, 1, 1, 2).is_ok());
        let err = intertwiner(&sym_kappa(), 3, 1, 1, 2).err().unwrap();
        assert_eq!(err, "inconsistent recursion (non-generic kappa)");
    }
}
