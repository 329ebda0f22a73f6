//! Graded state spaces for the free-field complex: a Virasoro factor and a
//! Heisenberg Fock factor for each chirality, plus the two fermionic ghost
//! systems shared between them.

use super::virasoro::{c_hat, delta, partitions, Partition, VirasoroModule};
use crate::scalar::ExactScalar;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Basis vector of the tensor product. Boson factors are partitions (of the
/// level, by mode multiplicity); ghost factors are strictly increasing lists
/// of applied creator modes. The implied ghost word order is all b's, then
/// c's, then psi's, then chi's, in list order, applied to the joint vacuum.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct Key {
    pub vir: Partition,
    pub fock: Partition,
    pub vbar: Partition,
    pub fbar: Partition,
    pub b: Vec<i64>,
    pub c: Vec<i64>,
    pub psi: Vec<i64>,
    pub chi: Vec<i64>,
}

impl Key {
    pub fn vacuum() -> Key {
        Key::default()
    }

    /// Conformal level relative to the sector ground state. A mode with
    /// index n shifts the level by -n, so applied creator lists contribute
    /// minus their index sum; boson partitions store positive mode indices.
    pub fn level(&self) -> i64 {
        let boson: i64 = self
            .vir
            .iter()
            .chain(&self.fock)
            .chain(&self.vbar)
            .chain(&self.fbar)
            .map(|&p| p as i64)
            .sum();
        let ghost: i64 = self
            .b
            .iter()
            .chain(&self.c)
            .chain(&self.psi)
            .chain(&self.chi)
            .sum();
        boson - ghost
    }

    /// Ghost number: +1 per c or psi creator, -1 per b or chi creator.
    pub fn ghost_number(&self) -> i64 {
        (self.c.len() + self.psi.len()) as i64 - (self.b.len() + self.chi.len()) as i64
    }
}

pub type State = BTreeMap<Key, ExactScalar>;

pub fn add_to(state: &mut State, key: Key, coeff: ExactScalar) {
    if coeff.is_zero() {
        return;
    }
    let slot = state.entry(key).or_insert_with(ExactScalar::zero);
    *slot = slot.clone() + coeff;
}

pub fn normalize(state: &mut State) {
    state.retain(|_, v| !v.is_zero());
}

pub fn single(key: Key) -> State {
    let mut s = State::new();
    s.insert(key, ExactScalar::from_int(1));
    s
}

pub fn scale_state(state: &State, f: &ExactScalar) -> State {
    let mut out = State::new();
    for (k, v) in state {
        add_to(&mut out, k.clone(), v.clone() * f.clone());
    }
    out
}

pub fn sub_states(a: &State, b: &State) -> State {
    let mut out = a.clone();
    for (k, v) in b {
        add_to(&mut out, k.clone(), -v.clone());
    }
    normalize(&mut out);
    out
}

pub fn state_is_zero(state: &State) -> bool {
    state.values().all(|v| v.is_zero())
}

/// One tensor-product sector of the complex: holomorphic modules with
/// parameters (kappa, eta), antiholomorphic with (-kappa, -eta), and the
/// ghost systems. `l` and `m` label the Fock charges; the barred Fock is
/// labeled by its pairing charge, so its zero mode acts by minus the label
/// and the diagonal condition a0 + abar0 = 0 selects equal labels.
///
/// `eta_bar` is kept as an independent field so anomaly probes can violate
/// the pairing eta_bar = -eta on purpose.
pub struct Sector {
    pub kappa: ExactScalar,
    pub eta: ExactScalar,
    pub eta_bar: ExactScalar,
    pub lambda: i64,
    pub l: i64,
    pub mu: i64,
    pub m: i64,
    pub max_level: u32,
    pub vir: VirasoroModule,
    pub vbar: VirasoroModule,
}

impl Sector {
    pub fn new(
        kappa: ExactScalar,
        eta: ExactScalar,
        lambda: i64,
        l: i64,
        mu: i64,
        m: i64,
        max_level: u32,
    ) -> Sector {
        let kbar = -kappa.clone();
        let vir = VirasoroModule::irreducible(delta(lambda, &kappa), c_hat(&kappa), max_level);
        let vbar = VirasoroModule::irreducible(delta(mu, &kbar), c_hat(&kbar), max_level);
        Sector {
            kappa,
            eta_bar: -eta.clone(),
            eta,
            lambda,
            l,
            mu,
            m,
            max_level,
            vir,
            vbar,
        }
    }

    /// Sector with hand-picked Virasoro factors and deformation parameters,
    /// for probing what breaks when the matching conditions are violated.
    pub fn custom(
        vir: VirasoroModule,
        vbar: VirasoroModule,
        eta: ExactScalar,
        eta_bar: ExactScalar,
        l: i64,
        m: i64,
        max_level: u32,
    ) -> Sector {
        Sector {
            kappa: ExactScalar::from_int(0),
            eta,
            eta_bar,
            lambda: 0,
            l,
            mu: 0,
            m,
            max_level,
            vir,
            vbar,
        }
    }

    /// Ground-state eigenvalue of the total (coupled) L0; a basis key adds
    /// its level on top of this.
    pub fn base_weight(&self) -> ExactScalar {
        self.vir.h.clone()
            + self.vbar.h.clone()
            + ExactScalar::from_int(self.l * self.l)
                * (ExactScalar::from_int(4) * self.eta.clone()).inv()
            + ExactScalar::from_int(self.m * self.m)
                * (ExactScalar::from_int(4) * self.eta_bar.clone()).inv()
    }

    /// All basis keys with total level in [lo, hi].
    pub fn basis(&self, lo: i64, hi: i64) -> Vec<Key> {
        let mut out = Vec::new();
        if hi < lo {
            return out;
        }
        let ghost_states = enumerate_ghosts(hi + 1);
        // boson side: distribute nonnegative levels over the four factors
        for (ghost, glevel) in &ghost_states {
            let budget = hi - glevel;
            if budget < 0 {
                continue;
            }
            for va in 0..=budget.min(self.max_level as i64) {
                for vp in self.vir.basis(va as u32) {
                    for fa in 0..=(budget - va) {
                        for fp in partitions(fa as u32) {
                            for vb in 0..=(budget - va - fa).min(self.max_level as i64) {
                                for vbp in self.vbar.basis(vb as u32) {
                                    for fb in 0..=(budget - va - fa - vb) {
                                        let total = glevel + va + fa + vb + fb;
                                        if total < lo {
                                            continue;
                                        }
                                        for fbp in partitions(fb as u32) {
                                            let mut key = ghost.clone();
                                            key.vir = vp.clone();
                                            key.fock = fp.clone();
                                            key.vbar = vbp.clone();
                                            key.fbar = fbp.clone();
                                            out.push(key);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }
}

/// Ghost-only keys with level at most `hi` (level can reach -1 via the
/// single negative-level creator c_1), paired with their level.
fn enumerate_ghosts(hi: i64) -> Vec<(Key, i64)> {
    let bound = hi.max(0);
    let b_modes: Vec<i64> = (2..=bound).map(|n| -n).collect();
    let c_modes: Vec<i64> = (-bound..=1).rev().collect();
    let psi_modes: Vec<i64> = (-bound..=0).rev().collect();
    let chi_modes: Vec<i64> = (1..=bound).map(|n| -n).collect();

    fn family_subsets(modes: &[i64], budget: i64) -> Vec<(Vec<i64>, i64)> {
        // each subset reported with its level contribution (-sum of modes)
        let mut out = vec![(Vec::new(), 0)];
        for &n in modes {
            let mut extra = Vec::new();
            for (set, lvl) in &out {
                let nl = lvl - n;
                if nl <= budget {
                    let mut s = set.clone();
                    s.push(n);
                    extra.push((s, nl));
                }
            }
            out.extend(extra);
        }
        for (set, _) in &mut out {
            set.sort();
        }
        out
    }

    // c_1 contributes -1, so the other families get one extra unit of room
    let bs = family_subsets(&b_modes, hi + 1);
    let cs = family_subsets(&c_modes, hi + 1);
    let ps = family_subsets(&psi_modes, hi + 1);
    let xs = family_subsets(&chi_modes, hi + 1);
    let mut out = Vec::new();
    for (b, lb) in &bs {
        for (c, lc) in &cs {
            if lb + lc > hi + 1 {
                continue;
            }
            for (p, lp) in &ps {
                if lb + lc + lp > hi + 1 {
                    continue;
                }
                for (x, lx) in &xs {
                    let lvl = lb + lc + lp + lx;
                    if lvl > hi {
                        continue;
                    }
                    let key = Key {
                        b: b.clone(),
                        c: c.clone(),
                        psi: p.clone(),
                        chi: x.clone(),
                        ..Key::default()
                    };
                    out.push((key, lvl));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::poly::{VETA, VKAPPA};

    fn symbolic_sector(lambda: i64, l: i64, mu: i64, m: i64, max: u32) -> Sector {
        Sector::new(
            ExactScalar::var(VKAPPA),
            ExactScalar::var(VETA),
            lambda,
            l,
            mu,
            m,
            max,
        )
    }

    #[test]
    fn ghost_levels_are_bounded_below_by_minus_one() {
        for (key, lvl) in enumerate_ghosts(3) {
            assert_eq!(key.level(), lvl);
            assert!(lvl >= -1, "{:?}", key);
        }
    }

    #[test]
    fn vacuum_key_is_neutral() {
        let k = Key::vacuum();
        assert_eq!(k.level(), 0);
        assert_eq!(k.ghost_number(), 0);
    }

    #[test]
    fn level_zero_ghost_sector_at_ghost_number_zero_is_two_dimensional() {
        // the vacuum and c_1 chi_{-1}
        let keys: Vec<Key> = enumerate_ghosts(2)
            .into_iter()
            .filter(|(k, lvl)| *lvl == 0 && k.ghost_number() == 0)
            .map(|(k, _)| k)
            .collect();
        assert_eq!(keys.len(), 2);
        assert!(keys.contains(&Key::vacuum()));
        assert!(keys.contains(&Key {
            c: vec![1],
            chi: vec![-1],
            ..Key::default()
        }));
    }

    #[test]
    fn diagonal_sector_base_weight_is_minus_lambda() {
        for lambda in 0..3 {
            let s = symbolic_sector(lambda, lambda, lambda, lambda, 2);
            assert_eq!(s.base_weight(), ExactScalar::from_int(-lambda));
        }
    }

    #[test]
    fn basis_respects_the_window() {
        let s = symbolic_sector(1, 1, 1, 1, 3);
        let basis = s.basis(-1, 2);
        assert!(!basis.is_empty());
        for k in &basis {
            assert!(k.level() >= -1 && k.level() <= 2);
        }
        // windows are increasing
        let wider = s.basis(-1, 3);
        assert!(wider.len() > basis.len());
        for k in &basis {
            assert!(wider.contains(k));
        }
    }
}
