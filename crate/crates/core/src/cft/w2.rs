//! The W2 structure on a Virasoro-Heisenberg pair, and the one-boson free
//! field realization used to pin down weights and central terms.

use super::modes::{coupled_l, sugawara, Op, PMode};
use super::space::{scale_state, single, state_is_zero, sub_states, Key, Sector};
use super::virasoro::Partition;
use crate::scalar::ExactScalar;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Single free boson with bracket [b_n, b_m] = 2 kappa n delta and a linear
/// improvement term, realizing a Virasoro algebra of central charge
/// 13 - 6(kappa + 1/kappa) on the charge-lambda Fock space.
pub struct FreeFieldVirasoro {
    pub kappa: ExactScalar,
    pub charge: ExactScalar,
}

pub type FockState = BTreeMap<Partition, ExactScalar>;

fn add_term(state: &mut FockState, part: Partition, coeff: ExactScalar) {
    if coeff.is_zero() {
        return;
    }
    let slot = state.entry(part).or_insert_with(ExactScalar::zero);
    *slot = slot.clone() + coeff;
    if state.values().any(|v| v.is_zero()) {
        state.retain(|_, v| !v.is_zero());
    }
}

impl FreeFieldVirasoro {
    pub fn vacuum() -> FockState {
        let mut s = FockState::new();
        s.insert(Vec::new(), ExactScalar::from_int(1));
        s
    }

    /// One Heisenberg mode.
    pub fn boson(&self, n: i64, state: &FockState) -> FockState {
        let mut out = FockState::new();
        for (part, coeff) in state {
            if n == 0 {
                add_term(&mut out, part.clone(), coeff.clone() * self.charge.clone());
            } else if n < 0 {
                let mut p = part.clone();
                let pos = p.partition_point(|&q| q as i64 >= -n);
                p.insert(pos, (-n) as u32);
                add_term(&mut out, p, coeff.clone());
            } else {
                let mult = part.iter().filter(|&&q| q as i64 == n).count() as i64;
                if mult == 0 {
                    continue;
                }
                let mut p = part.clone();
                let pos = p.iter().position(|&q| q as i64 == n).unwrap();
                p.remove(pos);
                add_term(
                    &mut out,
                    p,
                    coeff.clone()
                        * ExactScalar::from_int(2)
                        * self.kappa.clone()
                        * ExactScalar::from_int(mult * n),
                );
            }
        }
        out
    }

    /// Virasoro mode: the Sugawara bilinear over 4 kappa, shifted by the
    /// linear term -((kappa - 1)/(2 kappa)) (n + 1) b_n.
    pub fn l_mode(&self, n: i64, state: &FockState, window: i64) -> FockState {
        let quarter = (ExactScalar::from_int(4) * self.kappa.clone()).inv();
        let mut out = FockState::new();
        for m in -window..=window {
            let k = n - m;
            if k.abs() > window || m > k {
                continue;
            }
            let weight = if m == k {
                quarter.clone()
            } else {
                ExactScalar::from_int(2) * quarter.clone()
            };
            // creator (more negative index) on the left, so applied last
            let inner = self.boson(m.max(k), state);
            let outer = self.boson(m.min(k), &inner);
            for (p, v) in outer {
                add_term(&mut out, p, v * weight.clone());
            }
        }
        let slope = (self.kappa.clone() - ExactScalar::from_int(1))
            * (ExactScalar::from_int(2) * self.kappa.clone()).inv();
        let linear = self.boson(n, state);
        for (p, v) in linear {
            add_term(&mut out, p, -v * slope.clone() * ExactScalar::from_int(n + 1));
        }
        out
    }
}

/// Decoupled Virasoro mode: the coupled generator minus the Heisenberg
/// bilinear, computed as honest operator arithmetic so a wrong subtraction
/// coefficient shows up in the brackets.
pub fn decoupled_l(n: i64, hol: bool, sector: &Sector, window: i64) -> Op {
    let minus_one = ExactScalar::from_int(-1);
    coupled_l(n, hol, sector, window).plus(sugawara(n, hol, sector, window).scaled(&minus_one))
}

fn heisenberg(n: i64, hol: bool) -> Op {
    Op(vec![(
        ExactScalar::from_int(1),
        vec![if hol { PMode::FockH(n) } else { PMode::FockA(n) }],
    )])
}

/// Check that the coupled generator acts on the Heisenberg current with
/// weight one, [L_n, a_m] = -m a_{n+m}, and that subtracting the bilinear
/// with the stated normalization makes the remainder commute with every
/// a_m, while the doubled subtraction does not.
pub fn w2_decouple_check(sector: &Sector, range: i64) -> Result<(), String> {
    let window = 2 * sector.max_level as i64 + 2 * range + 2;
    let probes: Vec<Key> = sector
        .basis(-1, (sector.max_level as i64 - range).max(1))
        .into_iter()
        .filter(|k| k.b.is_empty() && k.c.is_empty() && k.psi.is_empty() && k.chi.is_empty())
        .collect();
    if probes.is_empty() {
        return Err("no probe states in the window".into());
    }
    for hol in [true, false] {
        for n in -range..=range {
            let coupled = coupled_l(n, hol, sector, window);
            let dec = decoupled_l(n, hol, sector, window);
            let doubled = coupled_l(n, hol, sector, window).plus(
                sugawara(n, hol, sector, window).scaled(&ExactScalar::from_int(-2)),
            );
            for m in -range..=range {
                if m == 0 {
                    continue;
                }
                let am = heisenberg(m, hol);
                let mut doubled_failed_somewhere = false;
                for key in &probes {
                    let st = single(key.clone());
                    let got = coupled.commutator_on(&am, &st, sector);
                    let want = scale_state(
                        &heisenberg(n + m, hol).apply(&st, sector),
                        &ExactScalar::from_int(-m),
                    );
                    if got != want {
                        return Err(format!(
                            "[L_{}, a_{}] is not -{} a_{} in the {} sector",
                            n,
                            m,
                            m,
                            n + m,
                            if hol { "plain" } else { "barred" }
                        ));
                    }
                    let resid = dec.commutator_on(&am, &st, sector);
                    if !state_is_zero(&resid) {
                        return Err(format!(
                            "decoupled generator fails to commute with a_{} at n = {}",
                            m, n
                        ));
                    }
                    if !state_is_zero(&doubled.commutator_on(&am, &st, sector)) {
                        doubled_failed_somewhere = true;
                    }
                }
                if !doubled_failed_somewhere {
                    return Err(format!(
                        "doubling the bilinear subtraction still commutes at n = {}, m = {}; \
                         the check has no teeth",
                        n, m
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Central charge read off from ([L_2, L_-2] - 4 L_0) acting on the ground
/// state: the result is (c/2) times the state.
pub fn central_charge_of(l: &dyn Fn(i64) -> Op, sector: &Sector, ground: &Key) -> ExactScalar {
    let st = single(ground.clone());
    let bracket = l(2).commutator_on(&l(-2), &st, sector);
    let l0 = l(0).apply(&st, sector);
    let shifted = sub_states(&bracket, &scale_state(&l0, &ExactScalar::from_int(4)));
    let coeff = shifted
        .get(ground)
        .cloned()
        .unwrap_or_else(ExactScalar::zero);
    assert_eq!(shifted.len(), usize::from(!coeff.is_zero()));
    coeff * ExactScalar::from_int(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cft::virasoro::{c_hat, delta};
    use crate::scalar::poly::{VETA, VKAPPA, VT};

    fn ff(charge: ExactScalar) -> FreeFieldVirasoro {
        FreeFieldVirasoro {
            kappa: ExactScalar::var(VKAPPA),
            charge,
        }
    }

    #[test]
    fn free_field_ground_state_weight_matches_the_kac_label() {
        for lambda in 0..4 {
            let f = ff(ExactScalar::from_int(lambda));
            let got = f.l_mode(0, &FreeFieldVirasoro::vacuum(), 6);
            let want = delta(lambda, &ExactScalar::var(VKAPPA));
            if lambda == 0 {
                assert!(got.is_empty());
            } else {
                assert_eq!(got.len(), 1);
                assert_eq!(got[&Vec::new()], want);
            }
        }
    }

    #[test]
    fn free_field_bracket_reproduces_the_central_charge() {
        // [L_2, L_-2] 1 = (4 L_0 + c/2) 1 with symbolic kappa and charge
        let f = ff(ExactScalar::var(VT));
        let vac = FreeFieldVirasoro::vacuum();
        let w = 8;
        let up = f.l_mode(-2, &vac, w);
        let lhs = f.l_mode(2, &up, w);
        let down = f.l_mode(2, &vac, w);
        assert!(down.is_empty());
        let l0 = f.l_mode(0, &vac, w);
        let four_l0 = l0[&Vec::new()].clone() * ExactScalar::from_int(4);
        let central = c_hat(&ExactScalar::var(VKAPPA));
        let want = four_l0 + central * ExactScalar::ratio(1, 2);
        assert_eq!(lhs[&Vec::new()], want);
        assert_eq!(lhs.len(), 1);
    }

    #[test]
    fn free_field_virasoro_bracket_on_excited_states() {
        // [L_1, L_-1] = 2 L_0 on the level-one state b_{-1} 1
        let f = ff(ExactScalar::var(VT));
        let state = f.boson(-1, &FreeFieldVirasoro::vacuum());
        let w = 8;
        let ab = f.l_mode(1, &f.l_mode(-1, &state, w), w);
        let ba = f.l_mode(-1, &f.l_mode(1, &state, w), w);
        let mut bracket = ab;
        for (p, v) in ba {
            add_term(&mut bracket, p, -v);
        }
        let mut two_l0 = f.l_mode(0, &state, w);
        for (_, v) in two_l0.iter_mut() {
            *v = v.clone() * ExactScalar::from_int(2);
        }
        assert_eq!(bracket, two_l0);
    }

    fn symbolic_sector(max: u32) -> Sector {
        Sector::new(
            ExactScalar::var(VKAPPA),
            ExactScalar::var(VETA),
            1,
            1,
            1,
            1,
            max,
        )
    }

    #[test]
    fn heisenberg_current_decouples_with_the_stated_normalization() {
        let s = symbolic_sector(3);
        w2_decouple_check(&s, 2).unwrap();
    }

    #[test]
    fn raising_the_heisenberg_vacuum_mode_by_one_unit() {
        // [L_1, a_{-1}] = a_0 read on the vacuum: L_1 a_{-1} vac = l vac
        let s = symbolic_sector(3);
        let l1 = coupled_l(1, true, &s, 10);
        let am1 = heisenberg(-1, true);
        let got = l1.commutator_on(&am1, &single(Key::vacuum()), &s);
        let want = heisenberg(0, true).apply(&single(Key::vacuum()), &s);
        assert_eq!(got, want);
        assert_eq!(
            got.get(&Key::vacuum()).cloned().unwrap(),
            ExactScalar::from_int(1)
        );
    }

    #[test]
    fn coupled_and_decoupled_central_charges_differ_by_one() {
        let s = symbolic_sector(3);
        let kappa = ExactScalar::var(VKAPPA);
        let coupled = central_charge_of(&|n| coupled_l(n, true, &s, 12), &s, &Key::vacuum());
        assert_eq!(coupled, c_hat(&kappa) + ExactScalar::from_int(1));
        let dec = central_charge_of(&|n| decoupled_l(n, true, &s, 12), &s, &Key::vacuum());
        assert_eq!(dec, c_hat(&kappa));
        // barred side at the reflected parameter
        let barred = central_charge_of(&|n| coupled_l(n, false, &s, 12), &s, &Key::vacuum());
        assert_eq!(barred, c_hat(&(-kappa)) + ExactScalar::from_int(1));
    }
}
