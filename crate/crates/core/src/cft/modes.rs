//! Mode actions on sector states and composite operators built from them.
//!
//! An operator is a scalar combination of words in primitive modes. Words
//! act right to left. All four ghost families mutually anticommute; normal
//! ordering puts creators left of annihilators and drops contractions.

use super::space::{add_to, normalize, single, Key, Sector, State};
use crate::scalar::ExactScalar;

/// Primitive mode of one factor. VirH/VirA are the Virasoro generators of
/// the plain and barred factor; FockH/FockA the Heisenberg modes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PMode {
    VirH(i64),
    VirA(i64),
    FockH(i64),
    FockA(i64),
    B(i64),
    C(i64),
    Psi(i64),
    Chi(i64),
}

use PMode::*;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GFam {
    B,
    C,
    Psi,
    Chi,
}

impl GFam {
    pub fn creator(self, n: i64) -> bool {
        match self {
            GFam::B => n <= -2,
            GFam::C => n <= 1,
            GFam::Psi => n <= 0,
            GFam::Chi => n <= -1,
        }
    }

    fn partner(self) -> GFam {
        match self {
            GFam::B => GFam::C,
            GFam::C => GFam::B,
            GFam::Psi => GFam::Chi,
            GFam::Chi => GFam::Psi,
        }
    }

}

fn ghost_list(key: &Key, fam: GFam) -> &Vec<i64> {
    match fam {
        GFam::B => &key.b,
        GFam::C => &key.c,
        GFam::Psi => &key.psi,
        GFam::Chi => &key.chi,
    }
}

fn ghost_list_mut(key: &mut Key, fam: GFam) -> &mut Vec<i64> {
    match fam {
        GFam::B => &mut key.b,
        GFam::C => &mut key.c,
        GFam::Psi => &mut key.psi,
        GFam::Chi => &mut key.chi,
    }
}

/// Number of ghost modes stored in families strictly before `fam` in the
/// canonical word order.
fn modes_before(key: &Key, fam: GFam) -> usize {
    [GFam::B, GFam::C, GFam::Psi, GFam::Chi]
        .into_iter()
        .take_while(|f| *f != fam)
        .map(|f| ghost_list(key, f).len())
        .sum()
}

fn sign_of(parity: usize) -> ExactScalar {
    if parity % 2 == 0 {
        ExactScalar::from_int(1)
    } else {
        ExactScalar::from_int(-1)
    }
}

/// Apply one ghost mode to a basis key.
fn ghost_mode(fam: GFam, n: i64, key: &Key, out: &mut State, coeff: &ExactScalar) {
    if fam.creator(n) {
        let list = ghost_list(key, fam);
        if list.contains(&n) {
            return;
        }
        let pos = list.partition_point(|&k| k < n);
        let parity = modes_before(key, fam) + pos;
        let mut new = key.clone();
        ghost_list_mut(&mut new, fam).insert(pos, n);
        add_to(out, new, coeff.clone() * sign_of(parity));
    } else {
        // annihilator: contract against the partner creator at -n
        let partner = fam.partner();
        let list = ghost_list(key, partner);
        match list.binary_search(&(-n)) {
            Err(_) => (),
            Ok(pos) => {
                let parity = modes_before(key, partner) + pos;
                let mut new = key.clone();
                ghost_list_mut(&mut new, partner).remove(pos);
                add_to(out, new, coeff.clone() * sign_of(parity));
            }
        }
    }
}

/// Apply one Heisenberg mode. `norm` is the bracket scale: [a_n, a_-n] is
/// norm * n. `charge` is the zero-mode eigenvalue.
fn fock_mode(
    n: i64,
    key: &Key,
    hol: bool,
    sector: &Sector,
    out: &mut State,
    coeff: &ExactScalar,
) {
    let (norm, charge) = if hol {
        (
            ExactScalar::from_int(2) * sector.eta.clone(),
            ExactScalar::from_int(sector.l),
        )
    } else {
        (
            ExactScalar::from_int(2) * sector.eta_bar.clone(),
            ExactScalar::from_int(-sector.m),
        )
    };
    let part = if hol { &key.fock } else { &key.fbar };
    if n == 0 {
        add_to(out, key.clone(), coeff.clone() * charge);
    } else if n < 0 {
        let mut p = part.clone();
        let pos = p.partition_point(|&q| q as i64 >= -n);
        p.insert(pos, (-n) as u32);
        let mut new = key.clone();
        if hol {
            new.fock = p;
        } else {
            new.fbar = p;
        }
        add_to(out, new, coeff.clone());
    } else {
        let mult = part.iter().filter(|&&q| q as i64 == n).count() as i64;
        if mult == 0 {
            return;
        }
        let mut p = part.clone();
        let pos = p.iter().position(|&q| q as i64 == n).unwrap();
        p.remove(pos);
        let mut new = key.clone();
        if hol {
            new.fock = p;
        } else {
            new.fbar = p;
        }
        add_to(
            out,
            new,
            coeff.clone() * norm * ExactScalar::from_int(mult * n),
        );
    }
}

/// Apply one Virasoro mode of the plain or barred factor, dropping terms
/// that leave the tracked level window of the module.
fn vir_mode(n: i64, key: &Key, hol: bool, sector: &Sector, out: &mut State, coeff: &ExactScalar) {
    let module = if hol { &sector.vir } else { &sector.vbar };
    let part = if hol { &key.vir } else { &key.vbar };
    let level: u32 = part.iter().sum();
    if (level as i64 - n) > sector.max_level as i64 {
        return;
    }
    let mut st = std::collections::BTreeMap::new();
    st.insert(part.clone(), ExactScalar::from_int(1));
    let image = module.reduce(&module.mode(n, &st));
    for (p, v) in image {
        let mut new = key.clone();
        if hol {
            new.vir = p;
        } else {
            new.vbar = p;
        }
        add_to(out, new, coeff.clone() * v);
    }
}

pub fn apply_mode(mode: PMode, state: &State, sector: &Sector) -> State {
    let mut out = State::new();
    for (key, coeff) in state {
        match mode {
            VirH(n) => vir_mode(n, key, true, sector, &mut out, coeff),
            VirA(n) => vir_mode(n, key, false, sector, &mut out, coeff),
            FockH(n) => fock_mode(n, key, true, sector, &mut out, coeff),
            FockA(n) => fock_mode(n, key, false, sector, &mut out, coeff),
            B(n) => ghost_mode(GFam::B, n, key, &mut out, coeff),
            C(n) => ghost_mode(GFam::C, n, key, &mut out, coeff),
            Psi(n) => ghost_mode(GFam::Psi, n, key, &mut out, coeff),
            Chi(n) => ghost_mode(GFam::Chi, n, key, &mut out, coeff),
        }
    }
    normalize(&mut out);
    out
}

/// Scalar combination of mode words; words act right to left.
#[derive(Clone, Debug, Default)]
pub struct Op(pub Vec<(ExactScalar, Vec<PMode>)>);

impl Op {
    pub fn apply(&self, state: &State, sector: &Sector) -> State {
        let mut out = State::new();
        for (coeff, word) in &self.0 {
            let mut cur = state.clone();
            for mode in word.iter().rev() {
                if cur.is_empty() {
                    break;
                }
                cur = apply_mode(*mode, &cur, sector);
            }
            for (k, v) in cur {
                add_to(&mut out, k, v * coeff.clone());
            }
        }
        normalize(&mut out);
        out
    }

    pub fn apply_key(&self, key: &Key, sector: &Sector) -> State {
        self.apply(&single(key.clone()), sector)
    }

    pub fn add(&mut self, coeff: ExactScalar, word: Vec<PMode>) {
        if !coeff.is_zero() {
            self.0.push((coeff, word));
        }
    }

    pub fn plus(mut self, other: Op) -> Op {
        self.0.extend(other.0);
        self
    }

    pub fn scaled(mut self, f: &ExactScalar) -> Op {
        for (c, _) in &mut self.0 {
            *c = c.clone() * f.clone();
        }
        self
    }

    /// Commutator [A, B] applied to a state.
    pub fn commutator_on(&self, other: &Op, state: &State, sector: &Sector) -> State {
        let ab = other.apply(state, sector);
        let ab = self.apply(&ab, sector);
        let ba = self.apply(state, sector);
        let ba = other.apply(&ba, sector);
        super::space::sub_states(&ab, &ba)
    }

    /// Anticommutator {A, B} applied to a state.
    pub fn anticommutator_on(&self, other: &Op, state: &State, sector: &Sector) -> State {
        let ab = other.apply(state, sector);
        let ab = self.apply(&ab, sector);
        let ba = self.apply(state, sector);
        let ba = other.apply(&ba, sector);
        let mut out = ab;
        for (k, v) in ba {
            add_to(&mut out, k, v);
        }
        normalize(&mut out);
        out
    }
}

fn mode_fam(m: PMode) -> Option<(GFam, i64)> {
    match m {
        B(n) => Some((GFam::B, n)),
        C(n) => Some((GFam::C, n)),
        Psi(n) => Some((GFam::Psi, n)),
        Chi(n) => Some((GFam::Chi, n)),
        _ => None,
    }
}

/// Normal order a word of ghost modes: creators move left of annihilators
/// (stable within each class), contractions are dropped, and the sign is
/// the parity of the rearrangement. Repeated modes act as zero anyway, so
/// they are passed through unchanged.
pub fn normal_order_ghosts(word: &[PMode]) -> (ExactScalar, Vec<PMode>) {
    let fams: Vec<(GFam, i64)> = word.iter().map(|&m| mode_fam(m).unwrap()).collect();
    let mut tagged: Vec<(bool, usize)> = fams
        .iter()
        .enumerate()
        .map(|(i, &(f, n))| (f.creator(n), i))
        .collect();
    // stable partition by creator flag, counting inversions
    let mut swaps = 0usize;
    let mut i = 0;
    while i < tagged.len() {
        if !tagged[i].0 {
            // find next creator after an annihilator block and bubble it left
            let mut j = i + 1;
            while j < tagged.len() && !tagged[j].0 {
                j += 1;
            }
            if j == tagged.len() {
                break;
            }
            let item = tagged.remove(j);
            tagged.insert(i, item);
            swaps += j - i;
        }
        i += 1;
    }
    let ordered: Vec<PMode> = tagged.iter().map(|&(_, idx)| word[idx]).collect();
    (sign_of(swaps), ordered)
}

/// Append a normally ordered ghost word to an operator.
pub fn push_no_ghosts(op: &mut Op, coeff: ExactScalar, word: Vec<PMode>) {
    if coeff.is_zero() {
        return;
    }
    let (sign, ordered) = normal_order_ghosts(&word);
    op.add(coeff * sign, ordered);
}

/// Quadratic Heisenberg piece of the coupled Virasoro generator:
/// (1/4 eta) * sum over m of :a_m a_{n-m}: with |m| bounded by the window.
pub fn sugawara(n: i64, hol: bool, sector: &Sector, window: i64) -> Op {
    let mut op = Op::default();
    let eta = if hol {
        sector.eta.clone()
    } else {
        sector.eta_bar.clone()
    };
    let quarter = (ExactScalar::from_int(4) * eta).inv();
    let wrap = |k: i64| if hol { FockH(k) } else { FockA(k) };
    for m in -window..=window {
        let k = n - m;
        if k.abs() > window {
            continue;
        }
        // count each unordered pair once with the creator on the left
        if m > k {
            continue;
        }
        let weight = if m == k {
            quarter.clone()
        } else {
            ExactScalar::from_int(2) * quarter.clone()
        };
        op.add(weight, vec![wrap(m.min(k)), wrap(m.max(k))]);
    }
    op
}

/// Coupled Virasoro generator of one chirality: the plain Virasoro mode
/// plus the Sugawara bilinear of the Heisenberg factor.
pub fn coupled_l(n: i64, hol: bool, sector: &Sector, window: i64) -> Op {
    let mut op = sugawara(n, hol, sector, window);
    op.add(
        ExactScalar::from_int(1),
        vec![if hol { VirH(n) } else { VirA(n) }],
    );
    op
}

/// Ghost Virasoro generator: sum (2n-m) :b_m c_{n-m}: + sum (-m) :psi_m chi_{n-m}:.
pub fn ghost_virasoro(n: i64, window: i64) -> Op {
    let mut op = Op::default();
    let w = window + 2;
    for m in -w..=w {
        let k = n - m;
        if k.abs() > w {
            continue;
        }
        push_no_ghosts(&mut op, ExactScalar::from_int(2 * n - m), vec![B(m), C(k)]);
        push_no_ghosts(&mut op, ExactScalar::from_int(-m), vec![Psi(m), Chi(k)]);
    }
    op
}

/// Ghost number operator: sum :c_m b_{-m}: + :psi_m chi_{-m}:.
pub fn ghost_number_op(window: i64) -> Op {
    let mut op = Op::default();
    let w = window + 2;
    for m in -w..=w {
        push_no_ghosts(&mut op, ExactScalar::from_int(1), vec![C(m), B(-m)]);
        push_no_ghosts(&mut op, ExactScalar::from_int(1), vec![Psi(m), Chi(-m)]);
    }
    op
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cft::space::scale_state;
    use crate::scalar::poly::{VETA, VKAPPA};
    use crate::scalar::ExactScalar;
    use num_traits::Zero;

    fn sector(lambda: i64, l: i64, mu: i64, m: i64, max: u32) -> Sector {
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

    fn vac() -> State {
        single(Key::vacuum())
    }

    fn coeff_of(state: &State, key: &Key) -> ExactScalar {
        state.get(key).cloned().unwrap_or_else(ExactScalar::zero)
    }

    #[test]
    fn heisenberg_bracket_has_norm_two_eta() {
        let s = sector(0, 0, 0, 0, 4);
        let up = apply_mode(FockH(-3), &vac(), &s);
        let down = apply_mode(FockH(3), &up, &s);
        let expect = ExactScalar::from_int(6) * ExactScalar::var(VETA);
        assert_eq!(coeff_of(&down, &Key::vacuum()), expect);
        // barred factor carries the opposite norm
        let up = apply_mode(FockA(-3), &vac(), &s);
        let down = apply_mode(FockA(3), &up, &s);
        assert_eq!(coeff_of(&down, &Key::vacuum()), -expect);
    }

    #[test]
    fn fock_zero_modes_read_the_charges() {
        let s = sector(1, 2, 1, 5, 2);
        let h = apply_mode(FockH(0), &vac(), &s);
        assert_eq!(coeff_of(&h, &Key::vacuum()), ExactScalar::from_int(2));
        let a = apply_mode(FockA(0), &vac(), &s);
        assert_eq!(coeff_of(&a, &Key::vacuum()), ExactScalar::from_int(-5));
    }

    #[test]
    fn ghost_vacuum_annihilators_match_the_mode_ranges() {
        let s = sector(0, 0, 0, 0, 2);
        for (fam, lo) in [(GFam::B, -1), (GFam::C, 2), (GFam::Psi, 1), (GFam::Chi, 0)] {
            for n in lo..lo + 3 {
                let mut out = State::new();
                ghost_mode(fam, n, &Key::vacuum(), &mut out, &ExactScalar::from_int(1));
                assert!(out.is_empty(), "{:?}_{} should kill the vacuum", fam, n);
            }
        }
        let _ = s;
    }

    #[test]
    fn ghost_anticommutators_are_canonical() {
        // {c_2, b_{-2}} = 1 on the vacuum and on an unrelated excited state
        let s = sector(0, 0, 0, 0, 3);
        for base in [
            Key::vacuum(),
            Key {
                psi: vec![-1],
                chi: vec![-2],
                ..Key::default()
            },
        ] {
            let st = single(base.clone());
            let cb = apply_mode(C(2), &apply_mode(B(-2), &st, &s), &s);
            let bc = apply_mode(B(-2), &apply_mode(C(2), &st, &s), &s);
            let mut sum = cb.clone();
            for (k, v) in bc {
                add_to(&mut sum, k, v);
            }
            normalize(&mut sum);
            assert_eq!(coeff_of(&sum, &base), ExactScalar::from_int(1));
            assert_eq!(sum.len(), 1);
        }
    }

    #[test]
    fn distinct_ghost_families_anticommute() {
        let s = sector(0, 0, 0, 0, 3);
        let st = vac();
        let pc = apply_mode(Psi(-1), &apply_mode(C(0), &st, &s), &s);
        let cp = apply_mode(C(0), &apply_mode(Psi(-1), &st, &s), &s);
        let mut sum = pc;
        for (k, v) in cp {
            add_to(&mut sum, k, v);
        }
        normalize(&mut sum);
        assert!(sum.is_empty());
    }

    #[test]
    fn coupled_virasoro_brackets_close_on_the_heisenberg_modes() {
        // [L_n, a_m] = -m a_{n+m} on assorted states
        let s = sector(1, 1, 1, 1, 4);
        let probe = Key {
            fock: vec![2],
            ..Key::default()
        };
        for n in [-2i64, -1, 0, 1, 2] {
            for m in [-2i64, -1, 1, 2] {
                let ln = coupled_l(n, true, &s, 8);
                let am = Op(vec![(ExactScalar::from_int(1), vec![FockH(m)])]);
                let got = ln.commutator_on(&am, &single(probe.clone()), &s);
                let want = scale_state(
                    &apply_mode(FockH(n + m), &single(probe.clone()), &s),
                    &ExactScalar::from_int(-m),
                );
                assert_eq!(
                    got, want,
                    "[L_{}, a_{}] mismatch on level-2 probe state",
                    n, m
                );
            }
        }
    }

    #[test]
    fn ghost_virasoro_weights_match_the_expansions() {
        let s = sector(0, 0, 0, 0, 3);
        let l0 = ghost_virasoro(0, 4);
        // c_1 vacuum has weight -1
        let c1 = Key {
            c: vec![1],
            ..Key::default()
        };
        let got = l0.apply_key(&c1, &s);
        assert_eq!(coeff_of(&got, &c1), ExactScalar::from_int(-1));
        assert_eq!(got.len(), 1);
        // psi_0 vacuum has weight 0
        let p0 = Key {
            psi: vec![0],
            ..Key::default()
        };
        assert!(l0.apply_key(&p0, &s).is_empty());
        // chi_{-1} vacuum has weight 1
        let x1 = Key {
            chi: vec![-1],
            ..Key::default()
        };
        let got = l0.apply_key(&x1, &s);
        assert_eq!(coeff_of(&got, &x1), ExactScalar::from_int(1));
        // b_{-2} vacuum has weight 2
        let b2 = Key {
            b: vec![-2],
            ..Key::default()
        };
        let got = l0.apply_key(&b2, &s);
        assert_eq!(coeff_of(&got, &b2), ExactScalar::from_int(2));
    }

    #[test]
    fn ghost_virasoro_central_term_is_minus_twenty_eight() {
        // [L2, L-2] vac = 4 L0 vac + (c/2) vac with L0 vac = 0
        let s = sector(0, 0, 0, 0, 4);
        let l2 = ghost_virasoro(2, 6);
        let lm2 = ghost_virasoro(-2, 6);
        let got = l2.commutator_on(&lm2, &vac(), &s);
        assert_eq!(coeff_of(&got, &Key::vacuum()), ExactScalar::from_int(-14));
        assert_eq!(got.len(), 1);
    }

    #[test]
    fn ghost_number_grades_the_word_length() {
        let s = sector(0, 0, 0, 0, 3);
        let ng = ghost_number_op(4);
        assert!(ng.apply(&vac(), &s).is_empty());
        let key = Key {
            b: vec![-2],
            c: vec![0, 1],
            psi: vec![-1],
            chi: vec![-3],
            ..Key::default()
        };
        let got = ng.apply_key(&key, &s);
        assert_eq!(
            coeff_of(&got, &key),
            ExactScalar::from_int(key.ghost_number())
        );
        assert_eq!(got.len(), 1);
    }

    #[test]
    fn normal_ordering_moves_creators_left_with_signs() {
        // b_1 is an annihilator, b_{-3} a creator: :b_1 b_{-3}: = -b_{-3} b_1
        let (sign, word) = normal_order_ghosts(&[B(1), B(-3)]);
        assert_eq!(sign, ExactScalar::from_int(-1));
        assert_eq!(word, vec![B(-3), B(1)]);
        // already ordered words pass through
        let (sign, word) = normal_order_ghosts(&[C(-1), B(0)]);
        assert_eq!(sign, ExactScalar::from_int(1));
        assert_eq!(word, vec![C(-1), B(0)]);
    }

    #[test]
    fn sugawara_zero_mode_reads_charge_squared_over_four_eta() {
        let s = sector(0, 3, 0, 0, 3);
        let sug = sugawara(0, true, &s, 6);
        let got = sug.apply(&vac(), &s);
        let want = ExactScalar::from_int(9)
            * (ExactScalar::from_int(4) * ExactScalar::var(VETA)).inv();
        assert_eq!(coeff_of(&got, &Key::vacuum()), want);
    }
}
