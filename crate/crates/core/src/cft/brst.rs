//! The BRST differential on a pair of W2 sectors, its relative cohomology,
//! and the similarity transform that splits it into a direct sum.

use super::modes::{
    coupled_l, ghost_virasoro, push_no_ghosts, Op,
    PMode::{self, *},
};
use super::space::{add_to, normalize, scale_state, single, state_is_zero, Key, Sector, State};
use super::virasoro::{c_hat, VirasoroModule};
use super::w2::decoupled_l;
use crate::linalg::Matrix;
use crate::scalar::ExactScalar;
use crate::QRat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn one() -> ExactScalar {
    ExactScalar::from_int(1)
}

/// Total matter Virasoro mode, both chiralities coupled.
pub fn total_l(n: i64, sector: &Sector, window: i64) -> Op {
    coupled_l(n, true, sector, window).plus(coupled_l(n, false, sector, window))
}

fn a_plus(n: i64) -> Op {
    Op(vec![(one(), vec![FockH(n)]), (one(), vec![FockA(n)])])
}

fn a_minus(n: i64) -> Op {
    Op(vec![(one(), vec![FockH(n)]), (-one(), vec![FockA(n)])])
}

fn mode_window(sector: &Sector) -> i64 {
    sector.max_level as i64 + 2
}

/// Zero mode of the BRST current. The total-derivative improvement term
/// has no zero mode, so it is absent here; its coefficient matters only
/// through the ghost self-coupling weights.
pub fn brst_q(sector: &Sector) -> Op {
    let w = mode_window(sector);
    let mut q = Op::default();
    // c T_matter
    for n in -w..=w {
        for (coeff, word) in total_l(-n, sector, w).0 {
            let mut full = vec![C(n)];
            full.extend(word);
            q.add(coeff, full);
        }
    }
    // ghost self-coupling of the diffeomorphism ghosts
    for n in -w..=w {
        for k in -w..=w {
            let m = -n - k;
            if m.abs() > w {
                continue;
            }
            push_no_ghosts(&mut q, ExactScalar::from_int(1 - k), vec![C(n), C(k), B(m)]);
        }
    }
    // weight-zero ghost coupled to the null current
    for m in -w..=w {
        for (coeff, word) in a_plus(-m).0 {
            let mut full = vec![Psi(m)];
            full.extend(word);
            q.add(coeff, full);
        }
    }
    // c against the weight ghost Virasoro
    for n in -w..=w {
        for k in -w..=w {
            let m = -n - k;
            if m.abs() > w {
                continue;
            }
            push_no_ghosts(&mut q, ExactScalar::from_int(-k), vec![C(n), Psi(k), Chi(m)]);
        }
    }
    q
}

/// Total L0 including the ghost contribution.
pub fn l0_total(sector: &Sector) -> Op {
    let w = mode_window(sector);
    total_l(0, sector, w).plus(ghost_virasoro(0, w))
}

/// Total Heisenberg zero mode (the conserved charge).
pub fn a0_total() -> Op {
    a_plus(0)
}

/// Zero mode of the screening density c a^- chi over 4 eta. Its BRST
/// anticommutator plays the role the antighost zero mode plays for the
/// ordinary relative condition, and the same operator generates the
/// splitting similarity transform.
pub fn screening_zero_mode(sector: &Sector) -> Op {
    let w = mode_window(sector) + 2;
    let quarter = (ExactScalar::from_int(4) * sector.eta.clone()).inv();
    let mut op = Op::default();
    for n in -w..=w {
        for k in -w..=w {
            let m = -n - k;
            if m.abs() > w {
                continue;
            }
            for (coeff, aw) in a_minus(k).0 {
                let mut word = vec![C(n)];
                word.extend(aw);
                word.push(Chi(m));
                op.add(coeff * quarter.clone(), word);
            }
        }
    }
    op
}

/// First basis vector in the window on which Q fails to square to zero,
/// together with the residual state.
pub fn q_squared_witness(sector: &Sector, lo: i64, hi: i64) -> Option<(Key, State)> {
    let q = brst_q(sector);
    for key in sector.basis(lo, hi) {
        let once = q.apply_key(&key, sector);
        let twice = q.apply(&once, sector);
        if !state_is_zero(&twice) {
            return Some((key, twice));
        }
    }
    None
}

/// Verma-based sector whose total central charge is shifted away from the
/// critical value by `defect`, with symbolic highest weights. `eta_shift`
/// moves the barred deformation parameter off the pairing locus.
pub fn probe_sector(defect: i64, eta_shift: i64, max_level: u32) -> Sector {
    use crate::scalar::poly::{VETA, VKAPPA, VP, VU};
    let kappa = ExactScalar::var(VKAPPA);
    let eta = ExactScalar::var(VETA);
    let c_vir = c_hat(&kappa);
    let c_vbar = ExactScalar::from_int(26 + defect) - c_vir.clone();
    let vir = VirasoroModule::verma(ExactScalar::var(VP), c_vir, max_level);
    let vbar = VirasoroModule::verma(ExactScalar::var(VU), c_vbar, max_level);
    let eta_bar = ExactScalar::from_int(eta_shift) - eta.clone();
    Sector::custom(vir, vbar, eta, eta_bar, 1, 0, max_level)
}

fn key_index(keys: &[Key]) -> BTreeMap<Key, usize> {
    keys.iter().cloned().zip(0..).collect()
}

/// Matrix of a state map on an explicit basis; panics if the image leaks
/// outside the span, which for the operators used here means a bug.
fn matrix_on<F: Fn(&Key) -> State>(domain: &[Key], codomain: &[Key], f: F) -> Matrix<ExactScalar> {
    let index = key_index(codomain);
    let mut m = Matrix::zeros(codomain.len(), domain.len());
    for (j, key) in domain.iter().enumerate() {
        for (k, v) in f(key) {
            let i = *index
                .get(&k)
                .unwrap_or_else(|| panic!("image leaves the graded slice: {:?}", k));
            m[(i, j)] = v;
        }
    }
    m
}

pub struct CohomologyReport {
    pub rank: usize,
    /// level of the slice the relative complex lives on, if any
    pub level: Option<i64>,
    /// dimensions of the relative complex at ghost numbers -1, 0, 1
    pub dims: [usize; 3],
    pub cut: i64,
}

/// Relative semi-infinite cohomology rank at ghost number zero for the
/// tensor product of the (lambda, l) sector with the barred (mu, m) sector,
/// computed at two independently drawn deformation parameters which must
/// agree.
pub fn cohomology_rank(
    lambda: i64,
    l: i64,
    mu: i64,
    m: i64,
    cut: i64,
    seed: u64,
) -> Result<CohomologyReport, String> {
    let first = cohomology_once(lambda, l, mu, m, cut, seed)?;
    let second = cohomology_once(lambda, l, mu, m, cut, seed.wrapping_add(1))?;
    if first.rank != second.rank || first.level != second.level || first.dims != second.dims {
        return Err("non-generic specialization, rerun".into());
    }
    Ok(first)
}

fn random_rational(rng: &mut ChaCha8Rng) -> ExactScalar {
    let num = rng.gen_range(11..199);
    let den = rng.gen_range(2..23);
    ExactScalar::from_qrat(QRat::new(num.into(), den.into()))
}

fn cohomology_once(
    lambda: i64,
    l: i64,
    mu: i64,
    m: i64,
    cut: i64,
    seed: u64,
) -> Result<CohomologyReport, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kappa = random_rational(&mut rng);
    let eta = random_rational(&mut rng);
    let sector = Sector::new(kappa, eta, lambda, l, mu, m, (cut + 3).max(4) as u32);

    // charge condition: a0 + abar0 is the constant l - m on the sector
    if l != m {
        return Ok(CohomologyReport {
            rank: 0,
            level: None,
            dims: [0; 3],
            cut,
        });
    }
    // weight condition: L0-total is base + level, so the relative complex
    // sits on the slice where the level cancels the base exactly
    let base = sector
        .base_weight()
        .as_qrat()
        .expect("specialized base weight");
    if !base.is_integer() {
        return Ok(CohomologyReport {
            rank: 0,
            level: None,
            dims: [0; 3],
            cut,
        });
    }
    let level = -num_traits::ToPrimitive::to_i64(&base.to_integer()).unwrap();
    if !(-1..=cut).contains(&level) {
        return Ok(CohomologyReport {
            rank: 0,
            level: None,
            dims: [0; 3],
            cut,
        });
    }

    let slice: Vec<Key> = sector.basis(level, level);
    let q = brst_q(&sector);
    let s0 = screening_zero_mode(&sector);
    let t0 = |key: &Key| -> State { q.anticommutator_on(&s0, &single(key.clone()), &sector) };

    // kernel of T0 inside each ghost-number piece
    let mut kernels: BTreeMap<i64, (Vec<Key>, Vec<Vec<ExactScalar>>)> = BTreeMap::new();
    for g in -2..=2 {
        let keys: Vec<Key> = slice
            .iter()
            .filter(|k| k.ghost_number() == g)
            .cloned()
            .collect();
        if keys.is_empty() {
            kernels.insert(g, (keys, Vec::new()));
            continue;
        }
        let t = matrix_on(&keys, &keys, t0);
        let kernel = t.nullspace();
        kernels.insert(g, (keys, kernel));
    }

    // matrix of Q from the ghost-g kernel to the ghost-(g+1) kernel
    let q_between = |g: i64| -> Result<Matrix<ExactScalar>, String> {
        let (dom_keys, dom_kernel) = &kernels[&g];
        let (cod_keys, cod_kernel) = &kernels[&(g + 1)];
        if dom_kernel.is_empty() {
            return Ok(Matrix::zeros(cod_kernel.len(), 0));
        }
        let cod_index = key_index(cod_keys);
        let mut images = Matrix::zeros(cod_keys.len(), dom_kernel.len());
        for (j, vec) in dom_kernel.iter().enumerate() {
            let mut state = State::new();
            for (idx, c) in vec.iter().enumerate() {
                add_to(&mut state, dom_keys[idx].clone(), c.clone());
            }
            let image = q.apply(&state, &sector);
            for (k, v) in image {
                match cod_index.get(&k) {
                    Some(&i) => images[(i, j)] = v,
                    None => return Err(format!("BRST image leaves the slice at {:?}", k)),
                }
            }
        }
        if cod_kernel.is_empty() {
            if !images.is_zero() {
                return Err("BRST image misses the relative complex".into());
            }
            return Ok(Matrix::zeros(0, dom_kernel.len()));
        }
        let span = Matrix::from_fn(cod_keys.len(), cod_kernel.len(), |i, j| {
            cod_kernel[j][i].clone()
        });
        let coords = span
            .solve_matrix(&images)
            .ok_or_else(|| "BRST image misses the relative complex".to_string())?;
        Ok(coords)
    };

    let q_in = q_between(-1)?;
    let q_out = q_between(0)?;
    let dim0 = kernels[&0].1.len();
    let rank = dim0 - q_out.rank() - q_in.rank();
    Ok(CohomologyReport {
        rank,
        level: Some(level),
        dims: [kernels[&-1].1.len(), dim0, kernels[&1].1.len()],
        cut,
    })
}

/// Apply exp(sign * R) as a terminating series; errors if the series fails
/// to terminate within the fuel bound.
pub fn exp_apply(
    r: &Op,
    state: &State,
    sector: &Sector,
    negate: bool,
    fuel: u32,
) -> Result<State, String> {
    let mut acc = state.clone();
    let mut term = state.clone();
    for i in 1..=fuel {
        term = r.apply(&term, sector);
        if negate {
            term = scale_state(&term, &(-one()));
        }
        term = scale_state(&term, &ExactScalar::ratio(1, i as i64));
        if state_is_zero(&term) {
            return Ok(acc);
        }
        for (k, v) in &term {
            add_to(&mut acc, k.clone(), v.clone());
        }
        normalize(&mut acc);
    }
    Err("similarity generator is not nilpotent within the fuel bound".into())
}

/// Conjugated mode a_n -> a_n + [R, a_n] + ... computed exactly.
fn conjugate_state(r: &Op, op: &Op, state: &State, sector: &Sector) -> Result<State, String> {
    let inner = exp_apply(r, state, sector, true, 24)?;
    let mid = op.apply(&inner, sector);
    exp_apply(r, &mid, sector, false, 24)
}

fn op_mul(a: &Op, b: &Op) -> Op {
    let mut out = Op::default();
    for (ca, wa) in &a.0 {
        for (cb, wb) in &b.0 {
            let mut w = wa.clone();
            w.extend(wb.iter().copied());
            out.add(ca.clone() * cb.clone(), w);
        }
    }
    out
}

/// b_m dressed by the screening charge.
fn tilde_b(m: i64, sector: &Sector, w: i64) -> Op {
    let quarter = (ExactScalar::from_int(4) * sector.eta.clone()).inv();
    let mut op = Op(vec![(one(), vec![B(m)])]);
    for j in -w..=w {
        let k = m - j;
        if k.abs() > w {
            continue;
        }
        for (coeff, aw) in a_minus(j).0 {
            let mut word = aw;
            word.push(Chi(k));
            op.add(-coeff * quarter.clone(), word);
        }
    }
    op
}

/// psi_m dressed by the screening charge.
fn tilde_psi(m: i64, sector: &Sector, w: i64) -> Op {
    let quarter = (ExactScalar::from_int(4) * sector.eta.clone()).inv();
    let mut op = Op(vec![(one(), vec![Psi(m)])]);
    for n in -w..=w {
        let k = m - n;
        if k.abs() > w {
            continue;
        }
        for (coeff, aw) in a_minus(k).0 {
            let mut word = vec![C(n)];
            word.extend(aw);
            op.add(coeff * quarter.clone(), word);
        }
    }
    op
}

/// The null current absorbs a total derivative of the ghost pair c chi.
fn tilde_a_plus(j: i64, w: i64) -> Op {
    let mut op = a_plus(j);
    for k in -w..=w {
        let i = j - k;
        if i.abs() > w {
            continue;
        }
        op.add(ExactScalar::from_int(-j), vec![C(k), Chi(i)]);
    }
    op
}

/// The split form of the BRST operator: the matter Virasoro decouples from
/// the Heisenberg pair, the weight ghosts ride along through the dressed
/// fields, and no cross coupling between the two ghost systems remains.
pub fn split_q(sector: &Sector) -> Op {
    let w = mode_window(sector) + 2;
    let mut q = Op::default();
    for n in -w..=w {
        let t = decoupled_l(-n, true, sector, w).plus(decoupled_l(-n, false, sector, w));
        for (coeff, word) in t.0 {
            let mut full = vec![C(n)];
            full.extend(word);
            q.add(coeff, full);
        }
    }
    for n in -w..=w {
        for k in -w..=w {
            let m = -n - k;
            if m.abs() > w {
                continue;
            }
            // normally order the two c's, then substitute the dressed b
            let mut head = Op::default();
            push_no_ghosts(&mut head, ExactScalar::from_int(1 - k), vec![C(n), C(k)]);
            for (coeff, word) in op_mul(&head, &tilde_b(m, sector, w)).0 {
                q.add(coeff, word);
            }
        }
    }
    for m in -w..=w {
        for (coeff, word) in op_mul(&tilde_psi(m, sector, w), &tilde_a_plus(-m, w)).0 {
            q.add(coeff, word);
        }
    }
    q
}

pub struct SimilarityReport {
    pub states_checked: usize,
    pub mode_identities: usize,
}

/// Verify the splitting similarity on a whole level window: the conjugated
/// primitive modes match their dressed forms, and conjugating the BRST
/// operator by exp of the screening zero mode yields the split form.
pub fn similarity_check(sector: &Sector, cut: i64) -> Result<SimilarityReport, String> {
    let r = screening_zero_mode(sector);
    let q = brst_q(sector);
    let qs = split_q(sector);
    let w = mode_window(sector);
    let basis = sector.basis(-1, cut);
    if basis.is_empty() {
        return Err("empty window".into());
    }
    let mut mode_identities = 0;
    for m in -2..=2i64 {
        let pairs: Vec<(Op, Op)> = vec![
            (
                Op(vec![(one(), vec![PMode::Psi(m)])]),
                tilde_psi(m, sector, w),
            ),
            (Op(vec![(one(), vec![PMode::B(m)])]), tilde_b(m, sector, w)),
            (a_plus(m), tilde_a_plus(m, w)),
            (a_minus(m), a_minus(m)),
            (
                Op(vec![(one(), vec![PMode::C(m)])]),
                Op(vec![(one(), vec![PMode::C(m)])]),
            ),
            (
                Op(vec![(one(), vec![PMode::Chi(m)])]),
                Op(vec![(one(), vec![PMode::Chi(m)])]),
            ),
        ];
        for (plain, dressed) in pairs {
            for key in &basis {
                let st = single(key.clone());
                let lhs = conjugate_state(&r, &plain, &st, sector)?;
                let rhs = dressed.apply(&st, sector);
                if lhs != rhs {
                    return Err(format!(
                        "mode {:?} does not conjugate to its dressed form on {:?}",
                        plain.0[0].1[0], key
                    ));
                }
            }
            mode_identities += 1;
        }
    }
    for key in &basis {
        let st = single(key.clone());
        let lhs = conjugate_state(&r, &q, &st, sector)?;
        let rhs = qs.apply(&st, sector);
        if lhs != rhs {
            return Err(format!(
                "conjugated BRST operator differs from the split form on {:?}",
                key
            ));
        }
    }
    Ok(SimilarityReport {
        states_checked: basis.len(),
        mode_identities,
    })
}
