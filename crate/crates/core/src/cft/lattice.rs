//! Charge lattice of Heisenberg Fock modules and the vertex operators that
//! move between them.
//!
//! The boson has bracket [a_n, a_m] = 2 eta n delta, and the charge-lambda
//! ground state carries a0-eigenvalue lambda * eta. A vertex operator of
//! charge lambda shifts sectors by lambda; its z-power on the charge-mu
//! sector and the leading pair exponent both come out as lambda mu eta / 2,
//! so full mode expansions only make sense when eta is specialized to make
//! those integers. Symbolic eta stays available for the exponent and phase
//! assertions themselves.

use super::virasoro::Partition;
use crate::scalar::ExactScalar;
use crate::QRat;
use num_traits::Zero;
use std::collections::BTreeMap;

/// State in the lattice module: charge sector plus oscillator partition.
pub type LKey = (i64, Partition);
pub type LState = BTreeMap<LKey, ExactScalar>;

pub fn lattice_vacuum(charge: i64) -> LState {
    let mut s = LState::new();
    s.insert((charge, Vec::new()), ExactScalar::from_int(1));
    s
}

fn add_term(state: &mut LState, key: LKey, coeff: ExactScalar) {
    if coeff.is_zero() {
        return;
    }
    let slot = state.entry(key.clone()).or_insert_with(ExactScalar::zero);
    *slot = slot.clone() + coeff;
    if slot.is_zero() {
        state.remove(&key);
    }
}

/// Heisenberg mode on the lattice module.
pub fn lattice_mode(eta: &ExactScalar, n: i64, state: &LState) -> LState {
    let mut out = LState::new();
    for ((charge, part), coeff) in state {
        if n == 0 {
            let val = ExactScalar::from_int(*charge) * eta.clone();
            add_term(&mut out, (*charge, part.clone()), coeff.clone() * val);
        } else if n < 0 {
            let mut p = part.clone();
            let pos = p.partition_point(|&q| q as i64 >= -n);
            p.insert(pos, (-n) as u32);
            add_term(&mut out, (*charge, p), coeff.clone());
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
                (*charge, p),
                coeff.clone() * ExactScalar::from_int(2 * mult * n) * eta.clone(),
            );
        }
    }
    out
}

/// z-power carried by the charge-lambda vertex on the charge-mu sector.
pub fn vertex_zero_power(lambda: i64, mu: i64, eta: &ExactScalar) -> ExactScalar {
    ExactScalar::ratio(lambda * mu, 2) * eta.clone()
}

fn as_integer(x: &ExactScalar) -> Option<i64> {
    let r = x.as_qrat()?;
    if !r.is_integer() {
        return None;
    }
    num_traits::ToPrimitive::to_i64(&r.to_integer())
}

/// Series in z with lattice-state coefficients, indexed by integer power.
pub type VertexSeries = BTreeMap<i64, LState>;

fn series_add(series: &mut VertexSeries, power: i64, state: &LState, factor: &ExactScalar) {
    if state.is_empty() || factor.is_zero() {
        return;
    }
    let slot = series.entry(power).or_default();
    for (k, v) in state {
        add_term(slot, k.clone(), v.clone() * factor.clone());
    }
    if slot.is_empty() {
        series.remove(&power);
    }
}

/// One factor exp(coeff * a_{pm n} z^{shift per application}) applied to a
/// whole series; `bound` caps the number of applications.
fn exp_factor_apply(
    eta: &ExactScalar,
    series: &VertexSeries,
    mode: i64,
    coeff: ExactScalar,
    shift: i64,
    bound: i64,
) -> VertexSeries {
    let mut out = VertexSeries::new();
    for (power, state) in series {
        let mut term = state.clone();
        let mut fact = ExactScalar::from_int(1);
        let mut k = 0i64;
        loop {
            series_add(&mut out, power + shift * k, &term, &fact);
            if k >= bound {
                break;
            }
            let next = lattice_mode(eta, mode, &term);
            if next.is_empty() {
                break;
            }
            term = next;
            k += 1;
            fact = fact * coeff.clone() * ExactScalar::ratio(1, k);
        }
    }
    out
}

/// Expansion of the charge-lambda vertex operator applied to a single-charge
/// state: the list of (z-power, image state) pairs with creator dressing up
/// to `order` units above the leading power. Every z-power must be integral,
/// which is the charge-lattice condition on eta.
pub fn vertex_apply(
    lambda: i64,
    eta: &ExactScalar,
    state: &LState,
    order: i64,
) -> Result<VertexSeries, String> {
    let charges: Vec<i64> = {
        let mut cs: Vec<i64> = state.keys().map(|(c, _)| *c).collect();
        cs.dedup();
        cs
    };
    let mut out = VertexSeries::new();
    for mu in charges {
        let component: LState = state
            .iter()
            .filter(|((c, _), _)| *c == mu)
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        let e0 = match as_integer(&vertex_zero_power(lambda, mu, eta)) {
            Some(e) => e,
            None => return Err("charge lattice incompatible".into()),
        };
        let osc_level: i64 = component
            .keys()
            .map(|(_, p)| p.iter().map(|&x| x as i64).sum())
            .max()
            .unwrap_or(0);
        // annihilator exponential: exp(-(lambda/2) sum_n a_n z^{-n}/n)
        let mut series = VertexSeries::new();
        series.insert(e0, component);
        for n in 1..=osc_level {
            series = exp_factor_apply(
                eta,
                &series,
                n,
                ExactScalar::ratio(-lambda, 2 * n),
                -n,
                osc_level / n,
            );
        }
        // creator exponential: exp((lambda/2) sum_n a_{-n} z^{n}/n)
        for n in 1..=order.max(0) {
            series = exp_factor_apply(
                eta,
                &series,
                -n,
                ExactScalar::ratio(lambda, 2 * n),
                n,
                order / n,
            );
        }
        // charge shift
        for (power, st) in series {
            if power > e0 + order {
                continue;
            }
            let mut shifted = LState::new();
            for ((c, p), v) in st {
                shifted.insert((c + lambda, p), v);
            }
            series_add(&mut out, power, &shifted, &ExactScalar::from_int(1));
        }
    }
    Ok(out)
}

/// Coefficient table of the composed vacuum correlator: entry (i, j) is the
/// coefficient of 1_{lambda+mu} in z^{-a} w^{-b} relative to the leading
/// powers, read from X(lambda, z) X(mu, w) applied to the charge-0 vacuum.
/// Fitting it against a binomial expansion recovers the pair exponent.
pub fn pair_exponent(lambda: i64, mu: i64, eta: &ExactScalar, depth: i64) -> Result<QRat, String> {
    let inner = vertex_apply(mu, eta, &lattice_vacuum(0), depth)?;
    // collect the top-state coefficient of z^pz w^pw
    let mut table: BTreeMap<(i64, i64), ExactScalar> = BTreeMap::new();
    for (pw, st) in &inner {
        let outer = vertex_apply(lambda, eta, st, depth)?;
        for (pz, st2) in outer {
            if let Some(c) = st2.get(&(lambda + mu, Vec::new())) {
                table.insert((pz, *pw), c.clone());
            }
        }
    }
    // the correlator is (z - w)^E times the regular part, and on the top
    // state the regular part is the constant 1, so the table must be the
    // binomial row of E: coefficient of z^{E-k} w^k equals binom(E, k) (-1)^k,
    // with E read off as the z-power paired with w^0
    let e = table
        .iter()
        .find(|((_, pw), _)| *pw == 0)
        .map(|((pz, _), _)| *pz)
        .ok_or("no w^0 column")?;
    let mut binom = QRat::from_integer(1.into());
    for k in 0..=depth.min(e.abs() + depth) {
        let want = binom.clone();
        let got = table
            .get(&(e - k, k))
            .cloned()
            .unwrap_or_else(ExactScalar::zero);
        let got_q = got.as_qrat().ok_or("non-rational entry")?;
        let sign = if k % 2 == 0 { 1 } else { -1 };
        if got_q != want.clone() * QRat::from_integer(sign.into()) {
            return Err(format!(
                "correlator fails the binomial pattern at column {}",
                k
            ));
        }
        // next binomial coefficient of (1 + x)^E
        binom = binom * QRat::new((e - k).into(), (k + 1).into());
        if binom.is_zero() {
            break;
        }
    }
    Ok(QRat::from_integer(e.into()))
}

/// Braiding exponent of the pair under formal exchange, in units of the
/// elementary phase p = exp(i pi eta): exchanging the two vertex operators
/// multiplies the product by p raised to this (half-integral) power.
pub fn braiding_exponent(lambda: i64, mu: i64) -> QRat {
    QRat::new((lambda * mu).into(), 2.into())
}

/// The product Res_z(U(z) V / z) for lattice states: the z^0 coefficient of
/// the vertex operator of the charge-u vacuum applied to V.
pub fn lz_product(u_charge: i64, v: &LState, eta: &ExactScalar) -> Result<LState, String> {
    let series = vertex_apply(u_charge, eta, v, 2 * u_charge.abs() + 2)?;
    Ok(series.get(&0).cloned().unwrap_or_default())
}
