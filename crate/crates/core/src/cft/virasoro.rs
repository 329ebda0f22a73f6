//! Abstract Virasoro modules: Verma modules over symbolic (h, c), their
//! contravariant Gram forms, and irreducible quotients by the form radical.
//!
//! States are PBW monomials L_{-n1} L_{-n2} ... |h> with n1 >= n2 >= ...,
//! stored as the descending partition [n1, n2, ...]. Everything reduces to
//! the bracket [L_m, L_n] = (m-n) L_{m+n} + (c/12)(m^3-m) delta_{m+n,0}.

use crate::linalg::Matrix;
use crate::scalar::ExactScalar;
use num_traits::Zero;
use std::collections::BTreeMap;

pub type Partition = Vec<u32>;
pub type VirState = BTreeMap<Partition, ExactScalar>;

/// All partitions of n, each descending, in lexicographic order.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn go(n: u32, max: u32, prefix: &mut Partition, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for first in (1..=n.min(max)).rev() {
            prefix.push(first);
            go(n - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn add_term(state: &mut VirState, part: Partition, coeff: ExactScalar) {
    if coeff.is_zero() {
        return;
    }
    let slot = state.entry(part).or_insert_with(ExactScalar::zero);
    *slot = slot.clone() + coeff;
    // keep the map clean so is-zero checks stay cheap
    state.retain(|_, v| !v.is_zero());
}

/// A highest-weight Virasoro representation truncated at a level bound.
/// `radical_reduce` rewrites Verma states modulo the Gram-form radical when
/// the module is an irreducible quotient; for a plain Verma it is empty.
pub struct VirasoroModule {
    pub h: ExactScalar,
    pub c: ExactScalar,
    pub max_level: u32,
    /// per level: the partitions kept as basis vectors of the quotient
    kept: Vec<Vec<Partition>>,
    /// partitions expressed through kept ones (absent = kept as itself)
    rewrite: BTreeMap<Partition, VirState>,
}

impl VirasoroModule {
    /// Act with a single mode on a PBW monomial, in the Verma module.
    pub fn mode_on_part(&self, n: i64, part: &[u32]) -> VirState {
        let mut out = VirState::new();
        self.mode_go(n, part, &ExactScalar::from_int(1), &mut out);
        out
    }

    fn mode_go(&self, n: i64, part: &[u32], coeff: &ExactScalar, out: &mut VirState) {
        if part.is_empty() {
            if n > 0 {
                return;
            }
            if n == 0 {
                add_term(out, Vec::new(), self.h.clone() * coeff.clone());
            } else {
                add_term(out, vec![(-n) as u32], coeff.clone());
            }
            return;
        }
        let p1 = part[0] as i64;
        if n <= -p1 {
            // already normal ordered: prepend the creator
            let mut w = Vec::with_capacity(part.len() + 1);
            w.push((-n) as u32);
            w.extend_from_slice(part);
            add_term(out, w, coeff.clone());
            return;
        }
        let rest = &part[1..];
        // L_n L_{-p1} = L_{-p1} L_n + (n + p1) L_{n - p1} + delta c-term
        let mut inner = VirState::new();
        self.mode_go(n, rest, coeff, &mut inner);
        for (w, v) in inner {
            self.mode_go(-p1, &w, &v, out);
        }
        let mut shifted = VirState::new();
        self.mode_go(n - p1, rest, coeff, &mut shifted);
        let f = ExactScalar::from_int(n + p1);
        for (w, v) in shifted {
            add_term(out, w, v * f.clone());
        }
        if n == p1 {
            let central = self.c.clone() * ExactScalar::ratio(n * n * n - n, 12);
            let mut tail = VirState::new();
            // identity on the rest of the monomial
            add_term(&mut tail, rest.to_vec(), coeff.clone());
            for (w, v) in tail {
                add_term(out, w, v * central.clone());
            }
        }
    }

    /// Act on a general Verma state.
    pub fn mode(&self, n: i64, state: &VirState) -> VirState {
        let mut out = VirState::new();
        for (part, coeff) in state {
            let mut piece = VirState::new();
            self.mode_go(n, part, coeff, &mut piece);
            for (w, v) in piece {
                add_term(&mut out, w, v);
            }
        }
        out
    }

    /// Rewrite a Verma state modulo the radical (identity for plain Verma).
    pub fn reduce(&self, state: &VirState) -> VirState {
        if self.rewrite.is_empty() {
            return state.clone();
        }
        let mut out = VirState::new();
        for (part, coeff) in state {
            match self.rewrite.get(part) {
                None => add_term(&mut out, part.clone(), coeff.clone()),
                Some(image) => {
                    for (w, v) in image {
                        add_term(&mut out, w.clone(), v.clone() * coeff.clone());
                    }
                }
            }
        }
        out
    }

    pub fn basis(&self, level: u32) -> &[Partition] {
        &self.kept[level as usize]
    }

    pub fn dim(&self, level: u32) -> usize {
        self.kept[level as usize].len()
    }

    /// Plain Verma module truncated at max_level.
    pub fn verma(h: ExactScalar, c: ExactScalar, max_level: u32) -> VirasoroModule {
        let kept = (0..=max_level).map(partitions).collect();
        VirasoroModule {
            h,
            c,
            max_level,
            kept,
            rewrite: BTreeMap::new(),
        }
    }

    /// Irreducible quotient: drop the radical of the contravariant form,
    /// level by level, rewriting radical pivots through the kept basis.
    pub fn irreducible(h: ExactScalar, c: ExactScalar, max_level: u32) -> VirasoroModule {
        let mut module = VirasoroModule::verma(h.clone(), c.clone(), max_level);
        let mut kept: Vec<Vec<Partition>> = Vec::with_capacity(max_level as usize + 1);
        let mut rewrite: BTreeMap<Partition, VirState> = BTreeMap::new();
        for level in 0..=max_level {
            let parts = partitions(level);
            let gram = gram_in(&module, level);
            let radical = gram.nullspace();
            if radical.is_empty() {
                kept.push(parts);
                continue;
            }
            // row reduce the radical; pivots become rewritten partitions
            let mut rad = Matrix::from_fn(radical.len(), parts.len(), |i, j| radical[i][j].clone());
            let pivots = rad.rref();
            let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().cloned().collect();
            let level_kept: Vec<Partition> = (0..parts.len())
                .filter(|j| !pivot_set.contains(j))
                .map(|j| parts[j].clone())
                .collect();
            for (row, &pj) in pivots.iter().enumerate() {
                let mut image = VirState::new();
                for j in 0..parts.len() {
                    if j != pj && !rad[(row, j)].is_zero() {
                        add_term(&mut image, parts[j].clone(), -rad[(row, j)].clone());
                    }
                }
                rewrite.insert(parts[pj].clone(), image);
            }
            kept.push(level_kept);
        }
        module.kept = kept;
        module.rewrite = rewrite;
        module
    }
}

/// Gram matrix of the contravariant form on the Verma basis at a level:
/// G_{ij} = <L_{-nu_i} h, L_{-mu_j} h> with L_n adjoint to L_{-n}.
fn gram_in(module: &VirasoroModule, level: u32) -> Matrix<ExactScalar> {
    let parts = partitions(level);
    Matrix::from_fn(parts.len(), parts.len(), |i, j| {
        let mut state = VirState::new();
        state.insert(parts[j].clone(), ExactScalar::from_int(1));
        // apply the raising modes of nu_i from the outside in
        for &n in &parts[i] {
            state = module.mode(n as i64, &state);
        }
        state.get(&Vec::new()).cloned().unwrap_or_else(ExactScalar::zero)
    })
}

/// Gram matrix of the level subspace of the Verma module with highest
/// weight h and central charge c.
pub fn verma_gram(h: &ExactScalar, c: &ExactScalar, level: u32) -> Matrix<ExactScalar> {
    let module = VirasoroModule::verma(h.clone(), c.clone(), level);
    gram_in(&module, level)
}

/// Central charge of the Feigin-Fuks family: 13 - 6(kappa + 1/kappa).
pub fn c_hat(kappa: &ExactScalar) -> ExactScalar {
    ExactScalar::from_int(13)
        - ExactScalar::from_int(6) * (kappa.clone() + kappa.inv())
}

/// Degenerate highest weights h_{m,n}; the Verma module at h_{m,n} has a
/// singular vector at level m n.
pub fn kac_h(m: i64, n: i64, kappa: &ExactScalar) -> ExactScalar {
    ExactScalar::ratio(m * m - 1, 4) * kappa.clone()
        + ExactScalar::ratio(n * n - 1, 4) * kappa.inv()
        - ExactScalar::ratio(m * n - 1, 2)
}

/// Highest weight of the lambda-th module in the positive discrete family:
/// Delta(lambda) = -lambda/2 + lambda(lambda+2)/(4 kappa) = h_{1, lambda+1}.
pub fn delta(lambda: i64, kappa: &ExactScalar) -> ExactScalar {
    ExactScalar::ratio(-lambda, 2)
        + ExactScalar::ratio(lambda * (lambda + 2), 4) * kappa.inv()
}
