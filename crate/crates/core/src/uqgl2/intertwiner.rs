//! Module maps V_nu -> V_lambda (x) V_mu: dimension counts, explicit
//! normalized intertwiners, and the braiding matrices that compare the two
//! ways of fusing three modules.

use super::rmatrix::braiding;
use super::{kron, Module, Scal};
use crate::linalg::Matrix;
use crate::scalar::q_integer;
use num_traits::Zero;

/// Unknown positions for a map V_nu -> V_lambda (x) V_mu: tensor index t and
/// source index j, restricted to matching weight. Returns the variable list
/// and the equation matrix whose nullspace is the hom space.
fn hom_system(lambda: u32, mu: u32, nu: u32) -> (Vec<(usize, usize)>, Matrix<Scal>) {
    let tensor = Module::tensor(&Module::irrep(lambda, 0), &Module::irrep(mu, 0));
    let dim_src = nu as usize + 1;
    let src_weight = |j: usize| nu as i64 - 2 * j as i64;

    let mut vars: Vec<(usize, usize)> = Vec::new();
    for j in 0..dim_src {
        for t in 0..tensor.dim {
            if tensor.weights[t] == src_weight(j) {
                vars.push((t, j));
            }
        }
    }
    let var_pos = |t: usize, j: usize| vars.iter().position(|&v| v == (t, j));

    let mut rows: Vec<Vec<Scal>> = Vec::new();
    for j in 0..dim_src {
        // E phi(v_j) = phi(E v_j) = [j] phi(v_{j-1})
        for tp in 0..tensor.dim {
            if tensor.weights[tp] != src_weight(j) + 2 {
                continue;
            }
            let mut row = vec![Scal::zero(); vars.len()];
            let mut nonzero = false;
            for &(t, jj) in &vars {
                if jj == j && !tensor.e[(tp, t)].is_zero() {
                    row[var_pos(t, j).unwrap()] = tensor.e[(tp, t)].clone();
                    nonzero = true;
                }
            }
            if j >= 1 {
                if let Some(p) = var_pos(tp, j - 1) {
                    row[p] = row[p].clone() - q_integer(j as i64);
                    nonzero = true;
                }
            }
            if nonzero {
                rows.push(row);
            }
        }
        // F phi(v_j) = [nu - j] phi(v_{j+1})
        for tp in 0..tensor.dim {
            if tensor.weights[tp] != src_weight(j) - 2 {
                continue;
            }
            let mut row = vec![Scal::zero(); vars.len()];
            let mut nonzero = false;
            for &(t, jj) in &vars {
                if jj == j && !tensor.f[(tp, t)].is_zero() {
                    row[var_pos(t, j).unwrap()] = tensor.f[(tp, t)].clone();
                    nonzero = true;
                }
            }
            if j + 1 < dim_src {
                if let Some(p) = var_pos(tp, j + 1) {
                    row[p] = row[p].clone() - q_integer(nu as i64 - j as i64);
                    nonzero = true;
                }
            }
            if nonzero {
                rows.push(row);
            }
        }
    }
    let ncols = vars.len();
    let mat = if rows.is_empty() {
        Matrix::zeros(0, ncols)
    } else {
        Matrix::from_rows(rows)
    };
    (vars, mat)
}

/// dim Hom(V_nu, V_lambda (x) V_mu) for the sl(2) part, by honest linear
/// algebra (no fusion-rule shortcut).
pub fn hom_dimension_sl2(lambda: u32, mu: u32, nu: u32) -> usize {
    let (vars, mat) = hom_system(lambda, mu, nu);
    if vars.is_empty() {
        return 0;
    }
    vars.len() - mat.rank()
}

/// dim Hom(V_{nu,n}, V_{lambda,l} (x) V_{mu,m}) including the central charge.
pub fn hom_dimension(lambda: u32, l: i64, mu: u32, m: i64, nu: u32, n: i64) -> usize {
    if n != l + m {
        return 0;
    }
    hom_dimension_sl2(lambda, mu, nu)
}

/// Closed form the computed dimension is checked against: selection rules
/// |lambda - mu| <= nu <= lambda + mu, matching parity, additive charge.
pub fn hom_dimension_closed_form(
    lambda: u32,
    l: i64,
    mu: u32,
    m: i64,
    nu: u32,
    n: i64,
) -> usize {
    let triangle = nu >= lambda.abs_diff(mu) && nu <= lambda + mu;
    let parity = (lambda + mu) % 2 == nu % 2;
    usize::from(triangle && parity && n == l + m)
}

/// The normalized intertwiner V_{nu,n} -> V_{lambda,l} (x) V_{mu,m} as a
/// matrix over the tensor basis (row t = a*(mu+1)+b for v_a (x) w_b, column
/// j for the source basis). `None` when the hom space is not a line.
///
/// Normalization: in the image of the source highest weight vector, the
/// coefficient of v_a (x) w_b with a + b = (lambda + mu - nu)/2 and a
/// minimal is set to 1.
pub fn intertwiner(
    lambda: u32,
    l: i64,
    mu: u32,
    m: i64,
    nu: u32,
    n: i64,
) -> Option<Matrix<Scal>> {
    if n != l + m {
        return None;
    }
    let (vars, mat) = hom_system(lambda, mu, nu);
    let basis = if vars.is_empty() {
        return None;
    } else {
        mat.nullspace()
    };
    if basis.len() != 1 {
        return None;
    }
    let sol = &basis[0];

    let sigma0 = (lambda + mu) as i64 - nu as i64;
    debug_assert!(sigma0 >= 0 && sigma0 % 2 == 0);
    let sigma0 = (sigma0 / 2) as usize;
    let a_min = sigma0.saturating_sub(mu as usize);
    let t_norm = a_min * (mu as usize + 1) + (sigma0 - a_min);
    let pos = vars.iter().position(|&v| v == (t_norm, 0))?;
    let pivot = sol[pos].clone();
    assert!(
        !pivot.is_zero(),
        "normalization entry vanished for ({}, {}) -> {}",
        lambda,
        mu,
        nu
    );
    let scale = pivot.inv();

    let dim_t = (lambda as usize + 1) * (mu as usize + 1);
    let mut phi: Matrix<Scal> = Matrix::zeros(dim_t, nu as usize + 1);
    for (idx, &(t, j)) in vars.iter().enumerate() {
        if !sol[idx].is_zero() {
            phi[(t, j)] = sol[idx].clone() * scale.clone();
        }
    }
    Some(phi)
}

/// Result of expanding one fusion path in the basis given by the other.
#[derive(Clone, Debug)]
pub struct BraidingExpansion {
    /// Intermediate weights rho on the braided side, in increasing order.
    pub rho: Vec<u32>,
    /// Intermediate weights xi on the reference side, in increasing order.
    pub xi: Vec<u32>,
    /// B with rows over rho, columns over xi.
    pub matrix: Matrix<Scal>,
}

fn admissible(lambda: u32, mu: u32, nu: u32) -> bool {
    nu >= lambda.abs_diff(mu) && nu <= lambda + mu && (lambda + mu) % 2 == nu % 2
}

fn flatten(m: &Matrix<Scal>) -> Vec<Scal> {
    let mut v = Vec::with_capacity(m.rows * m.cols);
    for i in 0..m.rows {
        for j in 0..m.cols {
            v.push(m[(i, j)].clone());
        }
    }
    v
}

/// Compare the two fusion orders of V_{l1} (x) V_{l2} (x) V_{l3} seen from
/// V_{l0}. The braided path applies P o R on the last two factors:
///
///   (1 (x) PR) (phi_rho (x) 1) phi0_rho  =  sum_xi B[rho, xi] (phi_xi (x) 1) phi0_xi
///
/// where phi0_rho: V_{l0} -> V_rho (x) V_{l3} and phi_rho: V_rho ->
/// V_{l1} (x) V_{l2}, and on the right phi0_xi: V_{l0} -> V_xi (x) V_{l2},
/// phi_xi: V_xi -> V_{l1} (x) V_{l3}. Charges ride along: the rho leg
/// carries l0 - l3, the xi leg l0 - l2, and PR contributes q^{l2 l3}.
///
/// The expansion is solved exactly and verified; `None` when the charges do
/// not balance (l0 != l1 + l2 + l3) or a hom space is not a line.
pub fn braiding_matrix(
    lam0: u32,
    l0: i64,
    lam1: u32,
    l1: i64,
    lam2: u32,
    l2: i64,
    lam3: u32,
    l3: i64,
) -> Option<BraidingExpansion> {
    if l0 != l1 + l2 + l3 {
        return None;
    }
    let r_charge = l0 - l3;
    let k_charge = l0 - l2;

    let rho_list: Vec<u32> = (0..=lam1 + lam2)
        .filter(|&rho| admissible(lam1, lam2, rho) && admissible(rho, lam3, lam0))
        .collect();
    let xi_list: Vec<u32> = (0..=lam1 + lam3)
        .filter(|&xi| admissible(lam1, lam3, xi) && admissible(xi, lam2, lam0))
        .collect();

    let d1 = lam1 as usize + 1;
    let d2 = lam2 as usize + 1;
    let d3 = lam3 as usize + 1;

    let m2 = Module::irrep(lam2, l2);
    let m3 = Module::irrep(lam3, l3);
    let pr23 = kron(&Matrix::identity(d1), &braiding(&m2, &m3));

    let mut lhs_vecs: Vec<Vec<Scal>> = Vec::new();
    for &rho in &rho_list {
        let inner = intertwiner(rho, r_charge, lam3, l3, lam0, l0)?;
        let outer = intertwiner(lam1, l1, lam2, l2, rho, r_charge)?;
        let lifted = kron(&outer, &Matrix::identity(d3)).matmul(&inner);
        lhs_vecs.push(flatten(&pr23.matmul(&lifted)));
    }
    let mut rhs_vecs: Vec<Vec<Scal>> = Vec::new();
    for &xi in &xi_list {
        let inner = intertwiner(xi, k_charge, lam2, l2, lam0, l0)?;
        let outer = intertwiner(lam1, l1, lam3, l3, xi, k_charge)?;
        rhs_vecs.push(flatten(&kron(&outer, &Matrix::identity(d2)).matmul(&inner)));
    }

    let nrows = rhs_vecs.first().map(|v| v.len()).unwrap_or(0);
    let a = Matrix::from_fn(nrows, rhs_vecs.len(), |i, j| rhs_vecs[j][i].clone());
    assert_eq!(
        a.rank(),
        rhs_vecs.len(),
        "reference fusion paths must be independent"
    );

    let mut b: Matrix<Scal> = Matrix::zeros(rho_list.len(), xi_list.len());
    for (ri, lhs) in lhs_vecs.iter().enumerate() {
        let x = a
            .solve(lhs)
            .expect("braided path must lie in the span of the reference paths");
        // exact residual check: the solve is over a field, but verify anyway
        let back = a.apply(&x);
        assert_eq!(&back, lhs, "nonzero residual in braiding expansion");
        for (ci, val) in x.into_iter().enumerate() {
            b[(ri, ci)] = val;
        }
    }
    Some(BraidingExpansion {
        rho: rho_list,
        xi: xi_list,
        matrix: b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_scalar, ExactScalar};
    use num_traits::One;

    fn pq(t: &str) -> Scal {
        parse_scalar(t).unwrap()
    }

    #[test]
    fn hom_dimensions_match_closed_form_on_a_sweep() {
        for lambda in 0..=3u32 {
            for mu in 0..=3u32 {
                for nu in 0..=3u32 {
                    let got = hom_dimension_sl2(lambda, mu, nu);
                    let want = hom_dimension_closed_form(lambda, 0, mu, 0, nu, 0);
                    assert_eq!(got, want, "({}, {}) -> {}", lambda, mu, nu);
                }
            }
        }
    }

    #[test]
    fn charge_gate_kills_mismatched_sectors() {
        assert_eq!(hom_dimension(1, 1, 1, 0, 2, 1), 1);
        assert_eq!(hom_dimension(1, 1, 1, 0, 2, 0), 0);
        assert_eq!(hom_dimension(1, 1, 1, 0, 2, 2), 0);
    }

    #[test]
    fn singlet_inside_two_fundamentals() {
        // phi(w0) = v0 (x) v1 - q^{-1} v1 (x) v0
        let phi = intertwiner(1, 0, 1, 0, 0, 0).unwrap();
        assert_eq!(phi.rows, 4);
        assert_eq!(phi.cols, 1);
        assert_eq!(phi[(0, 0)], Scal::zero());
        assert_eq!(phi[(1, 0)], Scal::one());
        assert_eq!(phi[(2, 0)], pq("-q^-1"));
        assert_eq!(phi[(3, 0)], Scal::zero());
    }

    #[test]
    fn intertwiners_commute_with_the_action() {
        for (lambda, mu, nu) in [(1u32, 1u32, 2u32), (2, 1, 1), (2, 2, 2), (3, 1, 2)] {
            let phi = intertwiner(lambda, 0, mu, 0, nu, 0).unwrap();
            let t = Module::tensor(&Module::irrep(lambda, 0), &Module::irrep(mu, 0));
            let s = Module::irrep(nu, 0);
            assert_eq!(t.e.matmul(&phi), phi.matmul(&s.e), "E fails");
            assert_eq!(t.f.matmul(&phi), phi.matmul(&s.f), "F fails");
            assert_eq!(
                t.k_matrix().matmul(&phi),
                phi.matmul(&s.k_matrix()),
                "K fails"
            );
        }
    }

    #[test]
    fn braiding_through_a_trivial_factor_is_a_charge_phase() {
        // lambda2 = 0 leaves only the charge contribution q^{l2 l3}
        let exp = braiding_matrix(2, 3, 1, 0, 0, 2, 1, 1).unwrap();
        assert_eq!(exp.rho, vec![1]);
        assert_eq!(exp.xi, vec![2]);
        assert_eq!(exp.matrix[(0, 0)], ExactScalar::q_pow(2));
    }

    #[test]
    fn braiding_of_three_fundamentals_is_exact_and_charge_factored() {
        let neutral = braiding_matrix(1, 0, 1, 0, 1, 0, 1, 0).unwrap();
        assert_eq!(neutral.rho, vec![0, 2]);
        assert_eq!(neutral.xi, vec![0, 2]);
        let charged = braiding_matrix(1, 6, 1, 1, 1, 2, 1, 3).unwrap();
        // B(charges) = q^{l2 l3} B(0)
        let scaled = neutral.matrix.scale(&ExactScalar::q_pow(6));
        assert_eq!(charged.matrix, scaled);
    }

    #[test]
    fn braiding_with_trivial_first_factor_recovers_pr_eigenvalues() {
        // lambda1 = 0 makes both paths the same intertwiner up to PR, so
        // B is the eigenvalue of PR on the lambda0-isotypic component
        let singlet = braiding_matrix(0, 0, 0, 0, 1, 0, 1, 0).unwrap();
        assert_eq!((singlet.rho, singlet.xi), (vec![1], vec![1]));
        assert_eq!(singlet.matrix[(0, 0)], -ExactScalar::s_pow(-3));

        let triplet = braiding_matrix(2, 0, 0, 0, 1, 0, 1, 0).unwrap();
        assert_eq!(triplet.matrix[(0, 0)], ExactScalar::s_pow(1));
    }
}
