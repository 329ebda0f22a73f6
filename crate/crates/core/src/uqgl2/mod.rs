//! Finite dimensional modules of the q-deformed gl(2): an sl(2) part with
//! generators E, F, K = q^H and a central charge I acting by an integer.
//!
//! Conventions (fixed once, used everywhere):
//!   - irreducible V_{lambda} has basis v_0..v_lambda, weights lambda - 2j;
//!   - E v_j = [j] v_{j-1}, F v_j = [lambda - j] v_{j+1};
//!   - coproduct  E -> E (x) K + 1 (x) E,  F -> F (x) 1 + K^{-1} (x) F;
//!   - antipode   S(E) = -E K^{-1}, S(F) = -K F, S(K) = K^{-1}.
//!
//! Weights may pair to odd products, so the square root s of q shows up in
//! the coboundary factor of the R-matrix; the scalar field carries it.

pub mod intertwiner;
pub mod rmatrix;

use crate::linalg::Matrix;
use crate::scalar::{q_integer, ExactScalar};
use num_traits::One;

pub type Scal = ExactScalar;

/// A finite dimensional module with weight basis.
#[derive(Clone, Debug)]
pub struct Module {
    pub dim: usize,
    /// sl(2) weight of each basis vector; K acts as q^{weight}.
    pub weights: Vec<i64>,
    /// Eigenvalue of the central charge I (uniform on the module).
    pub charge: i64,
    pub e: Matrix<Scal>,
    pub f: Matrix<Scal>,
}

impl Module {
    /// Irreducible of highest weight `lambda` and central charge `charge`.
    pub fn irrep(lambda: u32, charge: i64) -> Module {
        let dim = lambda as usize + 1;
        let mut e: Matrix<Scal> = Matrix::zeros(dim, dim);
        let mut f: Matrix<Scal> = Matrix::zeros(dim, dim);
        for j in 0..dim {
            if j >= 1 {
                e[(j - 1, j)] = q_integer(j as i64);
            }
            if j + 1 < dim {
                f[(j + 1, j)] = q_integer(lambda as i64 - j as i64);
            }
        }
        Module {
            dim,
            weights: (0..dim).map(|j| lambda as i64 - 2 * j as i64).collect(),
            charge,
            e,
            f,
        }
    }

    pub fn k_matrix(&self) -> Matrix<Scal> {
        let mut k: Matrix<Scal> = Matrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            k[(i, i)] = ExactScalar::q_pow(self.weights[i]);
        }
        k
    }

    pub fn k_inv_matrix(&self) -> Matrix<Scal> {
        let mut k: Matrix<Scal> = Matrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            k[(i, i)] = ExactScalar::q_pow(-self.weights[i]);
        }
        k
    }

    /// Tensor product with the fixed coproduct.
    pub fn tensor(a: &Module, b: &Module) -> Module {
        let dim = a.dim * b.dim;
        let id_a = Matrix::identity(a.dim);
        let id_b = Matrix::identity(b.dim);
        let e = kron(&a.e, &b.k_matrix()).add(&kron(&id_a, &b.e));
        let f = kron(&a.f, &id_b).add(&kron(&a.k_inv_matrix(), &b.f));
        let mut weights = Vec::with_capacity(dim);
        for &wa in &a.weights {
            for &wb in &b.weights {
                weights.push(wa + wb);
            }
        }
        Module {
            dim,
            weights,
            charge: a.charge + b.charge,
            e,
            f,
        }
    }

    /// Dual module via the antipode, on the dual basis.
    pub fn dual(&self) -> Module {
        let e = self.e.matmul(&self.k_inv_matrix()).scale(&-Scal::one());
        let f = self.k_matrix().matmul(&self.f).scale(&-Scal::one());
        Module {
            dim: self.dim,
            weights: self.weights.iter().map(|w| -w).collect(),
            charge: -self.charge,
            e: e.transpose(),
            f: f.transpose(),
        }
    }

    /// Defining relations: K E K^{-1} = q^2 E, K F K^{-1} = q^{-2} F,
    /// [E, F] = (K - K^{-1})/(q - q^{-1}).
    pub fn satisfies_relations(&self) -> bool {
        let k = self.k_matrix();
        let kinv = self.k_inv_matrix();
        let q2 = ExactScalar::q_pow(2);
        let lhs_e = k.matmul(&self.e).matmul(&kinv);
        if lhs_e != self.e.scale(&q2) {
            return false;
        }
        let lhs_f = k.matmul(&self.f).matmul(&kinv);
        if lhs_f != self.f.scale(&ExactScalar::q_pow(-2)) {
            return false;
        }
        let comm = self
            .e
            .matmul(&self.f)
            .sub(&self.f.matmul(&self.e));
        let target = k
            .sub(&kinv)
            .scale(&(ExactScalar::q_pow(1) - ExactScalar::q_pow(-1)).inv());
        comm == target
    }
}

/// Kronecker product in row-major (first factor outer) convention.
pub fn kron(a: &Matrix<Scal>, b: &Matrix<Scal>) -> Matrix<Scal> {
    let mut out: Matrix<Scal> = Matrix::zeros(a.rows * b.rows, a.cols * b.cols);
    for i1 in 0..a.rows {
        for j1 in 0..a.cols {
            if a[(i1, j1)].is_zero() {
                continue;
            }
            for i2 in 0..b.rows {
                for j2 in 0..b.cols {
                    if b[(i2, j2)].is_zero() {
                        continue;
                    }
                    out[(i1 * b.rows + i2, j1 * b.cols + j2)] =
                        a[(i1, j1)].clone() * b[(i2, j2)].clone();
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_scalar;
    use num_traits::Zero;

    fn pq(t: &str) -> Scal {
        parse_scalar(t).unwrap()
    }

    #[test]
    fn irreps_satisfy_defining_relations() {
        for lambda in 0..=4 {
            for charge in [-1, 0, 2] {
                let m = Module::irrep(lambda, charge);
                assert!(m.satisfies_relations(), "lambda={}", lambda);
            }
        }
    }

    #[test]
    fn tensor_products_satisfy_defining_relations() {
        let a = Module::irrep(1, 0);
        let b = Module::irrep(2, 1);
        let t = Module::tensor(&a, &b);
        assert!(t.satisfies_relations());
        assert_eq!(t.charge, 1);
        let triple = Module::tensor(&t, &Module::irrep(1, -1));
        assert!(triple.satisfies_relations());
    }

    #[test]
    fn casimir_like_commutator_on_irrep() {
        // [E, F] v_j = [lambda - 2j] v_j, via the bracket identity
        let m = Module::irrep(3, 0);
        let comm = m.e.matmul(&m.f).sub(&m.f.matmul(&m.e));
        for j in 0..m.dim {
            assert_eq!(comm[(j, j)], q_integer(m.weights[j]));
        }
    }

    #[test]
    fn dual_of_fundamental_matches_antipode_table() {
        // E xi_0 = -q xi_1, F xi_1 = -q^{-1} xi_0, K xi_j = q^{-w_j} xi_j
        let v = Module::irrep(1, 0);
        let d = v.dual();
        assert!(d.satisfies_relations());
        assert_eq!(d.weights, vec![-1, 1]);
        // E maps xi_0 (index 0) to -q xi_1 (row 1, col 0)
        assert_eq!(d.e[(1, 0)], pq("-q"));
        assert_eq!(d.e[(0, 0)], Scal::zero());
        assert_eq!(d.e[(0, 1)], Scal::zero());
        assert_eq!(d.e[(1, 1)], Scal::zero());
        assert_eq!(d.f[(0, 1)], pq("-q^-1"));
        assert_eq!(d.f[(1, 1)], Scal::zero());
    }

    #[test]
    fn kron_matches_block_structure() {
        let a = Module::irrep(1, 0).k_matrix();
        let b = Matrix::identity(3);
        let k = kron(&a, &b);
        assert_eq!(k.rows, 6);
        assert_eq!(k[(0, 0)], pq("q"));
        assert_eq!(k[(5, 5)], pq("q^-1"));
        assert_eq!(k[(0, 3)], Scal::zero());
    }
}
