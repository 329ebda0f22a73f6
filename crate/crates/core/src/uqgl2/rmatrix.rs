//! Universal R-matrix specialized to a pair of finite dimensional modules.
//!
//! R = C * Theta where
//!   C (v (x) w) = q^{k1 k2} q^{w(v) w(w) / 2} (v (x) w)   (charges k, weights w)
//!   Theta = sum_k  q^{k(k-1)/2} (q - q^{-1})^k / [k]!  E^k (x) F^k.
//!
//! The sum truncates because E and F are nilpotent on finite dimensional
//! modules. The braiding is P o R with P the flip.

use super::{kron, Module, Scal};
use crate::linalg::Matrix;
use crate::scalar::{q_factorial, ExactScalar};
use num_traits::One;

/// Quasitriangular kernel Theta on `a (x) b`.
pub fn theta(a: &Module, b: &Module) -> Matrix<Scal> {
    let mut total = Matrix::identity(a.dim * b.dim);
    let mut e_pow = a.e.clone();
    let mut f_pow = b.f.clone();
    let qdiff = ExactScalar::q_pow(1) - ExactScalar::q_pow(-1);
    let mut k: i64 = 1;
    while !e_pow.is_zero() && !f_pow.is_zero() {
        let coeff = ExactScalar::q_pow(k * (k - 1) / 2) * qdiff.pow(k)
            * q_factorial(k as u32).inv();
        total = total.add(&kron(&e_pow, &f_pow).scale(&coeff));
        e_pow = e_pow.matmul(&a.e);
        f_pow = f_pow.matmul(&b.f);
        k += 1;
    }
    total
}

/// Diagonal coboundary factor on `a (x) b`.
pub fn coboundary(a: &Module, b: &Module) -> Matrix<Scal> {
    let mut c: Matrix<Scal> = Matrix::zeros(a.dim * b.dim, a.dim * b.dim);
    let charge_part = ExactScalar::q_pow(a.charge * b.charge);
    for (i, &wa) in a.weights.iter().enumerate() {
        for (j, &wb) in b.weights.iter().enumerate() {
            let idx = i * b.dim + j;
            c[(idx, idx)] = charge_part.clone() * ExactScalar::s_pow(wa * wb);
        }
    }
    c
}

/// Full R-matrix on `a (x) b`.
pub fn rmatrix(a: &Module, b: &Module) -> Matrix<Scal> {
    coboundary(a, b).matmul(&theta(a, b))
}

/// The flip `a (x) b -> b (x) a` as a matrix.
pub fn flip(a_dim: usize, b_dim: usize) -> Matrix<Scal> {
    let mut p: Matrix<Scal> = Matrix::zeros(a_dim * b_dim, a_dim * b_dim);
    for i in 0..a_dim {
        for j in 0..b_dim {
            p[(j * a_dim + i, i * b_dim + j)] = Scal::one();
        }
    }
    p
}

/// Braiding P o R: an intertwiner `a (x) b -> b (x) a`.
pub fn braiding(a: &Module, b: &Module) -> Matrix<Scal> {
    flip(a.dim, b.dim).matmul(&rmatrix(a, b))
}

/// Embed an operator on slots (sa, sb) of a triple tensor product.
pub fn embed_pair(
    op: &Matrix<Scal>,
    dims: [usize; 3],
    sa: usize,
    sb: usize,
) -> Matrix<Scal> {
    assert!(sa < sb && sb < 3);
    let total = dims[0] * dims[1] * dims[2];
    assert_eq!(op.rows, dims[sa] * dims[sb]);
    assert_eq!(op.cols, dims[sa] * dims[sb]);
    let unpack = |idx: usize| {
        let i2 = idx % dims[2];
        let i1 = (idx / dims[2]) % dims[1];
        let i0 = idx / (dims[1] * dims[2]);
        [i0, i1, i2]
    };
    let other = 3 - sa - sb;
    let mut out: Matrix<Scal> = Matrix::zeros(total, total);
    for col in 0..total {
        let ci = unpack(col);
        let op_col = ci[sa] * dims[sb] + ci[sb];
        for row in 0..total {
            let ri = unpack(row);
            if ri[other] != ci[other] {
                continue;
            }
            let op_row = ri[sa] * dims[sb] + ri[sb];
            let v = &op[(op_row, op_col)];
            if !v.is_zero() {
                out[(row, col)] = v.clone();
            }
        }
    }
    out
}

/// Quantum Yang-Baxter equation R12 R13 R23 = R23 R13 R12 on a triple.
pub fn yang_baxter_holds(a: &Module, b: &Module, c: &Module) -> bool {
    let dims = [a.dim, b.dim, c.dim];
    let r12 = embed_pair(&rmatrix(a, b), dims, 0, 1);
    let r13 = embed_pair(&rmatrix(a, c), dims, 0, 2);
    let r23 = embed_pair(&rmatrix(b, c), dims, 1, 2);
    let lhs = r12.matmul(&r13).matmul(&r23);
    let rhs = r23.matmul(&r13).matmul(&r12);
    lhs == rhs
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
    fn r_on_two_fundamentals_matches_known_action() {
        // basis of V1 (x) V1: v0v0, v0v1, v1v0, v1v1
        let v = Module::irrep(1, 0);
        let r = rmatrix(&v, &v);
        // R(v+ (x) v+) = q^{1/2} v+ (x) v+
        assert_eq!(r[(0, 0)], ExactScalar::s_pow(1));
        // R(v- (x) v+) = q^{-1/2} (v- (x) v+ + (q - q^{-1}) v+ (x) v-)
        assert_eq!(r[(2, 2)], ExactScalar::s_pow(-1));
        assert_eq!(r[(1, 2)], ExactScalar::s_pow(-1) * (pq("q") - pq("q^-1")));
        assert_eq!(r[(3, 2)], Scal::zero());
        assert_eq!(r[(0, 2)], Scal::zero());
        // R(v+ (x) v-) = q^{-1/2} v+ (x) v-, no correction term
        assert_eq!(r[(1, 1)], ExactScalar::s_pow(-1));
        assert_eq!(r[(2, 1)], Scal::zero());
        assert_eq!(r[(3, 3)], ExactScalar::s_pow(1));
    }

    #[test]
    fn nonzero_charges_scale_r_uniformly() {
        let a = Module::irrep(1, 2);
        let b = Module::irrep(1, -1);
        let a0 = Module::irrep(1, 0);
        let b0 = Module::irrep(1, 0);
        let r = rmatrix(&a, &b);
        let r0 = rmatrix(&a0, &b0).scale(&ExactScalar::q_pow(-2));
        assert_eq!(r, r0);
    }

    #[test]
    fn braiding_intertwines_module_actions() {
        // P o R must commute with E, F, K on the tensor product
        let a = Module::irrep(1, 0);
        let b = Module::irrep(2, 1);
        let ab = Module::tensor(&a, &b);
        let ba = Module::tensor(&b, &a);
        let br = braiding(&a, &b);
        assert_eq!(br.matmul(&ab.e), ba.e.matmul(&br));
        assert_eq!(br.matmul(&ab.f), ba.f.matmul(&br));
        assert_eq!(br.matmul(&ab.k_matrix()), ba.k_matrix().matmul(&br));
    }

    #[test]
    fn yang_baxter_on_small_triples() {
        let v1 = Module::irrep(1, 0);
        let v2 = Module::irrep(2, 0);
        assert!(yang_baxter_holds(&v1, &v1, &v1));
        assert!(yang_baxter_holds(&v1, &v2, &v1));
        let w1 = Module::irrep(1, 1);
        let w2 = Module::irrep(2, -1);
        let w3 = Module::irrep(1, 2);
        assert!(yang_baxter_holds(&w1, &w2, &w3));
    }

    #[test]
    fn hecke_relation_for_the_fundamental_braiding() {
        // (PR - q^{1/2}) (PR + q^{-3/2}) = 0 on V1 (x) V1
        let v = Module::irrep(1, 0);
        let br = braiding(&v, &v);
        let id = Matrix::identity(4);
        let plus = br.sub(&id.scale(&ExactScalar::s_pow(1)));
        let minus = br.add(&id.scale(&ExactScalar::s_pow(-3)));
        assert!(plus.matmul(&minus).is_zero());
    }

    #[test]
    fn flip_squares_to_identity_on_equal_dims() {
        let p = flip(3, 3);
        assert_eq!(p.matmul(&p), Matrix::identity(9));
    }
}
