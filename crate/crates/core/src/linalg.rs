//! Dense exact linear algebra over any `Scalar`. Sizes in this crate stay in
//! the hundreds, so plain Gaussian elimination with exact arithmetic is both
//! simple and fast enough.

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Matrix<T> {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix<T> {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Matrix<T> {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Matrix<T> {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn matmul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matmul");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.clone() * b.clone();
                    out[(i, j)] = out[(i, j)].clone() + prod;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() + other[(i, j)].clone()
        })
    }

    pub fn sub(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - other[(i, j)].clone()
        })
    }

    pub fn scale(&self, c: &T) -> Matrix<T> {
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() * c.clone())
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in apply");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for j in 0..self.cols {
                    if self[(i, j)].is_zero() || v[j].is_zero() {
                        continue;
                    }
                    acc = acc + self[(i, j)].clone() * v[j].clone();
                }
                acc
            })
            .collect()
    }

    /// Reduce in place to reduced row echelon form; returns the pivot column
    /// of each pivot row, in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let pivot_row = (r..self.rows).find(|&i| !self[(i, c)].is_zero());
            let Some(p) = pivot_row else { continue };
            self.swap_rows(r, p);
            let inv = self[(r, c)].inv();
            for j in c..self.cols {
                let v = self[(r, j)].clone() * inv.clone();
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let factor = self[(i, c)].clone();
                for j in c..self.cols {
                    let v = self[(i, j)].clone() - factor.clone() * self[(r, j)].clone();
                    self[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.rref().len()
    }

    /// Basis of the right nullspace (solutions of `self * x = 0`).
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let mut work = self.clone();
        let pivots = work.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![T::zero(); self.cols];
            v[f] = T::one();
            for (r, &pc) in pivots.iter().enumerate() {
                // x_pc = -sum over free columns of row entry
                let coeff = work[(r, f)].clone();
                if !coeff.is_zero() {
                    v[pc] = -coeff;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `self * x = rhs` for one solution; `None` if inconsistent.
    pub fn solve(&self, rhs: &[T]) -> Option<Vec<T>> {
        assert_eq!(self.rows, rhs.len());
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = rhs[i].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![T::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// Solve `self * X = rhs` column by column; `None` if any column is
    /// inconsistent.
    pub fn solve_matrix(&self, rhs: &Matrix<T>) -> Option<Matrix<T>> {
        assert_eq!(self.rows, rhs.rows);
        let mut cols = Vec::with_capacity(rhs.cols);
        for j in 0..rhs.cols {
            let b: Vec<T> = (0..rhs.rows).map(|i| rhs[(i, j)].clone()).collect();
            cols.push(self.solve(&b)?);
        }
        Some(Matrix::from_fn(self.cols, rhs.cols, |i, j| {
            cols[j][i].clone()
        }))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qr, ExactScalar};
    use num_rational::BigRational;
    use num_traits::Zero;

    fn m_rat(rows: Vec<Vec<i64>>) -> Matrix<BigRational> {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(qr).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_and_rref() {
        let a = m_rat(vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        assert_eq!(Matrix::<BigRational>::identity(4).rank(), 4);
        assert_eq!(Matrix::<BigRational>::zeros(3, 5).rank(), 0);
    }

    #[test]
    fn nullspace_solves_homogeneous_system() {
        let a = m_rat(vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            let img = a.apply(v);
            assert!(img.iter().all(|x| x.is_zero()));
        }
        // rank + nullity = cols
        assert_eq!(a.rank() + ns.len(), a.cols);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m_rat(vec![vec![2, 0], vec![0, 3]]);
        let x = a.solve(&[qr(4), qr(9)]).unwrap();
        assert_eq!(x, vec![qr(2), qr(3)]);
        let singular = m_rat(vec![vec![1, 1], vec![1, 1]]);
        assert!(singular.solve(&[qr(1), qr(2)]).is_none());
        assert!(singular.solve(&[qr(1), qr(1)]).is_some());
    }

    #[test]
    fn works_over_the_symbolic_field() {
        // [[q, 1], [1, q^-1]] has rank 1: rows are proportional
        let q = ExactScalar::q();
        let a = Matrix::from_rows(vec![
            vec![q.clone(), ExactScalar::from_int(1)],
            vec![ExactScalar::from_int(1), q.inv()],
        ]);
        assert_eq!(a.rank(), 1);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.apply(&ns[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn matmul_identity_and_transpose() {
        let a = m_rat(vec![vec![1, 2], vec![3, 4], vec![5, 6]]);
        let id = Matrix::<BigRational>::identity(2);
        assert_eq!(a.matmul(&id), a);
        assert_eq!(a.transpose().rows, 2);
        assert_eq!(a.transpose()[(1, 2)], qr(6));
    }

    #[test]
    fn solve_matrix_round_trip() {
        let a = m_rat(vec![vec![1, 1], vec![0, 1]]);
        let b = m_rat(vec![vec![3, 1], vec![1, 0]]);
        let x = a.solve_matrix(&b).unwrap();
        assert_eq!(a.matmul(&x), b);
    }
}
