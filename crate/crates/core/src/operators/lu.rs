//! Dense LU factorization with partial (row) pivoting.

use alloc::vec::Vec;

use super::ComplexMatrix;
use crate::{Error, Result, C64};

/// `P A = L U` with unit-diagonal `L`, stored packed in one matrix.
#[derive(Clone, Debug)]
pub struct LuDecomposition {
    lu: ComplexMatrix,
    /// `perm[i]` is the original row that ended up in position `i`.
    perm: Vec<usize>,
    min_pivot: f64,
    max_pivot: f64,
}

impl LuDecomposition {
    /// Factorizes a square matrix. Fails when a pivot is exactly zero.
    pub fn new(mut a: ComplexMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch { expected: a.rows(), found: a.cols() });
        }
        let n = a.rows();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut min_pivot = f64::INFINITY;
        let mut max_pivot = 0.0f64;
        let data = a.as_mut_slice();

        for k in 0..n {
            let (mut p, mut best) = (k, data[k * n + k].norm());
            for i in k + 1..n {
                let v = data[i * n + k].norm();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            max_pivot = max_pivot.max(best);
            min_pivot = min_pivot.min(best);
            if best == 0.0 {
                return Err(Error::Singular { pivot_ratio: 0.0 });
            }
            if p != k {
                for j in 0..n {
                    data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }

            let (head, tail) = data.split_at_mut((k + 1) * n);
            let pivot_row = &head[k * n..(k + 1) * n];
            let inv = pivot_row[k].inv();
            for row in tail.chunks_exact_mut(n) {
                if row[k] == C64::new(0.0, 0.0) {
                    continue;
                }
                let l = row[k] * inv;
                row[k] = l;
                for (x, &u) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                    *x -= l * u;
                }
            }
        }
        if n == 0 {
            min_pivot = 1.0;
            max_pivot = 1.0;
        }
        Ok(Self { lu: a, perm, min_pivot, max_pivot })
    }

    pub fn dim(&self) -> usize {
        self.lu.rows()
    }

    /// Smallest over largest pivot modulus; a cheap conditioning indicator.
    pub fn pivot_ratio(&self) -> f64 {
        self.min_pivot / self.max_pivot
    }

    pub fn solve(&self, b: &[C64]) -> Result<Vec<C64>> {
        let n = self.dim();
        if b.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: b.len() });
        }
        let lu = self.lu.as_slice();
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let row = &lu[i * n..i * n + i];
            let s: C64 = row.iter().zip(&x[..i]).map(|(l, y)| l * y).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let row = &lu[i * n + i + 1..(i + 1) * n];
            let s: C64 = row.iter().zip(&x[i + 1..]).map(|(u, y)| u * y).sum();
            x[i] = (x[i] - s) / lu[i * n + i];
        }
        Ok(x)
    }

    /// Solves `A X = B` in place for a row-major right-hand side `B` with any
    /// number of columns.
    pub fn solve_matrix_in_place(&self, b: &mut ComplexMatrix) -> Result<()> {
        let n = self.dim();
        if b.rows() != n {
            return Err(Error::DimensionMismatch { expected: n, found: b.rows() });
        }
        let m = b.cols();
        let lu = self.lu.as_slice();

        let src = b.clone();
        for (i, &p) in self.perm.iter().enumerate() {
            b.row_mut(i).copy_from_slice(src.row(p));
        }
        drop(src);

        let data = b.as_mut_slice();
        for i in 1..n {
            let (done, rest) = data.split_at_mut(i * m);
            let target = &mut rest[..m];
            for (k, &l) in lu[i * n..i * n + i].iter().enumerate() {
                if l == C64::new(0.0, 0.0) {
                    continue;
                }
                for (t, &y) in target.iter_mut().zip(&done[k * m..(k + 1) * m]) {
                    *t -= l * y;
                }
            }
        }
        for i in (0..n).rev() {
            let (head, solved) = data.split_at_mut((i + 1) * m);
            let target = &mut head[i * m..];
            for (off, &u) in lu[i * n + i + 1..(i + 1) * n].iter().enumerate() {
                if u == C64::new(0.0, 0.0) {
                    continue;
                }
                for (t, &y) in target.iter_mut().zip(&solved[off * m..(off + 1) * m]) {
                    *t -= u * y;
                }
            }
            let inv = lu[i * n + i].inv();
            for t in target.iter_mut() {
                *t *= inv;
            }
        }
        Ok(())
    }

    /// Solves `A† x = b` with the same factorization.
    pub fn solve_adjoint(&self, b: &[C64]) -> Result<Vec<C64>> {
        // A = Pᵀ L U  ⇒  A† = U† L† P, so solve U† z = b, L† w = z, x = Pᵀ w.
        let n = self.dim();
        if b.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: b.len() });
        }
        let lu = self.lu.as_slice();
        let mut z = b.to_vec();
        for i in 0..n {
            let mut s = z[i];
            for k in 0..i {
                s -= lu[k * n + i].conj() * z[k];
            }
            z[i] = s / lu[i * n + i].conj();
        }
        for i in (0..n).rev() {
            let mut s = z[i];
            for k in i + 1..n {
                s -= lu[k * n + i].conj() * z[k];
            }
            z[i] = s;
        }
        let mut x = alloc::vec![C64::new(0.0, 0.0); n];
        for (i, &p) in self.perm.iter().enumerate() {
            x[p] = z[i];
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn test_matrix(n: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, n, |i, j| {
            let x = ((i * 7 + j * 13) % 11) as f64 - 5.0;
            C64::new(x, ((i + 2 * j) % 5) as f64 - 2.0) + if i == j { C64::new(0.5, 0.0) } else { C64::new(0.0, 0.0) }
        })
    }

    #[test]
    fn solves_with_pivoting() {
        // Zero leading entry forces a row swap.
        let a = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 2.0, 3.0]).unwrap();
        let lu = LuDecomposition::new(a.clone()).unwrap();
        let x = lu.solve(&[C64::new(1.0, 0.0), C64::new(5.0, 0.0)]).unwrap();
        assert!((x[0] - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((x[1] - C64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let a = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 2.0, 4.0]).unwrap();
        assert!(matches!(LuDecomposition::new(a), Err(Error::Singular { .. })));
    }

    #[test]
    fn residuals_are_small() {
        let n = 17;
        let a = test_matrix(n);
        let lu = LuDecomposition::new(a.clone()).unwrap();
        let b: Vec<C64> = (0..n).map(|i| C64::new(i as f64, 1.0)).collect();

        let x = lu.solve(&b).unwrap();
        let r = a.mul_vec(&x).unwrap();
        assert!(r.iter().zip(&b).all(|(p, q)| (p - q).norm() < 1e-10));

        let y = lu.solve_adjoint(&b).unwrap();
        let r = a.dagger().mul_vec(&y).unwrap();
        assert!(r.iter().zip(&b).all(|(p, q)| (p - q).norm() < 1e-10));

        let rhs = ComplexMatrix::from_fn(n, 3, |i, j| C64::new((i + j) as f64, -(j as f64)));
        let mut sol = rhs.clone();
        lu.solve_matrix_in_place(&mut sol).unwrap();
        assert!(a.matmul(&sol).unwrap().max_abs_diff(&rhs) < 1e-10);
        for j in 0..3 {
            let col = lu.solve(&rhs.column(j)).unwrap();
            assert!(col.iter().zip(sol.column(j)).all(|(p, q)| (p - q).norm() < 1e-12));
        }
        assert!(lu.pivot_ratio() > 0.0 && lu.pivot_ratio() <= 1.0);
        assert!(lu.solve(&vec![C64::new(0.0, 0.0); n + 1]).is_err());
    }
}
