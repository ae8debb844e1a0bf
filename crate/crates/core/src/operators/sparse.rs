use alloc::vec;
use alloc::vec::Vec;

use super::ComplexMatrix;
use crate::C64;

/// Compressed sparse row matrix.
///
/// Used for superoperators, whose dense form would be `D² × D²`, and for
/// operator-times-density-matrix products in the time integrator.
#[derive(Clone, Debug, PartialEq)]
pub struct CsrMatrix {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<C64>,
}

impl CsrMatrix {
    /// Assembles from `(row, col, value)` triplets; duplicates are summed and
    /// exact zeros dropped.
    pub fn from_triplets(rows: usize, cols: usize, mut triplets: Vec<(usize, usize, C64)>) -> Self {
        triplets.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0usize; rows + 1];
        let mut col_idx = Vec::with_capacity(triplets.len());
        let mut values: Vec<C64> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        let mut row_of = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r}, {c}) outside {rows}x{cols}");
            if last == Some((r, c)) {
                *values.last_mut().unwrap() += v;
            } else {
                col_idx.push(c);
                values.push(v);
                row_of.push(r);
                last = Some((r, c));
            }
        }
        let mut keep_cols = Vec::with_capacity(col_idx.len());
        let mut keep_vals = Vec::with_capacity(values.len());
        for ((c, v), r) in col_idx.into_iter().zip(values).zip(row_of) {
            if v != C64::new(0.0, 0.0) {
                keep_cols.push(c);
                keep_vals.push(v);
                row_ptr[r + 1] += 1;
            }
        }
        for r in 0..rows {
            row_ptr[r + 1] += row_ptr[r];
        }
        Self { rows, cols, row_ptr, col_idx: keep_cols, values: keep_vals }
    }

    pub fn from_dense(m: &ComplexMatrix) -> Self {
        Self::from_triplets(m.rows(), m.cols(), m.nonzeros().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// `(column, value)` pairs of row `r`.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, C64)> + '_ {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        self.col_idx[span.clone()].iter().copied().zip(self.values[span].iter().copied())
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.row(r).find(|&(j, _)| j == c).map_or(C64::new(0.0, 0.0), |(_, v)| v)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..self.rows).flat_map(move |r| self.row(r).map(move |(c, v)| (r, c, v)))
    }

    pub fn mul_vec(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(x.len(), self.cols, "dimension mismatch");
        (0..self.rows).map(|r| self.row(r).map(|(c, v)| v * x[c]).sum()).collect()
    }

    /// `y^T A` for a row vector `y`, i.e. `A^T y`.
    pub fn left_mul_vec(&self, y: &[C64]) -> Vec<C64> {
        assert_eq!(y.len(), self.rows, "dimension mismatch");
        let mut out = vec![C64::new(0.0, 0.0); self.cols];
        for (r, &yr) in y.iter().enumerate() {
            for (c, v) in self.row(r) {
                out[c] += yr * v;
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.values.iter().map(|z| z.norm_sqr()).sum::<f64>())
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.rows, self.cols);
        for (r, c, v) in self.triplets() {
            m[(r, c)] = v;
        }
        m
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_triplets(self.cols, self.rows, self.triplets().map(|(r, c, v)| (c, r, v.conj())).collect())
    }

    /// `out += self · dense` for row-major square `dense` of side `self.cols()`.
    pub fn mul_dense_acc(&self, dense: &[C64], n_cols: usize, scale: C64, out: &mut [C64]) {
        for r in 0..self.rows {
            let out_row = &mut out[r * n_cols..(r + 1) * n_cols];
            for (c, v) in self.row(r) {
                let coeff = v * scale;
                for (o, &d) in out_row.iter_mut().zip(&dense[c * n_cols..(c + 1) * n_cols]) {
                    *o += coeff * d;
                }
            }
        }
    }

    /// `out += scale · dense · self†` for row-major `dense` with `self.cols()` columns.
    pub fn dense_mul_adjoint_acc(&self, dense: &[C64], n_rows: usize, scale: C64, out: &mut [C64]) {
        let k = self.cols;
        let m = self.rows;
        for i in 0..n_rows {
            let d_row = &dense[i * k..(i + 1) * k];
            let out_row = &mut out[i * m..(i + 1) * m];
            for (j, o) in out_row.iter_mut().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for (c, v) in self.row(j) {
                    acc += d_row[c] * v.conj();
                }
                *o += acc * scale;
            }
        }
    }
}
