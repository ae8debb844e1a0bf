use alloc::vec::Vec;

use crate::model::CollapseOperator;
use crate::operators::{ComplexMatrix, CsrMatrix};
use crate::{Error, Result, C64};

/// Column-stacking index of `ρ_ij` in `vec(ρ)`.
#[inline]
pub const fn vec_index(i: usize, j: usize, d: usize) -> usize {
    j * d + i
}

/// Generator `L` of `dρ/dt = L[ρ]` acting on column-stacked density
/// matrices, stored sparse (`D² × D²`).
#[derive(Clone, Debug)]
pub struct Liouvillian {
    dim: usize,
    matrix: CsrMatrix,
    grading: Option<Vec<i32>>,
}

/// Assembles
///
/// ```text
/// L = −i (I⊗H − Hᵀ⊗I) + Σ_k r_k [ C̄_k⊗C_k − ½ I⊗(C_k†C_k) − ½ (C_k†C_k)ᵀ⊗I ]
/// ```
///
/// using `vec(AXB) = (Bᵀ⊗A) vec X`.
pub fn build_liouvillian(h: &ComplexMatrix, cs: &[CollapseOperator]) -> Result<Liouvillian> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch { expected: h.rows(), found: h.cols() });
    }
    let deviation = h.hermiticity_defect();
    if deviation > 1e-12 * h.max_abs().max(1.0) {
        return Err(Error::NotHermitian { deviation });
    }
    let d = h.rows();
    for c in cs {
        if c.op.rows() != d || c.op.cols() != d {
            return Err(Error::DimensionMismatch { expected: d, found: c.op.rows() });
        }
        if !(c.rate >= 0.0) {
            return Err(Error::InvalidParameter { name: "rate", reason: "collapse rates must be non-negative" });
        }
    }

    // K = −iH − ½ Σ r C†C collects every term of the form I⊗K and K̄⊗I.
    let mut k = h.scale(C64::new(0.0, -1.0));
    for c in cs {
        let cdc = &c.op.dagger() * &c.op;
        k = &k - &cdc.scale_real(0.5 * c.rate);
    }

    let mut triplets = Vec::new();
    for (i, kk, v) in k.nonzeros() {
        // I ⊗ K
        for j in 0..d {
            triplets.push((vec_index(i, j, d), vec_index(kk, j, d), v));
        }
        // K̄ ⊗ I: row (row = i', col = j) picks up conj(K[j, l]) ρ_{i' l}.
        for r in 0..d {
            triplets.push((vec_index(r, i, d), vec_index(r, kk, d), v.conj()));
        }
    }
    for c in cs {
        if c.rate == 0.0 {
            continue;
        }
        let nz: Vec<_> = c.op.nonzeros().collect();
        // C̄ ⊗ C: (CρC†)_{ij} = Σ_{kl} C_ik ρ_kl conj(C_jl).
        for &(i, kk, a) in &nz {
            for &(j, l, b) in &nz {
                triplets.push((vec_index(i, j, d), vec_index(kk, l, d), a * b.conj() * c.rate));
            }
        }
    }

    Ok(Liouvillian { dim: d, matrix: CsrMatrix::from_triplets(d * d, d * d, triplets), grading: None })
}

impl Liouvillian {
    /// Hilbert-space dimension `D`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CsrMatrix {
        &self.matrix
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        self.matrix.to_dense()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.frobenius_norm()
    }

    /// Attaches an integer label per Hilbert basis state (for the model, the
    /// excitation number). Coherences `|i⟩⟨j|` are then grouped by order
    /// `q_i − q_j`, and the steady-state solver can eliminate block by block.
    ///
    /// Fails unless every entry of `L` connects orders differing by at most one.
    pub fn with_grading(mut self, grading: Vec<i32>) -> Result<Self> {
        if grading.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: grading.len() });
        }
        let d = self.dim;
        let order = |v: usize| grading[v % d] - grading[v / d];
        for (r, c, _) in self.matrix.triplets() {
            let (from, to) = (order(c), order(r));
            if (from - to).abs() > 1 {
                return Err(Error::GradingViolation { from, to });
            }
        }
        self.grading = Some(grading);
        Ok(self)
    }

    pub fn grading(&self) -> Option<&[i32]> {
        self.grading.as_deref()
    }

    /// `L[ρ]` for a `D × D` matrix.
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        if rho.rows() != self.dim || rho.cols() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: rho.rows() });
        }
        let d = self.dim;
        let mut v = alloc::vec![C64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                v[vec_index(i, j, d)] = rho[(i, j)];
            }
        }
        let out = self.matrix.mul_vec(&v);
        Ok(ComplexMatrix::from_fn(d, d, |i, j| out[vec_index(i, j, d)]))
    }

    /// `‖t L‖₂` where `t = vec(I)ᵀ` is the trace functional; zero for a
    /// trace-preserving generator.
    pub fn trace_defect(&self) -> f64 {
        let d = self.dim;
        let mut t = alloc::vec![C64::new(0.0, 0.0); d * d];
        for i in 0..d {
            t[vec_index(i, i, d)] = C64::new(1.0, 0.0);
        }
        libm::sqrt(self.matrix.left_mul_vec(&t).iter().map(|z| z.norm_sqr()).sum::<f64>())
    }
}
