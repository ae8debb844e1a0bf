//! Open-system dynamics: the Liouvillian, its steady state and an explicit
//! time integrator used to cross-check the steady state.

mod evolve;
mod liouvillian;
mod steady;

pub use evolve::{evolve, DEFAULT_DT, DEFAULT_T_MAX};
pub use liouvillian::{build_liouvillian, vec_index, Liouvillian};
pub use steady::{
    second_smallest_singular_value, steady_state, steady_state_blocked, steady_state_dense, SteadyState,
    NEGATIVITY_TOLERANCE,
};

use alloc::vec::Vec;

use crate::operators::{hermitian_eigen, ComplexMatrix, StateVector};
use crate::{Error, Result, C64};

/// A density matrix ρ.
///
/// Construction only checks shape and finiteness; use [`DensityMatrix::check`]
/// for the physical invariants (Hermitian, unit trace, positive).
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

/// How far a density matrix is from the physical invariants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityDiagnostics {
    /// `max |ρ − ρ†|`.
    pub hermiticity: f64,
    /// `|Tr ρ − 1|`.
    pub trace_error: f64,
    pub min_eigenvalue: f64,
}

impl DensityDiagnostics {
    pub fn is_physical(&self, tol: f64, negativity: f64) -> bool {
        self.hermiticity <= tol && self.trace_error <= tol && self.min_eigenvalue >= negativity
    }
}

impl DensityMatrix {
    pub fn from_matrix(m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch { expected: m.rows(), found: m.cols() });
        }
        if !m.is_finite() {
            return Err(Error::NonFinite { time: 0.0 });
        }
        Ok(Self(m))
    }

    /// `|ψ⟩⟨ψ| / ⟨ψ|ψ⟩`.
    pub fn from_pure(psi: &StateVector) -> Self {
        let n = psi.normalized();
        Self(n.outer(&n))
    }

    /// Convex mixture `Σ p_k |ψ_k⟩⟨ψ_k|` of normalized pure states.
    pub fn mixture(terms: &[(f64, StateVector)]) -> Result<Self> {
        let dim = terms.first().map_or(0, |(_, s)| s.dim());
        let mut m = ComplexMatrix::zeros(dim, dim);
        for (p, psi) in terms {
            if psi.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: psi.dim() });
            }
            m = &m + &Self::from_pure(psi).0.scale_real(*p);
        }
        Ok(Self(m))
    }

    /// Reshapes a column-stacked vector `vec(ρ)` of length `d²`.
    pub fn from_column_stacked(v: &[C64], d: usize) -> Result<Self> {
        if v.len() != d * d {
            return Err(Error::DimensionMismatch { expected: d * d, found: v.len() });
        }
        Self::from_matrix(ComplexMatrix::from_fn(d, d, |i, j| v[vec_index(i, j, d)]))
    }

    pub fn to_column_stacked(&self) -> Vec<C64> {
        let d = self.dim();
        let mut v = alloc::vec![C64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                v[vec_index(i, j, d)] = self.0[(i, j)];
            }
        }
        v
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn hermitize(&mut self) {
        self.0.hermitize();
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        let mut h = self.0.clone();
        h.hermitize();
        Ok(hermitian_eigen(&h)?.values[0])
    }

    pub fn check(&self) -> Result<DensityDiagnostics> {
        Ok(DensityDiagnostics {
            hermiticity: self.0.hermiticity_defect(),
            trace_error: (self.trace() - C64::new(1.0, 0.0)).norm(),
            min_eigenvalue: self.min_eigenvalue()?,
        })
    }

    /// Trace distance `½ Tr|ρ − σ|` of the Hermitian parts.
    pub fn trace_distance(&self, other: &Self) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        let mut diff = &self.0 - &other.0;
        diff.hermitize();
        Ok(0.5 * hermitian_eigen(&diff)?.values.iter().map(|x| x.abs()).sum::<f64>())
    }

    /// Populations `ρ_ii`.
    pub fn populations(&self) -> Vec<f64> {
        self.0.diagonal().iter().map(|z| z.re).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn column_stacking_round_trip() {
        let m = ComplexMatrix::from_fn(3, 3, |i, j| C64::new(i as f64, j as f64));
        let rho = DensityMatrix::from_matrix(m).unwrap();
        let v = rho.to_column_stacked();
        assert_eq!(v[vec_index(2, 1, 3)], C64::new(2.0, 1.0));
        assert_eq!(v[1], C64::new(1.0, 0.0));
        assert_eq!(DensityMatrix::from_column_stacked(&v, 3).unwrap(), rho);
    }

    #[test]
    fn trace_distance_of_orthogonal_states() {
        let a = DensityMatrix::from_pure(&StateVector::basis(2, 0));
        let b = DensityMatrix::from_pure(&StateVector::basis(2, 1));
        assert!((a.trace_distance(&b).unwrap() - 1.0).abs() < 1e-14);
        assert!(a.trace_distance(&a).unwrap().abs() < 1e-14);
    }

    #[test]
    fn pure_state_diagnostics() {
        let psi = StateVector::from_vec(alloc::vec![C64::new(1.0, 0.0), C64::new(0.0, 1.0)]);
        let d = DensityMatrix::from_pure(&psi).check().unwrap();
        assert!(d.is_physical(1e-12, -1e-12));
    }

    #[test]
    fn non_square_rejected() {
        assert!(DensityMatrix::from_matrix(ComplexMatrix::zeros(2, 3)).is_err());
    }
}
