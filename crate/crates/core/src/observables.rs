//! Photon statistics of the cavity field.
//!
//! The normally ordered moments `⟨a†ᵏ aᵏ⟩` are evaluated on the full
//! composite ρ; `a` acts as the identity on the atoms, so no partial trace is
//! needed.

use crate::hilbert::SpaceConfig;
use crate::model::{build_hamiltonian, collapse_operators, SystemParams};
use crate::operators::{expectation, normal_ordered_moment};
use crate::solver::{build_liouvillian, steady_state, DensityMatrix, SteadyState};
use crate::{Error, Result};

/// Below this `⟨a†a⟩` the correlation functions are reported as undefined.
pub const LOW_SIGNAL_THRESHOLD: f64 = 1e-12;

/// `⟨a†ᵏ aᵏ⟩`. The imaginary part of the trace is discarded.
pub fn field_moment(rho: &DensityMatrix, k: u32) -> Result<f64> {
    let cfg = SpaceConfig::from_dim(rho.dim())?;
    Ok(expectation(&normal_ordered_moment(&cfg, k), rho)?.re)
}

/// `⟨a†a⟩`.
pub fn mean_photon_number(rho: &DensityMatrix) -> Result<f64> {
    field_moment(rho, 1)
}

fn normalized_moment(rho: &DensityMatrix, k: u32) -> Result<f64> {
    let n = mean_photon_number(rho)?;
    if !(n > LOW_SIGNAL_THRESHOLD) {
        return Err(Error::LowSignal { mean: n });
    }
    Ok(field_moment(rho, k)? / libm::pow(n, k as f64))
}

/// `g²(0) = ⟨a†²a²⟩ / ⟨a†a⟩²`.
pub fn g2(rho: &DensityMatrix) -> Result<f64> {
    normalized_moment(rho, 2)
}

/// `g³(0) = ⟨a†³a³⟩ / ⟨a†a⟩³`.
pub fn g3(rho: &DensityMatrix) -> Result<f64> {
    normalized_moment(rho, 3)
}

/// Photon-statistics regime at one operating point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Blockade {
    /// `g² < 1`.
    SinglePhoton,
    /// `g² > 1` and `g³ < 1`.
    TwoPhoton,
    None,
    /// Correlations undefined (low signal).
    Undefined,
}

pub fn classify(g2: f64, g3: f64) -> Blockade {
    if !(g2.is_finite() && g3.is_finite()) {
        Blockade::Undefined
    } else if g2 < 1.0 {
        Blockade::SinglePhoton
    } else if g2 > 1.0 && g3 < 1.0 {
        Blockade::TwoPhoton
    } else {
        Blockade::None
    }
}

/// Observables at one steady state.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PointResult {
    pub delta: f64,
    #[cfg_attr(feature = "serde", serde(rename = "meanN"))]
    pub mean_n: f64,
    pub g2: f64,
    pub g3: f64,
    #[cfg_attr(feature = "serde", serde(rename = "log10g2"))]
    pub log10_g2: f64,
    #[cfg_attr(feature = "serde", serde(rename = "log10g3"))]
    pub log10_g3: f64,
    /// Relative steady-state residual `‖L vec ρ‖ / ‖L‖_F`.
    pub residual: f64,
    #[cfg_attr(feature = "serde", serde(rename = "lowSignal"))]
    pub low_signal: bool,
}

impl PointResult {
    /// Evaluates the observables of `rho`. Undefined correlations are `NaN`.
    pub fn from_state(delta: f64, rho: &DensityMatrix, residual: f64) -> Result<Self> {
        let mean_n = mean_photon_number(rho)?;
        let low_signal = !(mean_n > LOW_SIGNAL_THRESHOLD);
        let (g2, g3) = if low_signal {
            (f64::NAN, f64::NAN)
        } else {
            (field_moment(rho, 2)? / (mean_n * mean_n), field_moment(rho, 3)? / (mean_n * mean_n * mean_n))
        };
        Ok(Self { delta, mean_n, g2, g3, log10_g2: libm::log10(g2), log10_g3: libm::log10(g3), residual, low_signal })
    }

    pub fn blockade(&self) -> Blockade {
        classify(self.g2, self.g3)
    }
}

/// Full pipeline for one parameter set: Hamiltonian, Liouvillian, steady
/// state, observables.
pub fn solve_point(p: &SystemParams) -> Result<(SteadyState, PointResult)> {
    let h = build_hamiltonian(p)?;
    let cs = collapse_operators(p)?;
    let l = build_liouvillian(&h, &cs)?.with_grading(p.space()?.excitation_grading())?;
    let ss = steady_state(&l)?;
    let point = PointResult::from_state(p.delta, &ss.rho, ss.relative_residual())?;
    Ok((ss, point))
}

/// [`solve_point`] without the density matrix.
pub fn steady_point(p: &SystemParams) -> Result<PointResult> {
    solve_point(p).map(|(_, r)| r)
}
