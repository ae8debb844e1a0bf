//! Rotating-frame Hamiltonian and dissipation channels.
//!
//! With ħ = 1 and every frequency in units of κ,
//!
//! ```text
//! H = −Δ (σ¹ee + σ²ee + σ¹ss + σ²ss + a†a)
//!     + Σᵢ gᵢ (a σⁱeg + a† σⁱge)
//!     + J (σ¹eg σ²ge + σ¹es σ²se + h.c.)
//!     + Ω_d Σᵢ (σⁱes + σⁱse)
//!     + Ω_p Σᵢ (σⁱeg + σⁱge)
//! ```
//!
//! The cavity detuning term enters once, not once per atom. Atom 1 sits at an
//! antinode, so `g₁ = g` and `g₂ = g cos φ_z`.

use alloc::vec::Vec;

use crate::hilbert::{AtomLevel, SpaceConfig};
use crate::operators::{atomic_transition, field_annihilation, Atom, ComplexMatrix};
use crate::{Error, Result, C64};

use AtomLevel::{Excited as E, Ground as G, Metastable as S};

/// Every physical constant of the model, in units of κ.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct SystemParams {
    /// Pump detuning Δ (common to cavity, |e⟩ and |s⟩).
    pub delta: f64,
    /// Peak atom-field coupling g.
    pub g: f64,
    /// Placement phase φ_z between the atoms, radians in `[0, 2π)`.
    pub phi_z: f64,
    /// Dipole-dipole coupling J.
    #[cfg_attr(feature = "serde", serde(rename = "J"))]
    pub j: f64,
    /// Pump Rabi frequency Ω_p on `|g⟩ ↔ |e⟩`.
    pub omega_p: f64,
    /// Drive Rabi frequency Ω_d on `|s⟩ ↔ |e⟩`.
    pub omega_d: f64,
    /// Cavity decay rate; the unit of every other quantity.
    pub kappa: f64,
    /// Decay `|e⟩ → |g⟩`.
    #[cfg_attr(feature = "serde", serde(rename = "gammaGE"))]
    pub gamma_ge: f64,
    /// Decay `|e⟩ → |s⟩`.
    #[cfg_attr(feature = "serde", serde(rename = "gammaSE"))]
    pub gamma_se: f64,
    /// Decay `|s⟩ → |g⟩`.
    #[cfg_attr(feature = "serde", serde(rename = "gammaGS"))]
    pub gamma_gs: f64,
    /// Fock cutoff N.
    pub fock_cutoff: usize,
}

/// Default Fock cutoff for single-point solves.
pub const DEFAULT_CUTOFF: usize = 7;

impl Default for SystemParams {
    /// The symmetric-coupling baseline: φ_z = 0, Ω_p = 0.2, g = 20,
    /// γ_ge = γ_se = 0.01, γ_gs = 1, no DDI and no drive.
    fn default() -> Self {
        Self {
            delta: 0.0,
            g: 20.0,
            phi_z: 0.0,
            j: 0.0,
            omega_p: 0.2,
            omega_d: 0.0,
            kappa: 1.0,
            gamma_ge: 0.01,
            gamma_se: 0.01,
            gamma_gs: 1.0,
            fock_cutoff: DEFAULT_CUTOFF,
        }
    }
}

impl SystemParams {
    pub fn validate(&self) -> Result<()> {
        let finite = [
            ("delta", self.delta),
            ("g", self.g),
            ("phiZ", self.phi_z),
            ("J", self.j),
            ("omegaP", self.omega_p),
            ("omegaD", self.omega_d),
            ("kappa", self.kappa),
            ("gammaGE", self.gamma_ge),
            ("gammaSE", self.gamma_se),
            ("gammaGS", self.gamma_gs),
        ];
        for (name, v) in finite {
            if !v.is_finite() {
                return Err(Error::InvalidParameter { name, reason: "must be finite" });
            }
        }
        if self.kappa <= 0.0 {
            return Err(Error::InvalidParameter { name: "kappa", reason: "must be positive" });
        }
        for (name, v) in [("gammaGE", self.gamma_ge), ("gammaSE", self.gamma_se), ("gammaGS", self.gamma_gs)] {
            if v < 0.0 {
                return Err(Error::InvalidParameter { name, reason: "decay rates must be non-negative" });
            }
        }
        if self.g < 0.0 {
            return Err(Error::InvalidParameter { name: "g", reason: "must be non-negative" });
        }
        if !(0.0..core::f64::consts::TAU).contains(&self.phi_z) {
            return Err(Error::InvalidParameter { name: "phiZ", reason: "must lie in [0, 2π)" });
        }
        SpaceConfig::new(self.fock_cutoff)?;
        Ok(())
    }

    pub fn space(&self) -> Result<SpaceConfig> {
        SpaceConfig::new(self.fock_cutoff)
    }

    /// `(g₁, g₂) = (g, g cos φ_z)`.
    pub fn coupling_strengths(&self) -> (f64, f64) {
        coupling_strengths(self)
    }

    /// `g_± = g (1 ± cos φ_z)`.
    pub fn collective_couplings(&self) -> (f64, f64) {
        let (g1, g2) = self.coupling_strengths();
        (g1 + g2, g1 - g2)
    }
}

/// Position-dependent couplings with atom 1 at an antinode.
pub fn coupling_strengths(p: &SystemParams) -> (f64, f64) {
    (p.g, p.g * libm::cos(p.phi_z))
}

/// A dissipation channel `rate · D[op]`.
#[derive(Clone, Debug)]
pub struct CollapseOperator {
    pub rate: f64,
    pub op: ComplexMatrix,
}

/// Builds `H` for the given parameters.
pub fn build_hamiltonian(p: &SystemParams) -> Result<ComplexMatrix> {
    p.validate()?;
    let cfg = p.space()?;
    let dim = cfg.dim();
    let (g1, g2) = p.coupling_strengths();
    let a = field_annihilation(&cfg);
    let ad = a.dagger();
    let sigma = |atom, top, bot| atomic_transition(atom, top, bot, &cfg);

    let mut h = ComplexMatrix::zeros(dim, dim);
    let mut add = |m: &ComplexMatrix, c: f64| {
        if c != 0.0 {
            h = &h + &m.scale_real(c);
        }
    };

    let mut bare = &ad * &a;
    for atom in Atom::BOTH {
        bare = &bare + &sigma(atom, E, E);
        bare = &bare + &sigma(atom, S, S);
    }
    add(&bare, -p.delta);

    for (atom, gi) in [(Atom::First, g1), (Atom::Second, g2)] {
        let jc = &(&a * &sigma(atom, E, G)) + &(&ad * &sigma(atom, G, E));
        add(&jc, gi);
        add(&(&sigma(atom, E, S) + &sigma(atom, S, E)), p.omega_d);
        add(&(&sigma(atom, E, G) + &sigma(atom, G, E)), p.omega_p);
    }

    let exchange = &(&sigma(Atom::First, E, G) * &sigma(Atom::Second, G, E))
        + &(&sigma(Atom::First, E, S) * &sigma(Atom::Second, S, E));
    add(&(&exchange + &exchange.dagger()), p.j);

    Ok(h)
}

/// The seven dissipation channels: cavity loss `(κ, a)` followed by
/// `(γ_ge, σⁱge)`, `(γ_se, σⁱse)`, `(γ_gs, σⁱgs)` for each atom. Channels with
/// zero rate are omitted.
pub fn collapse_operators(p: &SystemParams) -> Result<Vec<CollapseOperator>> {
    p.validate()?;
    let cfg = p.space()?;
    let mut ops = Vec::with_capacity(7);
    ops.push(CollapseOperator { rate: p.kappa, op: field_annihilation(&cfg) });
    for atom in Atom::BOTH {
        for (rate, top, bot) in [(p.gamma_ge, G, E), (p.gamma_se, S, E), (p.gamma_gs, G, S)] {
            if rate > 0.0 {
                ops.push(CollapseOperator { rate, op: atomic_transition(atom, top, bot, &cfg) });
            }
        }
    }
    Ok(ops)
}

/// Total excitation operator `a†a + Σᵢ (σⁱee + σⁱss)`; conserved by `H`
/// when the pump is off.
pub fn excitation_operator(cfg: &SpaceConfig) -> ComplexMatrix {
    let diag: Vec<C64> = (0..cfg.dim()).map(|i| C64::new(cfg.excitation(i).unwrap() as f64, 0.0)).collect();
    ComplexMatrix::from_diagonal(&diag)
}
