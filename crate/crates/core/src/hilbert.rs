//! Composite Hilbert space: atom 1 ⊗ atom 2 ⊗ truncated Fock space.
//!
//! Basis states `|l1, l2, n⟩` are flattened atom-1-major, then atom 2, then
//! photon number:
//!
//! ```text
//! index = (code(l1) · 3 + code(l2)) · (N + 1) + n
//! ```
//!
//! This ordering matches `kron(atom1, kron(atom2, fock))` and is used by every
//! other module.

use alloc::vec::Vec;

use crate::operators::StateVector;
use crate::{Error, Result, C64};

/// One level of a Λ-type atom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomLevel {
    /// `|g⟩`, coupled to `|e⟩` by the cavity and the pump.
    Ground,
    /// `|s⟩`, coupled to `|e⟩` by the classical drive.
    Metastable,
    /// `|e⟩`.
    Excited,
}

impl AtomLevel {
    pub const ALL: [AtomLevel; 3] = [AtomLevel::Ground, AtomLevel::Metastable, AtomLevel::Excited];

    /// Stable integer code: g → 0, s → 1, e → 2.
    pub const fn code(self) -> usize {
        match self {
            AtomLevel::Ground => 0,
            AtomLevel::Metastable => 1,
            AtomLevel::Excited => 2,
        }
    }

    pub const fn from_code(code: usize) -> Option<Self> {
        match code {
            0 => Some(AtomLevel::Ground),
            1 => Some(AtomLevel::Metastable),
            2 => Some(AtomLevel::Excited),
            _ => None,
        }
    }

    /// Number of excitation quanta carried by the level (`s` and `e` count
    /// one each; the drive exchanges them without changing the count).
    pub const fn excitation(self) -> usize {
        match self {
            AtomLevel::Ground => 0,
            AtomLevel::Metastable | AtomLevel::Excited => 1,
        }
    }

    pub const fn symbol(self) -> char {
        match self {
            AtomLevel::Ground => 'g',
            AtomLevel::Metastable => 's',
            AtomLevel::Excited => 'e',
        }
    }
}

/// Smallest cutoff that still resolves two-photon statistics.
pub const MIN_CUTOFF: usize = 2;

/// Truncation of the composite space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpaceConfig {
    cutoff: usize,
}

impl SpaceConfig {
    pub fn new(cutoff: usize) -> Result<Self> {
        if cutoff < MIN_CUTOFF {
            return Err(Error::CutoffTooSmall { cutoff, min: MIN_CUTOFF });
        }
        Ok(Self { cutoff })
    }

    /// Recovers the configuration from a full-space dimension `9 (N + 1)`.
    pub fn from_dim(dim: usize) -> Result<Self> {
        if dim % 9 != 0 || dim < 9 {
            return Err(Error::DimensionMismatch { expected: 9 * (MIN_CUTOFF + 1), found: dim });
        }
        Self::new(dim / 9 - 1)
    }

    /// Maximum retained photon number `N`.
    pub const fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub const fn fock_dim(&self) -> usize {
        self.cutoff + 1
    }

    pub const fn dim(&self) -> usize {
        9 * (self.cutoff + 1)
    }

    pub fn flatten(&self, l1: AtomLevel, l2: AtomLevel, n: usize) -> Result<usize> {
        if n > self.cutoff {
            return Err(Error::PhotonOutOfRange { n, cutoff: self.cutoff });
        }
        Ok((l1.code() * 3 + l2.code()) * self.fock_dim() + n)
    }

    pub fn unflatten(&self, index: usize) -> Result<(AtomLevel, AtomLevel, usize)> {
        if index >= self.dim() {
            return Err(Error::IndexOutOfRange { index, dim: self.dim() });
        }
        let f = self.fock_dim();
        let pair = index / f;
        // Both codes are < 3 because index < 9 f.
        let l1 = AtomLevel::from_code(pair / 3).unwrap();
        let l2 = AtomLevel::from_code(pair % 3).unwrap();
        Ok((l1, l2, index % f))
    }

    /// Total excitation number `n + exc(l1) + exc(l2)` of a basis state.
    pub fn excitation(&self, index: usize) -> Result<usize> {
        let (l1, l2, n) = self.unflatten(index)?;
        Ok(n + l1.excitation() + l2.excitation())
    }

    /// Excitation number of every basis state, in flat order.
    pub fn excitation_grading(&self) -> Vec<i32> {
        (0..self.dim()).map(|i| self.excitation(i).unwrap() as i32).collect()
    }

    /// Product basis vector `|l1, l2, n⟩`.
    pub fn product_state(&self, l1: AtomLevel, l2: AtomLevel, n: usize) -> Result<StateVector> {
        Ok(StateVector::basis(self.dim(), self.flatten(l1, l2, n)?))
    }
}

/// Collective two-atom states used to block-diagonalize the undriven
/// Hamiltonian.
///
/// The symmetric and antisymmetric combinations are
/// `|±¹⟩ = (|eg⟩ ± |ge⟩)/√2`, `|±²⟩ = (|sg⟩ ± |gs⟩)/√2` and
/// `|±³⟩ = (|es⟩ ± |se⟩)/√2`. The third pair carries two atomic excitations,
/// so inside the `n`-excitation manifold it appears with `n − 2` photons.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CollectiveStateKind {
    GG,
    SS,
    EE,
    Plus1,
    Minus1,
    Plus2,
    Minus2,
    Plus3,
    Minus3,
}

impl CollectiveStateKind {
    pub const ALL: [CollectiveStateKind; 9] = [
        CollectiveStateKind::GG,
        CollectiveStateKind::SS,
        CollectiveStateKind::EE,
        CollectiveStateKind::Plus1,
        CollectiveStateKind::Minus1,
        CollectiveStateKind::Plus2,
        CollectiveStateKind::Minus2,
        CollectiveStateKind::Plus3,
        CollectiveStateKind::Minus3,
    ];

    /// Atomic excitation count of the state.
    pub const fn atomic_excitation(self) -> usize {
        use CollectiveStateKind::*;
        match self {
            GG => 0,
            Plus1 | Minus1 | Plus2 | Minus2 => 1,
            SS | EE | Plus3 | Minus3 => 2,
        }
    }
}

/// Normalized collective state with `n` photons.
pub fn collective_state(kind: CollectiveStateKind, n: usize, cfg: &SpaceConfig) -> Result<StateVector> {
    use AtomLevel::{Excited as E, Ground as G, Metastable as S};
    use CollectiveStateKind::*;

    let pair = |a: AtomLevel, b: AtomLevel, sign: f64| -> Result<StateVector> {
        let mut v = StateVector::zeros(cfg.dim());
        let amp = core::f64::consts::FRAC_1_SQRT_2;
        v.as_mut_slice()[cfg.flatten(a, b, n)?] += C64::new(amp, 0.0);
        v.as_mut_slice()[cfg.flatten(b, a, n)?] += C64::new(sign * amp, 0.0);
        Ok(v)
    };

    match kind {
        GG => cfg.product_state(G, G, n),
        SS => cfg.product_state(S, S, n),
        EE => cfg.product_state(E, E, n),
        Plus1 => pair(E, G, 1.0),
        Minus1 => pair(E, G, -1.0),
        Plus2 => pair(S, G, 1.0),
        Minus2 => pair(S, G, -1.0),
        Plus3 => pair(E, S, 1.0),
        Minus3 => pair(E, S, -1.0),
    }
}
