//! Dressed-state picture of the undriven system.
//!
//! Without the pump the total excitation number is conserved, so the
//! Hamiltonian splits into small manifolds. In the collective basis the
//! one-photon manifold is 5-dimensional,
//!
//! ```text
//! (|gg,1⟩, |+¹,0⟩, |−¹,0⟩, |+²,0⟩, |−²,0⟩)
//! ```
//!
//! and the two-photon manifold 9-dimensional,
//!
//! ```text
//! (|gg,2⟩, |+¹,1⟩, |−¹,1⟩, |+²,1⟩, |−²,1⟩, |+³,0⟩, |−³,0⟩, |ss,0⟩, |ee,0⟩)
//! ```
//!
//! Energies are measured in the lab frame with a common reference frequency
//! `ω_c` per quantum, so the manifolds sit near `ω_c` and `2ω_c`.

use alloc::vec::Vec;

use crate::hilbert::{collective_state, CollectiveStateKind, SpaceConfig};
use crate::model::{build_hamiltonian, SystemParams};
use crate::operators::{hermitian_eigen, ComplexMatrix, StateVector};
use crate::{Error, Result, C64};
use core::f64::consts::TAU;

use CollectiveStateKind::*;

/// Parameters of the collective-basis Hamiltonians, in units of κ.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct DressedParams {
    pub omega_c: f64,
    pub g: f64,
    pub phi_z: f64,
    #[cfg_attr(feature = "serde", serde(rename = "J"))]
    pub j: f64,
    pub omega_d: f64,
}

impl Default for DressedParams {
    fn default() -> Self {
        Self { omega_c: 0.0, g: 20.0, phi_z: 0.0, j: 0.0, omega_d: 0.0 }
    }
}

impl DressedParams {
    /// `g_± = g (1 ± cos φ_z)`.
    pub fn collective_couplings(&self) -> (f64, f64) {
        let c = libm::cos(self.phi_z);
        (self.g * (1.0 + c), self.g * (1.0 - c))
    }

    fn require_symmetric(&self) -> Result<()> {
        if self.phi_z != 0.0 {
            return Err(Error::AsymmetricPlacement { phi_z: self.phi_z });
        }
        Ok(())
    }

    fn check_finite(&self) -> Result<()> {
        let all = [self.omega_c, self.g, self.phi_z, self.j, self.omega_d];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter { name: "dressed", reason: "parameters must be finite" });
        }
        Ok(())
    }
}

impl From<&SystemParams> for DressedParams {
    fn from(p: &SystemParams) -> Self {
        Self { omega_c: 0.0, g: p.g, phi_z: p.phi_z, j: p.j, omega_d: p.omega_d }
    }
}

/// Excitation manifold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Manifold {
    One,
    Two,
}

impl Manifold {
    pub const fn size(self) -> usize {
        match self {
            Manifold::One => 5,
            Manifold::Two => 9,
        }
    }

    /// Basis as `(kind, photon number)` pairs.
    pub fn basis(self) -> Vec<(CollectiveStateKind, usize)> {
        match self {
            Manifold::One => alloc::vec![(GG, 1), (Plus1, 0), (Minus1, 0), (Plus2, 0), (Minus2, 0)],
            Manifold::Two => alloc::vec![
                (GG, 2),
                (Plus1, 1),
                (Minus1, 1),
                (Plus2, 1),
                (Minus2, 1),
                (Plus3, 0),
                (Minus3, 0),
                (SS, 0),
                (EE, 0),
            ],
        }
    }
}

fn symmetric(n: usize, diag: &[f64], upper: &[(usize, usize, f64)]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    for (i, &d) in diag.iter().enumerate() {
        m[(i, i)] = C64::new(d, 0.0);
    }
    for &(i, j, v) in upper {
        m[(i, j)] = C64::new(v, 0.0);
        m[(j, i)] = C64::new(v, 0.0);
    }
    m
}

/// One-photon manifold Hamiltonian.
pub fn one_photon_matrix(p: &DressedParams) -> ComplexMatrix {
    let (gp, gm) = p.collective_couplings();
    let w = p.omega_c;
    let r2 = core::f64::consts::SQRT_2;
    symmetric(
        5,
        &[w, w + p.j, w - p.j, w, w],
        &[(0, 1, gp / r2), (0, 2, gm / r2), (1, 3, p.omega_d), (2, 4, p.omega_d)],
    )
}

fn two_photon_with_drive_factor(p: &DressedParams, c: f64) -> ComplexMatrix {
    let (gp, gm) = p.collective_couplings();
    let w = 2.0 * p.omega_c;
    let (j, od) = (p.j, p.omega_d);
    let r2 = core::f64::consts::SQRT_2;
    symmetric(
        9,
        &[w, w + j, w - j, w, w, w + j, w - j, w, w],
        &[
            (0, 1, gp),
            (0, 2, gm),
            (1, 3, od),
            (1, 8, gp / r2),
            (2, 4, od),
            (2, 8, -gm / r2),
            (3, 5, gp / 2.0),
            (3, 6, gm / 2.0),
            (4, 5, -gm / 2.0),
            (4, 6, -gp / 2.0),
            (5, 7, c * od),
            (5, 8, c * od),
        ],
    )
}

/// Two-photon manifold Hamiltonian, as obtained by projecting the full
/// Hamiltonian.
///
/// The drive couples `|+³,0⟩` to `|ss,0⟩` and `|ee,0⟩` with strength `√2 Ω_d`:
/// both atoms can make the `s ↔ e` transition.
pub fn two_photon_matrix(p: &DressedParams) -> ComplexMatrix {
    two_photon_with_drive_factor(p, core::f64::consts::SQRT_2)
}

/// Two-photon Hamiltonian with unit coefficient on the `|+³,0⟩ ↔ |ss,0⟩` and
/// `|+³,0⟩ ↔ |ee,0⟩` drive couplings.
///
/// This is the form on which the fitted closed-form eigenvalues of
/// [`table2_eigenvalues`] are calibrated; it differs from
/// [`two_photon_matrix`] only in those two entries.
pub fn two_photon_matrix_tabulated(p: &DressedParams) -> ComplexMatrix {
    two_photon_with_drive_factor(p, 1.0)
}

/// Collective basis vectors of a manifold inside the full space.
pub fn manifold_basis(manifold: Manifold, cfg: &SpaceConfig) -> Result<Vec<StateVector>> {
    manifold.basis().into_iter().map(|(kind, n)| collective_state(kind, n, cfg)).collect()
}

/// `V† H V` where `H` is the full Hamiltonian with `Δ = −ω_c`, no pump, and
/// `V` the collective basis of the manifold.
pub fn project_full_hamiltonian(p: &DressedParams, manifold: Manifold) -> Result<ComplexMatrix> {
    p.check_finite()?;
    let sys = SystemParams {
        delta: -p.omega_c,
        g: p.g,
        phi_z: libm::fmod(libm::fmod(p.phi_z, TAU) + TAU, TAU),
        j: p.j,
        omega_p: 0.0,
        omega_d: p.omega_d,
        fock_cutoff: 2,
        ..Default::default()
    };
    let h = build_hamiltonian(&sys)?;
    let basis = manifold_basis(manifold, &sys.space()?)?;

    let n = basis.len();
    let mut deviation = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let expect = if i == j { 1.0 } else { 0.0 };
            deviation = deviation.max((basis[i].inner(&basis[j]) - C64::new(expect, 0.0)).norm());
        }
    }
    if deviation > 1e-12 {
        return Err(Error::NonOrthonormalBasis { deviation });
    }

    let images: Vec<StateVector> = basis.iter().map(|v| v.apply(&h)).collect::<Result<_>>()?;
    Ok(ComplexMatrix::from_fn(n, n, |i, j| basis[i].inner(&images[j])))
}

/// Closed-form one-photon eigenvalues (valid for `φ_z = 0`), ascending:
///
/// ```text
/// λ₀ = ω_c
/// λ±1 = ω_c − J/2 ± √(J²/4 + Ω_d²)
/// λ±2 = ω_c + J/2 ± √(J²/4 + Ω_d² + 2g²)
/// ```
pub fn table1_eigenvalues(p: &DressedParams) -> Result<[f64; 5]> {
    p.require_symmetric()?;
    let w = p.omega_c;
    let r1 = libm::sqrt(p.j * p.j / 4.0 + p.omega_d * p.omega_d);
    let r2 = libm::sqrt(p.j * p.j / 4.0 + p.omega_d * p.omega_d + 2.0 * p.g * p.g);
    let mut out = [w, w - p.j / 2.0 + r1, w - p.j / 2.0 - r1, w + p.j / 2.0 + r2, w + p.j / 2.0 - r2];
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// The rounded constants `A` and `B` of the fitted two-photon eigenvalues.
pub fn fit_constants(p: &DressedParams) -> (f64, f64) {
    let (j2, d2, g2) = (p.j * p.j, p.omega_d * p.omega_d, p.g * p.g);
    let a = 0.07 * j2 + 0.43 * d2 + g2;
    let b = 0.714 * libm::sqrt(0.04 * d2 * d2 + 0.53 * d2 * g2 + g2 * g2);
    (a, b)
}

/// Labelled closed-form two-photon eigenvalues.
///
/// `λ₀`, `λ±1` and `λζ` are exact; `λ±2` and `λ±3` come from the rounded
/// fit constants of [`fit_constants`]. `λ±2` is `NaN` whenever `A < B`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Table2Eigenvalues {
    /// `2ω_c`, twice degenerate.
    pub zero: f64,
    pub plus1: f64,
    pub minus1: f64,
    pub plus2: f64,
    pub minus2: f64,
    pub plus3: f64,
    pub minus3: f64,
    pub zeta: f64,
}

impl Table2Eigenvalues {
    /// All nine values, ascending (`λ₀` listed twice).
    pub fn sorted(&self) -> [f64; 9] {
        let mut v = [
            self.zero,
            self.zero,
            self.plus1,
            self.minus1,
            self.plus2,
            self.minus2,
            self.plus3,
            self.minus3,
            self.zeta,
        ];
        v.sort_by(f64::total_cmp);
        v
    }

    /// The values that are exact: `[λ₀, λ₀, λ+1, λ−1, λζ]`.
    pub fn exact(&self) -> [f64; 5] {
        [self.zero, self.zero, self.plus1, self.minus1, self.zeta]
    }

    /// The fitted values: `[λ+2, λ−2, λ+3, λ−3]`.
    pub fn fitted(&self) -> [f64; 4] {
        [self.plus2, self.minus2, self.plus3, self.minus3]
    }
}

/// Closed-form two-photon eigenvalues (valid for `φ_z = 0`).
pub fn table2_eigenvalues(p: &DressedParams) -> Result<Table2Eigenvalues> {
    p.require_symmetric()?;
    let w = 2.0 * p.omega_c;
    let (a, b) = fit_constants(p);
    let chi = 1.87 * libm::sqrt(a - b);
    let eta = 1.87 * libm::sqrt(a + b);
    let r1 = libm::sqrt(p.j * p.j / 4.0 + p.omega_d * p.omega_d + p.g * p.g);
    let half = p.j / 2.0;
    Ok(Table2Eigenvalues {
        zero: w,
        plus1: w - half + r1,
        minus1: w - half - r1,
        plus2: w + half + chi,
        minus2: w + half - chi,
        plus3: w + half + eta,
        minus3: w + half - eta,
        zeta: w - p.j,
    })
}

/// Pump detunings of the two bright one-photon resonances,
/// `½[J ± √(J² + 4Ω_d² + 8g²)]`, returned as `(plus, minus)`.
///
/// These are the `λ±2 − ω_c` of [`table1_eigenvalues`] and assume `φ_z = 0`.
pub fn peak_detunings(p: &DressedParams) -> (f64, f64) {
    let r = libm::sqrt(p.j * p.j + 4.0 * p.omega_d * p.omega_d + 8.0 * p.g * p.g);
    (0.5 * (p.j + r), 0.5 * (p.j - r))
}

/// Which two-photon matrix to diagonalize.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum TwoPhotonForm {
    #[default]
    Projected,
    Tabulated,
}

/// Numerical spectrum of a manifold Hamiltonian, with the closed-form values
/// where they apply (`φ_z = 0`).
#[derive(Clone, Debug)]
pub struct DressedSpectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns.
    pub eigenvectors: ComplexMatrix,
    /// Ascending closed-form eigenvalues, if defined.
    pub closed_form: Option<Vec<f64>>,
}

pub fn one_photon_spectrum(p: &DressedParams) -> Result<DressedSpectrum> {
    p.check_finite()?;
    let eig = hermitian_eigen(&one_photon_matrix(p))?;
    Ok(DressedSpectrum {
        eigenvalues: eig.values,
        eigenvectors: eig.vectors,
        closed_form: table1_eigenvalues(p).ok().map(|v| v.to_vec()),
    })
}

pub fn two_photon_spectrum(p: &DressedParams, form: TwoPhotonForm) -> Result<DressedSpectrum> {
    p.check_finite()?;
    let m = match form {
        TwoPhotonForm::Projected => two_photon_matrix(p),
        TwoPhotonForm::Tabulated => two_photon_matrix_tabulated(p),
    };
    let eig = hermitian_eigen(&m)?;
    Ok(DressedSpectrum {
        eigenvalues: eig.values,
        eigenvectors: eig.vectors,
        closed_form: table2_eigenvalues(p).ok().map(|t| t.sorted().to_vec()),
    })
}
