//! Parameter sets behind each figure.
//!
//! Physical parameters follow the figure captions. Grid resolutions and the
//! ranges of axes the captions leave open are choices made here: 241 points
//! per 1D axis and 121 × 121 for maps.

use std::fmt;
use std::str::FromStr;

use blockade_core::dressed::{one_photon_spectrum, two_photon_spectrum, DressedParams, TwoPhotonForm};
use blockade_core::model::SystemParams;

use crate::error::{AppError, Result};
use crate::io::CsvTable;
use crate::sweep::{Axis, DeltaMode, Param, SweepSpec};

/// Fock cutoff for the weak-pump presets (`Ω_p ≤ 0.2`). Raising it by two
/// changes `⟨a†a⟩` by far less than 0.1%.
pub const WEAK_PUMP_CUTOFF: usize = 3;
/// Fock cutoff for the strong-pump presets (`Ω_p = 1.5`).
pub const STRONG_PUMP_CUTOFF: usize = 6;

pub const LINE_STEPS: usize = 241;
pub const MAP_STEPS: usize = 121;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FigureId {
    Fig3a,
    Fig3b,
    Fig4,
    Fig5,
    Fig6,
    Fig7L,
    Fig7R,
    Fig8L,
    Fig8R,
    Fig9,
    Fig10,
}

impl FigureId {
    pub const ALL: [FigureId; 11] = [
        FigureId::Fig3a,
        FigureId::Fig3b,
        FigureId::Fig4,
        FigureId::Fig5,
        FigureId::Fig6,
        FigureId::Fig7L,
        FigureId::Fig7R,
        FigureId::Fig8L,
        FigureId::Fig8R,
        FigureId::Fig9,
        FigureId::Fig10,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            FigureId::Fig3a => "fig3a",
            FigureId::Fig3b => "fig3b",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
            FigureId::Fig7L => "fig7L",
            FigureId::Fig7R => "fig7R",
            FigureId::Fig8L => "fig8L",
            FigureId::Fig8R => "fig8R",
            FigureId::Fig9 => "fig9",
            FigureId::Fig10 => "fig10",
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureId {
    type Err = AppError;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL.into_iter().find(|id| id.name() == s).ok_or_else(|| AppError::UnknownPreset(s.into()))
    }
}

/// Dressed eigenvalues along one parameter, for each value of another.
#[derive(Clone, Debug, PartialEq)]
pub struct DressedSweep {
    pub base: DressedParams,
    pub outer: Axis,
    pub inner: Axis,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Preset {
    Sweep(SweepSpec),
    Dressed(DressedSweep),
}

impl Preset {
    /// Replaces the number of points on linspace axes.
    pub fn with_steps(self, steps1: Option<usize>, steps2: Option<usize>) -> Self {
        let re = |a: Axis, s: Option<usize>| s.map_or(a.clone(), |n| a.with_steps(n));
        match self {
            Preset::Sweep(mut s) => {
                s.axis1 = re(s.axis1, steps1);
                s.axis2 = s.axis2.map(|a| re(a, steps2));
                Preset::Sweep(s)
            }
            Preset::Dressed(mut d) => {
                d.outer = re(d.outer, steps1);
                d.inner = re(d.inner, steps2);
                Preset::Dressed(d)
            }
        }
    }
}

/// `[φ_z, Ω_p, g, γ_ge = γ_se, γ_gs] = [0, 0.2, 20, 0.01, 1]`.
pub fn symmetric_base() -> SystemParams {
    SystemParams {
        phi_z: 0.0,
        omega_p: 0.2,
        g: 20.0,
        gamma_ge: 0.01,
        gamma_se: 0.01,
        gamma_gs: 1.0,
        fock_cutoff: WEAK_PUMP_CUTOFF,
        ..SystemParams::default()
    }
}

/// The asymmetric-placement base: `φ_z = π`, `Ω_p = 1.5`.
pub fn asymmetric_base() -> SystemParams {
    SystemParams { phi_z: std::f64::consts::PI, omega_p: 1.5, fock_cutoff: STRONG_PUMP_CUTOFF, ..symmetric_base() }
}

fn detuning_line(range: f64) -> Axis {
    Axis::linspace(Param::Delta, -range, range, LINE_STEPS)
}

fn detuning_map(range: f64) -> Axis {
    Axis::linspace(Param::Delta, -range, range, MAP_STEPS)
}

pub fn figure_preset(id: FigureId) -> Preset {
    let sym = symmetric_base();
    let asym = asymmetric_base();
    let sweep = |base, axis1, axis2| Preset::Sweep(SweepSpec { base, axis1, axis2, delta_mode: DeltaMode::Fixed });
    match id {
        FigureId::Fig3a => sweep(sym, Axis::list(Param::OmegaD, vec![0.0, 20.0, 30.0]), Some(detuning_line(60.0))),
        FigureId::Fig3b => sweep(
            SystemParams { omega_d: 4.0, ..sym },
            Axis::list(Param::J, vec![0.0, 7.0, 14.5]),
            Some(detuning_line(60.0)),
        ),
        FigureId::Fig4 => sweep(
            SystemParams { omega_d: 4.0, ..sym },
            Axis::linspace(Param::J, 0.0, 30.0, MAP_STEPS),
            Some(detuning_map(60.0)),
        ),
        FigureId::Fig5 => sweep(SystemParams { omega_d: 4.0, j: 20.0, ..sym }, detuning_line(60.0), None),
        FigureId::Fig6 => Preset::Sweep(SweepSpec {
            base: SystemParams { omega_d: 16.0, omega_p: 0.1, ..sym },
            axis1: Axis::linspace(Param::G, 5.0, 30.0, MAP_STEPS),
            axis2: Some(Axis::linspace(Param::J, 0.0, 30.0, MAP_STEPS)),
            delta_mode: DeltaMode::NegativePeak,
        }),
        FigureId::Fig7L => sweep(asym, Axis::linspace(Param::OmegaD, 0.0, 20.0, MAP_STEPS), Some(detuning_map(40.0))),
        FigureId::Fig7R => sweep(
            SystemParams { j: 5.0, ..asym },
            Axis::linspace(Param::OmegaD, 0.0, 20.0, MAP_STEPS),
            Some(detuning_map(40.0)),
        ),
        FigureId::Fig8L => sweep(
            SystemParams { omega_d: 5.0, ..asym },
            Axis::linspace(Param::J, 0.0, 20.0, MAP_STEPS),
            Some(detuning_map(40.0)),
        ),
        FigureId::Fig8R => sweep(
            SystemParams { omega_d: 10.0, ..asym },
            Axis::linspace(Param::J, 0.0, 20.0, MAP_STEPS),
            Some(detuning_map(40.0)),
        ),
        FigureId::Fig9 => Preset::Dressed(DressedSweep {
            base: DressedParams { g: 20.0, ..DressedParams::default() },
            outer: Axis::list(Param::J, vec![0.0, 10.0]),
            inner: Axis::linspace(Param::OmegaD, 0.0, 30.0, LINE_STEPS),
        }),
        FigureId::Fig10 => Preset::Dressed(DressedSweep {
            base: DressedParams { g: 20.0, omega_d: 4.0, ..DressedParams::default() },
            outer: Axis::list(Param::OmegaD, vec![4.0]),
            inner: Axis::linspace(Param::J, 0.0, 30.0, LINE_STEPS),
        }),
    }
}

fn set_dressed(p: &mut DressedParams, param: Param, v: f64) -> Result<()> {
    match param {
        Param::J => p.j = v,
        Param::OmegaD => p.omega_d = v,
        Param::G => p.g = v,
        Param::PhiZ => p.phi_z = v,
        Param::Delta | Param::OmegaP => {
            return Err(AppError::config(param.name(), "not a parameter of the dressed Hamiltonians"))
        }
    }
    Ok(())
}

/// One row per grid point: the two parameters, then the 5 one-photon and 9
/// two-photon eigenvalues in ascending order.
pub fn run_dressed_sweep(d: &DressedSweep) -> Result<CsvTable> {
    let mut columns = vec![d.outer.param.name().to_string(), d.inner.param.name().to_string()];
    columns.extend((0..5).map(|k| format!("one{k}")));
    columns.extend((0..9).map(|k| format!("two{k}")));
    let mut rows = Vec::new();
    for x in d.outer.points() {
        for y in d.inner.points() {
            let mut p = d.base;
            set_dressed(&mut p, d.outer.param, x)?;
            set_dressed(&mut p, d.inner.param, y)?;
            let mut row = vec![x, y];
            row.extend(one_photon_spectrum(&p)?.eigenvalues);
            row.extend(two_photon_spectrum(&p, TwoPhotonForm::Projected)?.eigenvalues);
            rows.push(row);
        }
    }
    Ok(CsvTable { columns, rows })
}
