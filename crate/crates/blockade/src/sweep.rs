//! Grid sweeps over the steady state.

use std::fmt;
use std::str::FromStr;

use blockade_core::dressed::{peak_detunings, DressedParams};
use blockade_core::model::SystemParams;
use blockade_core::observables::{steady_point, PointResult};
use rayon::prelude::*;

use crate::error::{AppError, Result};

/// Environment variable capping sweep parallelism (`0` or unset: all cores).
pub const THREADS_ENV: &str = "BLOCKADE_THREADS";

/// A sweepable model parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Param {
    Delta,
    J,
    OmegaD,
    G,
    PhiZ,
    OmegaP,
}

impl Param {
    pub const ALL: [Param; 6] = [Param::Delta, Param::J, Param::OmegaD, Param::G, Param::PhiZ, Param::OmegaP];

    /// Column and key name.
    pub const fn name(self) -> &'static str {
        match self {
            Param::Delta => "delta",
            Param::J => "J",
            Param::OmegaD => "omegaD",
            Param::G => "g",
            Param::PhiZ => "phiZ",
            Param::OmegaP => "omegaP",
        }
    }

    pub fn set(self, p: &mut SystemParams, v: f64) {
        match self {
            Param::Delta => p.delta = v,
            Param::J => p.j = v,
            Param::OmegaD => p.omega_d = v,
            Param::G => p.g = v,
            Param::PhiZ => p.phi_z = v,
            Param::OmegaP => p.omega_p = v,
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = AppError;

    fn from_str(s: &str) -> Result<Self> {
        Param::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| AppError::config(s, "not a sweepable parameter (delta, J, omegaD, g, phiZ, omegaP)"))
    }
}

/// Values along one axis.
#[derive(Clone, Debug, PartialEq)]
pub enum AxisValues {
    /// `steps` evenly spaced points from `min` to `max` inclusive.
    Linspace {
        min: f64,
        max: f64,
        steps: usize,
    },
    List(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub param: Param,
    pub values: AxisValues,
}

impl Axis {
    pub fn linspace(param: Param, min: f64, max: f64, steps: usize) -> Self {
        Self { param, values: AxisValues::Linspace { min, max, steps } }
    }

    pub fn list(param: Param, values: Vec<f64>) -> Self {
        Self { param, values: AxisValues::List(values) }
    }

    pub fn points(&self) -> Vec<f64> {
        match &self.values {
            AxisValues::Linspace { min, max, steps } => match steps {
                0 => Vec::new(),
                1 => vec![*min],
                n => (0..*n).map(|k| min + (max - min) * k as f64 / (n - 1) as f64).collect(),
            },
            AxisValues::List(v) => v.clone(),
        }
    }

    pub fn len(&self) -> usize {
        match &self.values {
            AxisValues::Linspace { steps, .. } => *steps,
            AxisValues::List(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Grid spacing of a linspace axis.
    pub fn spacing(&self) -> Option<f64> {
        match &self.values {
            AxisValues::Linspace { min, max, steps } if *steps >= 2 => Some((max - min) / (*steps - 1) as f64),
            _ => None,
        }
    }

    /// Same axis with a different number of points (lists are unchanged).
    pub fn with_steps(&self, steps: usize) -> Self {
        match &self.values {
            AxisValues::Linspace { min, max, .. } => Self::linspace(self.param, *min, *max, steps),
            AxisValues::List(_) => self.clone(),
        }
    }

    fn validate(&self) -> Result<()> {
        match &self.values {
            AxisValues::Linspace { min, max, steps } => {
                if *steps < 2 {
                    return Err(AppError::config(self.param.name(), "a range needs at least 2 steps"));
                }
                if !(min.is_finite() && max.is_finite()) {
                    return Err(AppError::config(self.param.name(), "range bounds must be finite"));
                }
            }
            AxisValues::List(v) => {
                if v.is_empty() || v.iter().any(|x| !x.is_finite()) {
                    return Err(AppError::config(self.param.name(), "list must be non-empty and finite"));
                }
            }
        }
        Ok(())
    }
}

/// Parses `min:max:steps` or a comma-separated list.
impl FromStr for AxisValues {
    type Err = AppError;

    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| AppError::config(s, e.to_string()));
        if let [a, b, n] = s.split(':').collect::<Vec<_>>()[..] {
            let steps = n.trim().parse::<usize>().map_err(|e| AppError::config(s, e.to_string()))?;
            return Ok(AxisValues::Linspace { min: num(a)?, max: num(b)?, steps });
        }
        Ok(AxisValues::List(s.split(',').map(num).collect::<Result<_>>()?))
    }
}

/// Parses `param=min:max:steps` or `param=v1,v2,…`.
impl FromStr for Axis {
    type Err = AppError;

    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s.split_once('=').ok_or_else(|| AppError::config(s, "expected `param=range`"))?;
        Ok(Axis { param: name.trim().parse()?, values: rest.parse()? })
    }
}

/// How the pump detuning is chosen at each grid point.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DeltaMode {
    /// Taken from the base parameters or an axis.
    #[default]
    Fixed,
    /// `½[J − √(J² + 4Ω_d² + 8g²)]`, the negative-detuning resonance.
    NegativePeak,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub base: SystemParams,
    pub axis1: Axis,
    pub axis2: Option<Axis>,
    pub delta_mode: DeltaMode,
}

impl SweepSpec {
    pub fn one_d(base: SystemParams, axis: Axis) -> Self {
        Self { base, axis1: axis, axis2: None, delta_mode: DeltaMode::Fixed }
    }

    pub fn axes(&self) -> Vec<&Axis> {
        std::iter::once(&self.axis1).chain(self.axis2.as_ref()).collect()
    }

    pub fn validate(&self) -> Result<()> {
        for a in self.axes() {
            a.validate()?;
        }
        if let Some(a2) = &self.axis2 {
            if a2.param == self.axis1.param {
                return Err(AppError::config(a2.param.name(), "both axes sweep the same parameter"));
            }
        }
        if self.delta_mode == DeltaMode::NegativePeak && self.axes().iter().any(|a| a.param == Param::Delta) {
            return Err(AppError::config("delta", "cannot sweep delta while deriving it from the peak"));
        }
        crate::config::validate(&self.base)
    }

    /// Whether `delta` gets its own column in addition to the axes.
    pub fn emits_delta(&self) -> bool {
        !self.axes().iter().any(|a| a.param == Param::Delta)
    }

    /// Every grid point in axis-1-major order, with its coordinates.
    pub fn grid(&self) -> Vec<(Vec<f64>, SystemParams)> {
        let p1 = self.axis1.points();
        let p2 = self.axis2.as_ref().map(Axis::points);
        let mut out = Vec::with_capacity(p1.len() * p2.as_ref().map_or(1, Vec::len));
        for &x in &p1 {
            let mut p = self.base;
            self.axis1.param.set(&mut p, x);
            match (&self.axis2, &p2) {
                (Some(a2), Some(ys)) => {
                    for &y in ys {
                        let mut q = p;
                        a2.param.set(&mut q, y);
                        out.push((vec![x, y], self.derive_delta(q)));
                    }
                }
                _ => out.push((vec![x], self.derive_delta(p))),
            }
        }
        out
    }

    fn derive_delta(&self, mut p: SystemParams) -> SystemParams {
        if self.delta_mode == DeltaMode::NegativePeak {
            p.delta = peak_detunings(&DressedParams::from(&p)).1;
        }
        p
    }
}

/// One grid point. Failed solves keep their coordinates, carry `NaN`
/// observables and the error text.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub coords: Vec<f64>,
    pub params: SystemParams,
    pub point: PointResult,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepTable {
    pub axis_names: Vec<&'static str>,
    pub emits_delta: bool,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    /// Column names of the CSV form.
    pub fn columns(&self) -> Vec<String> {
        let mut cols: Vec<String> = self.axis_names.iter().map(|s| s.to_string()).collect();
        if self.emits_delta {
            cols.push("delta".into());
        }
        cols.extend(["meanN", "g2", "g3", "log10g2", "log10g3", "residual"].map(String::from));
        cols
    }

    /// Numeric values per row, in column order.
    pub fn values(&self) -> Vec<Vec<f64>> {
        self.rows
            .iter()
            .map(|r| {
                let mut v = r.coords.clone();
                if self.emits_delta {
                    v.push(r.point.delta);
                }
                let p = &r.point;
                v.extend([p.mean_n, p.g2, p.g3, p.log10_g2, p.log10_g3, p.residual]);
                v
            })
            .collect()
    }

    /// Values of one observable along the rows.
    pub fn field(&self, f: impl Fn(&PointResult) -> f64) -> Vec<f64> {
        self.rows.iter().map(|r| f(&r.point)).collect()
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.error.is_some()).count()
    }
}

fn failed_point(delta: f64) -> PointResult {
    PointResult {
        delta,
        mean_n: f64::NAN,
        g2: f64::NAN,
        g3: f64::NAN,
        log10_g2: f64::NAN,
        log10_g3: f64::NAN,
        residual: f64::NAN,
        low_signal: false,
    }
}

fn solve_row(coords: Vec<f64>, params: SystemParams) -> SweepRow {
    match steady_point(&params) {
        Ok(point) => SweepRow { coords, params, point, error: None },
        Err(e) => SweepRow { coords, params, point: failed_point(params.delta), error: Some(e.to_string()) },
    }
}

/// Thread count from [`THREADS_ENV`]; `None` means use the rayon default.
pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV).ok().and_then(|s| s.trim().parse::<usize>().ok()).filter(|&n| n > 0)
}

/// Solves every grid point. Points are independent and may run in parallel;
/// rows always come back in axis-1-major order, bit-identical to a serial
/// run.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    run_sweep_with_threads(spec, threads_from_env())
}

pub fn run_sweep_with_threads(spec: &SweepSpec, threads: Option<usize>) -> Result<SweepTable> {
    spec.validate()?;
    let grid = spec.grid();
    let work = || grid.into_par_iter().map(|(c, p)| solve_row(c, p)).collect::<Vec<_>>();
    let rows = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| AppError::Usage(e.to_string()))?
            .install(work),
        None => work(),
    };
    Ok(SweepTable {
        axis_names: spec.axes().iter().map(|a| a.param.name()).collect(),
        emits_delta: spec.emits_delta(),
        rows,
    })
}

/// Change of `⟨a†a⟩` when a point is re-solved with a larger cutoff.
#[derive(Clone, Debug, PartialEq)]
pub struct CutoffDrift {
    pub coords: Vec<f64>,
    pub mean_n: f64,
    pub mean_n_refined: f64,
    /// `|Δ⟨a†a⟩| / ⟨a†a⟩`.
    pub relative: f64,
}

/// Re-solves every row at cutoff `N + extra` and reports the drift in
/// `⟨a†a⟩`.
pub fn cutoff_drift(table: &SweepTable, extra: usize) -> Vec<CutoffDrift> {
    table
        .rows
        .par_iter()
        .map(|r| {
            let mut p = r.params;
            p.fock_cutoff += extra;
            let refined = steady_point(&p).map_or(f64::NAN, |q| q.mean_n);
            CutoffDrift {
                coords: r.coords.clone(),
                mean_n: r.point.mean_n,
                mean_n_refined: refined,
                relative: (refined - r.point.mean_n).abs() / r.point.mean_n.abs(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_base() -> SystemParams {
        SystemParams { fock_cutoff: 2, ..Default::default() }
    }

    #[test]
    fn axis_parsing() {
        let a: Axis = "delta=-60:60:241".parse().unwrap();
        assert_eq!(a.param, Param::Delta);
        assert_eq!(a.len(), 241);
        assert_eq!(a.spacing(), Some(0.5));
        let pts = a.points();
        assert_eq!((pts[0], pts[120], pts[240]), (-60.0, 0.0, 60.0));

        let b: Axis = "J=0,7,14.5".parse().unwrap();
        assert_eq!(b.points(), vec![0.0, 7.0, 14.5]);
        assert!("kappa=1:2:3".parse::<Axis>().is_err());
        assert!("delta".parse::<Axis>().is_err());
    }

    #[test]
    fn grid_is_axis1_major() {
        let spec = SweepSpec {
            base: small_base(),
            axis1: Axis::list(Param::J, vec![0.0, 5.0]),
            axis2: Some(Axis::list(Param::Delta, vec![-1.0, 0.0, 1.0])),
            delta_mode: DeltaMode::Fixed,
        };
        let coords: Vec<_> = spec.grid().into_iter().map(|(c, _)| c).collect();
        assert_eq!(coords[0], vec![0.0, -1.0]);
        assert_eq!(coords[2], vec![0.0, 1.0]);
        assert_eq!(coords[3], vec![5.0, -1.0]);
        assert!(!spec.emits_delta());
    }

    #[test]
    fn derived_delta_follows_each_point() {
        let spec = SweepSpec {
            base: SystemParams { omega_d: 16.0, ..small_base() },
            axis1: Axis::list(Param::G, vec![10.0]),
            axis2: Some(Axis::list(Param::J, vec![0.0, 20.0])),
            delta_mode: DeltaMode::NegativePeak,
        };
        let grid = spec.grid();
        let expect = |g: f64, j: f64| 0.5 * (j - (j * j + 4.0 * 256.0 + 8.0 * g * g).sqrt());
        assert!((grid[0].1.delta - expect(10.0, 0.0)).abs() < 1e-12);
        assert!((grid[1].1.delta - expect(10.0, 20.0)).abs() < 1e-12);
        assert!(spec.emits_delta());
    }

    #[test]
    fn single_point_sweep_equals_solve() {
        let base = SystemParams { delta: 28.0, ..small_base() };
        let spec = SweepSpec::one_d(base, Axis::list(Param::Delta, vec![28.0]));
        let t = run_sweep_with_threads(&spec, Some(1)).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0].point, steady_point(&base).unwrap());
    }

    #[test]
    fn parallel_matches_serial_bitwise() {
        let spec = SweepSpec::one_d(small_base(), Axis::linspace(Param::Delta, -30.0, 30.0, 9));
        let a = run_sweep_with_threads(&spec, Some(1)).unwrap();
        let b = run_sweep_with_threads(&spec, Some(3)).unwrap();
        let bits = |t: &SweepTable| t.values().concat().iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(&a), bits(&b));
    }

    #[test]
    fn invalid_specs_rejected() {
        let mut spec = SweepSpec::one_d(small_base(), Axis::linspace(Param::Delta, 0.0, 1.0, 1));
        assert!(spec.validate().is_err());
        spec.axis1 = Axis::list(Param::Delta, vec![0.0]);
        spec.delta_mode = DeltaMode::NegativePeak;
        assert!(spec.validate().is_err());
    }

    #[test]
    fn failed_points_keep_their_row() {
        // g < 0 fails validation inside the solver for that point only.
        let spec = SweepSpec::one_d(small_base(), Axis::list(Param::G, vec![20.0, -1.0, 10.0]));
        let grid = spec.grid();
        let rows: Vec<_> = grid.into_iter().map(|(c, p)| solve_row(c, p)).collect();
        assert!(rows[0].error.is_none() && rows[2].error.is_none());
        assert!(rows[1].error.as_deref().unwrap().contains('g'));
        assert!(rows[1].point.mean_n.is_nan());
    }
}
