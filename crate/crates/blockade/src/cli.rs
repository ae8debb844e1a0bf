//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on a failed validation or runtime error,
//! 2 on a usage or configuration error.

use std::io::Write;
use std::path::{Path, PathBuf};

use blockade_core::dressed::{one_photon_spectrum, two_photon_spectrum, DressedParams, TwoPhotonForm};
use blockade_core::model::SystemParams;
use blockade_core::observables::steady_point;
use clap::{Args, Parser, Subcommand};

use crate::checks;
use crate::config::{resolve, validate, Overrides};
use crate::error::{AppError, Result};
use crate::io::{write_csv, write_csv_file, CsvTable};
use crate::presets::{figure_preset, run_dressed_sweep, FigureId, Preset};
use crate::sweep::{cutoff_drift, run_sweep, Axis, DeltaMode, SweepSpec, SweepTable};

const UNITS: &str = "All rates, couplings and detunings are in units of the cavity decay rate κ; \
                     phases are in radians.";

#[derive(Debug, Parser)]
#[command(name = "blockade", version, about = "Multiphoton blockade with two dipole-coupled Λ atoms in a driven cavity", after_help = UNITS)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one steady state and print its observables as JSON.
    #[command(allow_negative_numbers = true, after_help = UNITS)]
    Steady {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Sweep one or two parameters and write a CSV table.
    #[command(allow_negative_numbers = true, after_help = UNITS)]
    Sweep {
        /// First axis, `param=min:max:steps` or `param=v1,v2,...`.
        #[arg(long, allow_hyphen_values = true)]
        axis1: Axis,
        /// Optional second axis, same syntax.
        #[arg(long, allow_hyphen_values = true)]
        axis2: Option<Axis>,
        /// Set Δ at each point to the negative-detuning resonance.
        #[arg(long)]
        negative_peak: bool,
        /// Also re-solve every point at cutoff N+2 and report the drift.
        #[arg(long)]
        converge: bool,
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Dressed eigenvalues of the one- and two-photon manifolds, numerical and closed form.
    #[command(allow_negative_numbers = true, after_help = UNITS)]
    Dressed {
        #[command(flatten)]
        params: DressedArgs,
        /// Output file; stdout if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a figure preset and write `<id>.csv`.
    #[command(allow_negative_numbers = true, after_help = UNITS)]
    Figure {
        /// fig3a, fig3b, fig4, fig5, fig6, fig7L, fig7R, fig8L, fig8R, fig9 or fig10.
        id: String,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Points on the first linspace axis.
        #[arg(long)]
        steps1: Option<usize>,
        /// Points on the second linspace axis.
        #[arg(long)]
        steps2: Option<usize>,
        /// Also re-solve every point at cutoff N+2 and report the drift.
        #[arg(long)]
        converge: bool,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Run the oracle suite and print PASS/FAIL per check.
    Validate,
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// Flat `key=value` file; flags take precedence over it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Pump detuning Δ.
    #[arg(long)]
    delta: Option<f64>,
    /// Dipole-dipole coupling J.
    #[arg(long = "J")]
    j: Option<f64>,
    /// Drive Rabi frequency Ω_d.
    #[arg(long)]
    omega_d: Option<f64>,
    /// Atom-field coupling g.
    #[arg(long)]
    g: Option<f64>,
    /// Pump Rabi frequency Ω_p.
    #[arg(long)]
    omega_p: Option<f64>,
    /// Placement phase φ_z.
    #[arg(long)]
    phi_z: Option<f64>,
    #[arg(long)]
    gamma_ge: Option<f64>,
    #[arg(long)]
    gamma_se: Option<f64>,
    #[arg(long)]
    gamma_gs: Option<f64>,
    /// Fock cutoff N.
    #[arg(long)]
    fock_cutoff: Option<usize>,
}

impl ParamArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            delta: self.delta,
            g: self.g,
            phi_z: self.phi_z,
            j: self.j,
            omega_p: self.omega_p,
            omega_d: self.omega_d,
            gamma_ge: self.gamma_ge,
            gamma_se: self.gamma_se,
            gamma_gs: self.gamma_gs,
            fock_cutoff: self.fock_cutoff,
        }
    }

    fn resolve(&self, defaults: SystemParams) -> Result<SystemParams> {
        resolve(defaults, self.config.as_deref(), &self.overrides())
    }
}

#[derive(Debug, Args)]
struct DressedArgs {
    #[arg(long = "J", default_value_t = 0.0)]
    j: f64,
    #[arg(long, default_value_t = 0.0)]
    omega_d: f64,
    #[arg(long, default_value_t = 20.0)]
    g: f64,
    #[arg(long, default_value_t = 0.0)]
    phi_z: f64,
    /// Cavity frequency the energies are measured from.
    #[arg(long, default_value_t = 0.0)]
    omega_c: f64,
}

fn exit_code(e: &AppError) -> i32 {
    match e {
        AppError::Config { .. } | AppError::UnknownPreset(_) | AppError::Usage(_) => 2,
        _ => 1,
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(command: Command) -> Result<i32> {
    match command {
        Command::Steady { params } => {
            let p = params.resolve(SystemParams::default())?;
            let point = steady_point(&p)?;
            let json = serde_json::to_string_pretty(&point).map_err(|e| AppError::Usage(e.to_string()))?;
            println!("{json}");
            Ok(0)
        }
        Command::Sweep { axis1, axis2, negative_peak, converge, output, params } => {
            let base = params.resolve(SystemParams::default())?;
            let delta_mode = if negative_peak { DeltaMode::NegativePeak } else { DeltaMode::Fixed };
            let spec = SweepSpec { base, axis1, axis2, delta_mode };
            sweep_to_file(&spec, &output, converge)
        }
        Command::Dressed { params, output } => {
            let d = DressedParams {
                omega_c: params.omega_c,
                g: params.g,
                phi_z: params.phi_z,
                j: params.j,
                omega_d: params.omega_d,
            };
            let table = dressed_table(&d)?;
            match output {
                Some(path) => write_csv_file(&path, &table)?,
                None => print!("{}", write_csv(&table)?),
            }
            Ok(0)
        }
        Command::Figure { id, out_dir, steps1, steps2, converge, params } => {
            let id = parse_figure_id(&id)?;
            let path = out_dir.join(format!("{id}.csv"));
            match figure_preset(id).with_steps(steps1, steps2) {
                Preset::Sweep(mut spec) => {
                    spec.base = params.resolve(spec.base)?;
                    sweep_to_file(&spec, &path, converge)
                }
                Preset::Dressed(d) => {
                    write_csv_file(&path, &run_dressed_sweep(&d)?)?;
                    eprintln!("wrote {}", path.display());
                    Ok(0)
                }
            }
        }
        Command::Validate => {
            let results = checks::run_all();
            let mut out = std::io::stdout().lock();
            for c in &results {
                let _ = writeln!(out, "{}", c.line());
            }
            Ok(if results.iter().all(|c| c.passed) { 0 } else { 1 })
        }
    }
}

/// Accepts `fig5` as well as `5`.
fn parse_figure_id(s: &str) -> Result<FigureId> {
    if s.starts_with("fig") {
        s.parse()
    } else {
        format!("fig{s}").parse()
    }
}

fn sweep_to_file(spec: &SweepSpec, path: &Path, converge: bool) -> Result<i32> {
    validate(&spec.base)?;
    let table = run_sweep(spec)?;
    write_csv_file(path, &CsvTable::from(&table))?;
    eprintln!("wrote {} ({} points, {} failed)", path.display(), table.rows.len(), table.failures());
    if converge {
        report_drift(&table);
    }
    Ok(0)
}

fn report_drift(table: &SweepTable) {
    let drift = cutoff_drift(table, 2);
    let worst = drift.iter().filter(|d| d.relative.is_finite()).max_by(|a, b| a.relative.total_cmp(&b.relative));
    let flagged = drift.iter().filter(|d| !(d.relative < 1e-3)).count();
    match worst {
        Some(w) => eprintln!(
            "cutoff N+2: max relative change of <a+a> {:.3e} at {:?}; {flagged} of {} points above 1e-3",
            w.relative,
            w.coords,
            drift.len()
        ),
        None => eprintln!("cutoff N+2: no finite comparison"),
    }
}

/// One row per eigenvalue: manifold (1 or 2), index, the eigenvalue of the
/// projected matrix, of the tabulated matrix, and the closed form (`NaN`
/// when `φ_z ≠ 0`).
pub fn dressed_table(d: &DressedParams) -> Result<CsvTable> {
    let columns = ["manifold", "index", "numeric", "numericTabulated", "closedForm"].map(String::from).to_vec();
    let mut rows = Vec::new();
    let one = one_photon_spectrum(d)?;
    let two = two_photon_spectrum(d, TwoPhotonForm::Projected)?;
    let two_tab = two_photon_spectrum(d, TwoPhotonForm::Tabulated)?;
    let sets = [
        (1.0, &one.eigenvalues, &one.eigenvalues, &one.closed_form),
        (2.0, &two.eigenvalues, &two_tab.eigenvalues, &two.closed_form),
    ];
    for (m, num, tab, closed) in sets {
        for k in 0..num.len() {
            let c = closed.as_ref().map_or(f64::NAN, |c| c[k]);
            rows.push(vec![m, k as f64, num[k], tab[k], c]);
        }
    }
    Ok(CsvTable { columns, rows })
}
