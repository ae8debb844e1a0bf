//! Acceptance report: one PASS/FAIL line per criterion.
//!
//! Runs without the test harness so the lines reach stdout directly. A FAIL
//! is reported, not asserted; the process only fails if a criterion could not
//! be evaluated at all.

use std::time::Instant;

use blockade::checks::{
    coherent_error, cutoff_sensitivity, dressed_grid, dressed_plane, projection_error, random_system, table1_error,
    table2_comparison, SEED,
};
use blockade::peaks::{find_peaks, Peak};
use blockade::presets::{figure_preset, FigureId, Preset};
use blockade::sweep::{run_sweep, Axis, Param, SweepRow, SweepSpec, SweepTable};
use blockade_core::dressed::{one_photon_spectrum, peak_detunings, DressedParams};
use blockade_core::hilbert::AtomLevel;
use blockade_core::model::{build_hamiltonian, collapse_operators, SystemParams};
use blockade_core::solver::{build_liouvillian, evolve, steady_state, DensityMatrix, DEFAULT_DT};
use rand::rngs::StdRng;
use rand::SeedableRng;

type Outcome = Result<(bool, String), String>;

fn sweep_preset(id: FigureId) -> SweepSpec {
    match figure_preset(id) {
        Preset::Sweep(s) => s,
        Preset::Dressed(_) => unreachable!("{id} is a sweep"),
    }
}

fn run(spec: &SweepSpec) -> Result<SweepTable, String> {
    let t = run_sweep(spec).map_err(|e| e.to_string())?;
    if t.failures() > 0 {
        return Err(format!("{} points failed to solve", t.failures()));
    }
    Ok(t)
}

/// Rows of a 2D table whose first coordinate is `x`, in Δ order.
fn curve(t: &SweepTable, x: f64) -> Vec<&SweepRow> {
    t.rows.iter().filter(|r| r.coords[0] == x).collect()
}

fn mean_n_peaks(rows: &[&SweepRow]) -> Result<Vec<Peak>, String> {
    let d: Vec<f64> = rows.iter().map(|r| r.params.delta).collect();
    let n: Vec<f64> = rows.iter().map(|r| r.point.mean_n).collect();
    find_peaks(&d, &n).map_err(|e| e.to_string())
}

/// The two highest maxima, ordered by coordinate.
fn two_highest(mut peaks: Vec<Peak>) -> Result<(Peak, Peak), String> {
    if peaks.len() < 2 {
        return Err(format!("{} maxima found", peaks.len()));
    }
    peaks.sort_by(|a, b| b.value.total_cmp(&a.value));
    let (a, b) = (peaks[0], peaks[1]);
    Ok(if a.coord < b.coord { (a, b) } else { (b, a) })
}

fn principal(peaks: &[Peak]) -> Result<Peak, String> {
    peaks.iter().copied().max_by(|a, b| a.value.total_cmp(&b.value)).ok_or_else(|| "no maxima".to_string())
}

fn spacing(rows: &[&SweepRow]) -> f64 {
    rows[1].params.delta - rows[0].params.delta
}

fn symmetric(g: f64, j: f64, omega_d: f64) -> DressedParams {
    DressedParams { g, j, omega_d, ..DressedParams::default() }
}

fn projection() -> Outcome {
    let e = projection_error(20, SEED).map_err(|e| e.to_string())?;
    Ok((e <= 1e-12, format!("max entry error {e:.2e} over 20 random (g, J, Ω_d, φ_z)")))
}

fn closed_forms() -> Outcome {
    let grid = dressed_grid(10);
    let t1 = table1_error(&grid).map_err(|e| e.to_string())?;
    let full = table2_comparison(&grid).map_err(|e| e.to_string())?;
    let plane = table2_comparison(&dressed_plane(10)).map_err(|e| e.to_string())?;
    let pass = t1 <= 1e-9 && full.exact_error <= 1e-9 && plane.fit_error <= 0.02;
    Ok((
        pass,
        format!(
            "table I {t1:.2e}, table II exact rows {:.2e} on 10x10x10 grid; fit rows {:.2}% at g=20 \
             ({:.1}% worst over g in [1,30], where J >> g)",
            full.exact_error,
            100.0 * plane.fit_error,
            100.0 * full.fit_error
        ),
    ))
}

struct Fig3 {
    a: SweepTable,
    b: SweepTable,
    five: SweepTable,
}

fn fig3_tables() -> Result<Fig3, String> {
    let a = run(&sweep_preset(FigureId::Fig3a))?;
    let mut spec_b = sweep_preset(FigureId::Fig3b);
    spec_b.axis1 = Axis::list(Param::J, vec![7.0, 14.5]);
    let b = run(&spec_b)?;
    let five = run(&sweep_preset(FigureId::Fig5))?;
    Ok(Fig3 { a, b, five })
}

fn fig5_rows(t: &SweepTable) -> Vec<&SweepRow> {
    t.rows.iter().collect()
}

fn peaks_symmetric(f: &Fig3) -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    for od in [0.0, 20.0, 30.0] {
        let rows = curve(&f.a, od);
        let (lo, hi) = two_highest(mean_n_peaks(&rows)?)?;
        let expect = (od * od + 2.0 * 400.0f64).sqrt();
        let err = (lo.coord + expect).abs().max((hi.coord - expect).abs());
        pass &= err <= spacing(&rows);
        detail.push(format!("Ω_d={od}: {:.2}/{:.2} vs ±{expect:.2}", lo.coord, hi.coord));
    }
    Ok((pass, detail.join("; ")))
}

fn peaks_ddi(f: &Fig3) -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    let curves = [(7.0, curve(&f.b, 7.0)), (14.5, curve(&f.b, 14.5)), (20.0, fig5_rows(&f.five))];
    for (j, rows) in curves {
        let (lo, hi) = two_highest(mean_n_peaks(&rows)?)?;
        let (plus, minus) = peak_detunings(&symmetric(20.0, j, 4.0));
        let err = (lo.coord - minus).abs().max((hi.coord - plus).abs());
        pass &= err <= spacing(&rows);
        detail.push(format!("J={j}: {:.2}/{:.2} vs {minus:.2}/{plus:.2}", lo.coord, hi.coord));
    }
    Ok((pass, detail.join("; ")))
}

fn fig5_asymmetry(f: &Fig3) -> Outcome {
    let rows = fig5_rows(&f.five);
    let (lo, hi) = two_highest(mean_n_peaks(&rows)?)?;
    let (neg, pos) = (&rows[lo.index].point, &rows[hi.index].point);
    let pass = pos.g2 < 1.0 && neg.log10_g2.abs() <= 0.3 && neg.log10_g3 < 0.0;
    Ok((
        pass,
        format!(
            "Δ={:.1}: g2={:.3e}; Δ={:.1}: log10 g2={:.3}, log10 g3={:.3}",
            pos.delta, pos.g2, neg.delta, neg.log10_g2, neg.log10_g3
        ),
    ))
}

fn drive_ordering(f: &Fig3) -> Outcome {
    let at_peaks = |od: f64| -> Result<(f64, f64), String> {
        let rows = curve(&f.a, od);
        let (lo, hi) = two_highest(mean_n_peaks(&rows)?)?;
        Ok((rows[lo.index].point.g2, rows[hi.index].point.g2))
    };
    let (w_lo, w_hi) = at_peaks(0.0)?;
    let (s_lo, s_hi) = at_peaks(20.0)?;
    Ok((w_lo > s_lo && w_hi > s_hi, format!("g2 at peaks: Ω_d=0 {w_lo:.3e}/{w_hi:.3e}, Ω_d=20 {s_lo:.3e}/{s_hi:.3e}")))
}

/// One Δ line of an asymmetric-placement preset, Δ ∈ [−40, 40] in steps of 1.
fn asymmetric_line(id: FigureId, param: Param, value: f64) -> Result<SweepTable, String> {
    let mut spec = sweep_preset(id);
    spec.axis1 = Axis::list(param, vec![value]);
    spec.axis2 = Some(Axis::linspace(Param::Delta, -40.0, 40.0, 81));
    run(&spec)
}

fn describe(rows: &[&SweepRow], peaks: &[Peak]) -> String {
    peaks
        .iter()
        .map(|p| {
            let q = &rows[p.index].point;
            format!("{:+.0}(g2={:.2},g3={:.2})", q.delta, q.g2, q.g3)
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn fig7() -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    for od in [2.0, 6.0, 10.0, 20.0] {
        let t = asymmetric_line(FigureId::Fig7L, Param::OmegaD, od)?;
        let rows: Vec<&SweepRow> = t.rows.iter().collect();
        let peaks = mean_n_peaks(&rows)?;
        pass &= !peaks.is_empty() && peaks.iter().all(|p| rows[p.index].point.g2 > 1.0);
        if od == 10.0 {
            let top = principal(&peaks)?;
            pass &= rows[top.index].point.g3 < 1.0;
            detail.push(format!(
                "Ω_d=10 principal Δ={:+.0} g3={:.3}",
                rows[top.index].point.delta, rows[top.index].point.g3
            ));
        }
        detail.push(format!("Ω_d={od}: {}", describe(&rows, &peaks)));
    }
    Ok((pass, format!("g2 > 1 required at every maximum; {}", detail.join("; "))))
}

fn fig8() -> Outcome {
    let t0 = asymmetric_line(FigureId::Fig8L, Param::J, 0.0)?;
    let rows0: Vec<&SweepRow> = t0.rows.iter().collect();
    let peaks0 = mean_n_peaks(&rows0)?;
    let top0 = rows0[principal(&peaks0)?.index].point;

    let t20 = asymmetric_line(FigureId::Fig8L, Param::J, 20.0)?;
    let rows20: Vec<&SweepRow> = t20.rows.iter().collect();
    let positive: Vec<Peak> = mean_n_peaks(&rows20)?.into_iter().filter(|p| p.coord > 0.0).collect();
    let top20 = rows20[principal(&positive)?.index].point;

    let weak: Vec<String> = peaks0
        .iter()
        .filter(|p| rows0[p.index].point.g3 < 1.0)
        .map(|p| format!("{:+.0}", rows0[p.index].point.delta))
        .collect();
    Ok((
        top0.g3 >= 1.0 && top20.g3 < 1.0,
        format!(
            "J=0 principal peak Δ={:+.0} g3={:.1}; J=20 positive peak Δ={:+.0} g3={:.3}; \
             J=0 secondary maxima with g3 < 1 at Δ={} (all J=0 maxima: {})",
            top0.delta,
            top0.g3,
            top20.delta,
            top20.g3,
            if weak.is_empty() { "none".to_string() } else { weak.join(",") },
            describe(&rows0, &peaks0)
        ),
    ))
}

fn degeneracy() -> Outcome {
    let g = 20.0;
    let mut best = (f64::INFINITY, f64::NAN);
    for k in 0..=4000 {
        let j = k as f64 * 0.01;
        let e = one_photon_spectrum(&symmetric(g, j, 4.0)).map_err(|e| e.to_string())?.eigenvalues;
        let gap = e[1] - e[0];
        if gap < best.0 {
            best = (gap, j);
        }
    }
    Ok(((best.1 - g).abs() <= 2.0, format!("minimum gap {:.3} at J={:.2}", best.0, best.1)))
}

fn vacuum_evolution(p: &SystemParams, t: f64) -> Result<(DensityMatrix, DensityMatrix), String> {
    let e = |e: blockade_core::Error| e.to_string();
    let cfg = p.space().map_err(e)?;
    let h = build_hamiltonian(p).map_err(e)?;
    let cs = collapse_operators(p).map_err(e)?;
    let l = build_liouvillian(&h, &cs).map_err(e)?.with_grading(cfg.excitation_grading()).map_err(e)?;
    let ss = steady_state(&l).map_err(e)?;
    let vacuum = DensityMatrix::from_pure(&cfg.product_state(AtomLevel::Ground, AtomLevel::Ground, 0).map_err(e)?);
    let late = evolve(&h, &cs, &vacuum, DEFAULT_DT, t).map_err(e)?;
    Ok((ss.rho, late))
}

fn cross_validation(f: &Fig3) -> Outcome {
    let e = |e: blockade_core::Error| e.to_string();
    let mut rng = StdRng::seed_from_u64(SEED);
    let (mut at50, mut at100) = (0.0f64, 0.0f64);
    for _ in 0..5 {
        let p = random_system(&mut rng, 3);
        let (rho_ss, rho50) = vacuum_evolution(&p, 50.0)?;
        at50 = at50.max(rho_ss.trace_distance(&rho50).map_err(e)?);
        // Continue the same trajectory to T = 100.
        let h = build_hamiltonian(&p).map_err(e)?;
        let cs = collapse_operators(&p).map_err(e)?;
        let rho100 = evolve(&h, &cs, &rho50, DEFAULT_DT, 50.0).map_err(e)?;
        at100 = at100.max(rho_ss.trace_distance(&rho100).map_err(e)?);
    }
    let coherent = coherent_error(1.0, 20).map_err(|e| e.to_string())?;

    // Every 24th point of each Fig. 3/5 curve plus the two resonances.
    let mut probes: Vec<SystemParams> = Vec::new();
    let mut lines: Vec<Vec<&SweepRow>> = [0.0, 20.0, 30.0].iter().map(|&od| curve(&f.a, od)).collect();
    lines.extend([7.0, 14.5].iter().map(|&j| curve(&f.b, j)));
    lines.push(fig5_rows(&f.five));
    let fig3b_j0 = run(&SweepSpec { axis1: Axis::list(Param::J, vec![0.0]), ..sweep_preset(FigureId::Fig3b) })?;
    lines.push(curve(&fig3b_j0, 0.0));
    for rows in &lines {
        let (lo, hi) = two_highest(mean_n_peaks(rows)?)?;
        probes.extend(rows.iter().step_by(24).map(|r| r.params));
        probes.extend([rows[lo.index].params, rows[hi.index].params]);
    }
    let mut drift = 0.0f64;
    for p in &probes {
        drift = drift.max(cutoff_sensitivity(p, 2).map_err(|e| e.to_string())?);
    }

    Ok((
        at50 <= 1e-6 && coherent <= 1e-5 && drift < 1e-3,
        format!(
            "trace distance at T=50 {at50:.2e} (at T=100 {at100:.2e}, slow atomic relaxation); \
             coherent g2/g3 error {coherent:.1e}; N->N+2 drift of <a+a> {drift:.1e} over {} Fig. 3/5 points",
            probes.len()
        ),
    ))
}

fn report(k: usize, name: &str, outcome: Outcome, started: Instant, passed: &mut usize, broken: &mut usize) {
    let secs = started.elapsed().as_secs_f64();
    match outcome {
        Ok((true, d)) => {
            *passed += 1;
            println!("PASS [{k}] {name}: {d} ({secs:.0} s)");
        }
        Ok((false, d)) => println!("FAIL [{k}] {name}: {d} ({secs:.0} s)"),
        Err(e) => {
            *broken += 1;
            println!("FAIL [{k}] {name}: could not evaluate: {e}");
        }
    }
}

fn main() {
    // `cargo test -- --list` and filters: this target has a single entry.
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let (mut passed, mut broken) = (0, 0);
    let mut step = |k: usize, name: &str, f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        report(k, name, f(), t, &mut passed, &mut broken);
    };
    step(1, "projection oracle", &projection);
    step(2, "closed-form spectra", &closed_forms);

    let t = Instant::now();
    let fig3 = fig3_tables();
    println!("       Fig. 3/5 sweeps: {:.0} s", t.elapsed().as_secs_f64());
    let with = |g: fn(&Fig3) -> Outcome| -> Outcome { fig3.as_ref().map_err(Clone::clone).and_then(g) };
    step(3, "peak positions, symmetric coupling", &|| with(peaks_symmetric));
    step(4, "peak positions with DDI", &|| with(peaks_ddi));
    step(5, "blockade asymmetry at J=20", &|| with(fig5_asymmetry));
    step(6, "drive-strength ordering", &|| with(drive_ordering));
    step(7, "asymmetric coupling, phi_z=pi", &fig7);
    step(8, "DDI-induced two-photon blockade", &fig8);
    step(9, "degeneracy near J=g", &degeneracy);
    step(10, "solver cross-validation", &|| with(cross_validation));

    println!("{passed}/10 criteria passed");
    if broken > 0 {
        std::process::exit(1);
    }
}
