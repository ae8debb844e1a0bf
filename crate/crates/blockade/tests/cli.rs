use std::process::Command;

use blockade::io::read_csv_file;

fn blockade(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_blockade")).args(args).output().expect("binary runs")
}

#[test]
fn steady_at_positive_resonance_is_antibunched() {
    let out = blockade(&[
        "steady",
        "--delta",
        "40.27",
        "--J",
        "20",
        "--omega-d",
        "4",
        "--g",
        "20",
        "--omega-p",
        "0.2",
        "--phi-z",
        "0",
        "--fock-cutoff",
        "3",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let g2 = v["g2"].as_f64().unwrap();
    assert!(g2 < 1.0, "g2 = {g2}");
    assert!(v["meanN"].as_f64().unwrap() > 0.0);
    assert_eq!(v["lowSignal"], serde_json::Value::Bool(false));
}

#[test]
fn negative_detuning_flag_value() {
    let out = blockade(&["steady", "--delta", "-20.27", "--J", "20", "--omega-d", "4", "--fock-cutoff", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn figure_fig5_csv_contract() {
    let dir = tempfile::tempdir().unwrap();
    let out = blockade(&["figure", "fig5", "--out-dir", dir.path().to_str().unwrap(), "--steps1", "5"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let t = read_csv_file(&dir.path().join("fig5.csv")).unwrap();
    assert_eq!(t.columns, ["delta", "meanN", "g2", "g3", "log10g2", "log10g3", "residual"]);
    assert_eq!(t.rows.len(), 5);
    assert_eq!(t.rows[0][0], -60.0);
}

#[test]
fn sweep_with_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("point.cfg");
    std::fs::write(&cfg, "# weak pump\nomegaP = 0.2\nfockCutoff = 2\nJ = 5\n").unwrap();
    let csv = dir.path().join("s.csv");
    let out = blockade(&[
        "sweep",
        "--axis1",
        "omegaD=0,4",
        "--axis2",
        "delta=-1:1:3",
        "--config",
        cfg.to_str().unwrap(),
        "-o",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let t = read_csv_file(&csv).unwrap();
    assert_eq!(t.columns[..3], ["omegaD", "delta", "meanN"]);
    assert_eq!(t.rows.len(), 6);
}

#[test]
fn bad_config_value_names_key() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "gammaGS = fast\n").unwrap();
    let out = blockade(&["steady", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gammaGS"));
}

#[test]
fn usage_errors() {
    assert_eq!(blockade(&["nope"]).status.code(), Some(2));
    assert_eq!(blockade(&["figure", "fig99"]).status.code(), Some(2));
    assert_eq!(blockade(&["steady", "--fock-cutoff", "1"]).status.code(), Some(2));
    assert_eq!(blockade(&[]).status.code(), Some(2));
}

#[test]
fn dressed_table_to_stdout() {
    let out = blockade(&["dressed", "--J", "10", "--omega-d", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("manifold,index,numeric,numericTabulated,closedForm\n"));
    assert_eq!(text.lines().count(), 15);
}
