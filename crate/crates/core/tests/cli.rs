//! End-to-end runs of the `geophase` binary.

use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn geophase(args: &[&str], config: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_geophase"));
    cmd.args(args);
    if let Some(c) = config {
        cmd.arg("--config").arg(c);
    }
    cmd.output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run_stdout(dir: &Path, text: &str) -> Value {
    let cfg = write(dir, "cfg.json", text);
    let out = geophase(&["run"], Some(&cfg));
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn preset(theta_c: f64) -> String {
    format!(
        r#"{{"task": "aa_phase", "dimension": 2,
            "generator": {{"preset": "spin_half_rotating_field",
                          "params": {{"B": 1.0, "theta_c": {theta_c:?}, "omega": 1.0}}}},
            "time": {{"steps": 4000}}}}"#
    )
}

#[test]
fn version_prints_semver() {
    let out = geophase(&["--version"], None);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.trim().ends_with(env!("CARGO_PKG_VERSION")), "{text}");
}

#[test]
fn aa_phase_report_schema_and_values() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_stdout(dir.path(), &preset(PI / 2.0));
    let keys: Vec<&str> = report
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    for k in [
        "task",
        "dimension",
        "total_phase",
        "dynamical_phase",
        "geometric_phase",
        "holonomy",
        "cyclic_residual",
        "transport_residual",
        "steps",
        "t_final",
    ] {
        assert!(keys.contains(&k), "missing {k}");
    }
    assert_eq!(report["task"], "aa_phase");
    assert_eq!(report["steps"], 4000);
    let gamma = report["geometric_phase"].as_f64().unwrap();
    assert!((gamma.abs() - PI).abs() <= 1e-4);
    for k in ["total_phase", "dynamical_phase", "geometric_phase"] {
        let v = report[k].as_f64().unwrap();
        assert!(v > -PI - 1e-12 && v <= PI, "{k} = {v}");
    }
    let h = &report["holonomy"];
    assert!((h[0].as_f64().unwrap() + 1.0).abs() < 1e-4);
    assert!((report["t_final"].as_f64().unwrap() - 2.0 * PI).abs() < 1e-15);
}

#[test]
fn preset_cone_magnitudes() {
    let dir = tempfile::tempdir().unwrap();
    for (theta_c, magnitude) in [(PI / 3.0, PI / 2.0), (0.1, PI * (1.0 - 0.1f64.cos()))] {
        let report = run_stdout(dir.path(), &preset(theta_c));
        let gamma = report["geometric_phase"].as_f64().unwrap();
        assert!(
            (gamma.abs() - magnitude).abs() <= 1e-4,
            "{theta_c}: {gamma}"
        );
    }
    assert!((PI * (1.0 - 0.1f64.cos()) - 0.0157).abs() < 1e-4);
}

#[test]
fn pancharatnam_task_recovers_beta() {
    let dir = tempfile::tempdir().unwrap();
    let (c, s) = (PI / 3.0).sin_cos();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let text = format!(
        r#"{{"task": "pancharatnam", "dimension": 2,
            "states": [[[1, 0], [0, 0]], [[{:?}, {:?}], [{:?}, {:?}]]]}}"#,
        r * s,
        r * c,
        r * s,
        r * c
    );
    let report = run_stdout(dir.path(), &text);
    assert!((report["beta"].as_f64().unwrap() - PI / 3.0).abs() <= 1e-6);
}

#[test]
fn gauge_audit_task_within_tolerance() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_stdout(dir.path(), r#"{"task": "gauge_audit", "dimension": 2}"#);
    assert_eq!(report["seed"], 0);
    assert_eq!(report["trials"], 100);
    assert!(report["max_loop_gamma_deviation"].as_f64().unwrap() <= 1e-6);
    assert!(report["max_open_shift_deviation"].as_f64().unwrap() <= 1e-5);
}

#[test]
fn stokes_and_geodesic_tasks() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_stdout(
        dir.path(),
        r#"{"task": "stokes_check", "dimension": 2, "patch": {"shape": "hemisphere", "refinement": 32}}"#,
    );
    assert!(report["residual"].as_f64().unwrap() <= 1e-3);
    let report = run_stdout(
        dir.path(),
        r#"{"task": "stokes_check", "dimension": 2, "patch": {"shape": "cap", "theta_max": 1.0, "refinement": 32}}"#,
    );
    assert!(report["residual"].as_f64().unwrap() <= 1e-3);
    let report = run_stdout(
        dir.path(),
        r#"{"task": "geodesic_table", "dimension": 3, "samples": 11,
            "states": [[[1, 0], [0, 0], [0, 0]], [[0.5, 0.5], [0.5, 0], [0, 0.5]]]}"#,
    );
    assert!(report["normalization_residual"].as_f64().unwrap() <= 1e-10);
    assert!((report["beta"].as_f64().unwrap() - PI / 4.0).abs() <= 1e-12);
}

#[test]
fn samples_csv_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "audit.json",
        r#"{"task": "gauge_audit", "dimension": 2, "samples": 101, "trials": 5,
            "output": {"report_path": "r.json", "samples_path": "s.csv"}}"#,
    );
    let out = geophase(&["run"], Some(&cfg));
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let csv = std::fs::read_to_string(dir.path().join("s.csv")).unwrap();
    let lines: Vec<&str> = csv.split('\n').collect();
    assert_eq!(lines[0], "s,A_s,re_0,im_0,re_1,im_1");
    assert_eq!(lines.len(), 101 + 2); // header, rows, trailing empty
    assert!(!csv.contains('\r'));
    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(report["seed"], 0);

    let other = dir.path().join("other.json");
    let out = Command::new(env!("CARGO_BIN_EXE_geophase"))
        .args(["run", "--seed", "9", "--config"])
        .arg(&cfg)
        .arg("--report")
        .arg(&other)
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(other).unwrap()).unwrap();
    assert_eq!(report["seed"], 9);
}

#[test]
fn matrix_file_resolves_relative_to_config() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "h.json",
        "[[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]",
    );
    let report = run_stdout(
        dir.path(),
        r#"{"task": "aa_phase", "dimension": 2, "generator": {"matrix_file": "h.json"},
            "initial_state": [[0.6, 0], [0, 0.8]], "time": {"t_final": 3.141592653589793, "steps": 2000}}"#,
    );
    // ψ(π) = −ψ₀ and h = 0.36 − 0.64, so γ = π − 0.28π
    let gamma = report["geometric_phase"].as_f64().unwrap();
    assert!((gamma - 0.72 * PI).abs() < 1e-8, "{gamma}");
}

#[test]
fn computational_failure_exits_one_with_category() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "open.json",
        r#"{"task": "aa_phase", "dimension": 2,
            "generator": {"matrix": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]},
            "initial_state": [[1, 0], [0, 0]], "time": {"t_final": 1.0, "steps": 100}}"#,
    );
    let out = geophase(&["run"], Some(&cfg));
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not_cyclic"));
    assert!(out.stdout.is_empty());
}

#[test]
fn config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.json");
    assert_eq!(
        geophase(&["validate"], Some(&missing)).status.code(),
        Some(2)
    );
    let bad = write(
        dir.path(),
        "bad.json",
        "{\"task\": \"aa_phase\",\n \"dimension\": }",
    );
    let out = geophase(&["run"], Some(&bad));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let params = write(
        dir.path(),
        "params.json",
        &preset(PI / 2.0).replace("\"omega\": 1.0", "\"omega\": 0.0"),
    );
    let out = geophase(&["validate"], Some(&params));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("generator.preset"));
    assert_eq!(geophase(&["frobnicate"], None).status.code(), Some(2));
    let ok = write(dir.path(), "ok.json", &preset(1.0));
    let out = geophase(&["validate"], Some(&ok));
    assert_eq!(out.status.code(), Some(0));
}
