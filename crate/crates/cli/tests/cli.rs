use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use susy_qubit::csv::parse_csv;

const BIN: &str = env!("CARGO_BIN_EXE_susy-qubit");

const HYPERBOLIC_CONFIG: &str = r#"{
  "k": -0.49, "theta": -25, "phi": -0.54,
  "t_min": 0, "t_max": 50, "dt": 0.001,
  "frame": "c",
  "initial_rule": "explicit",
  "initial_1_re": 0.7071067811865476, "initial_1_im": 0,
  "initial_2_re": 0.7071067811865476, "initial_2_im": 0
}"#;

fn susy(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("SUSY_QUBIT_MAG_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn presets_lists_all_names() {
    let o = susy(&["presets"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for needle in [
        "decaying",
        "hyperbolic",
        "trigonometric",
        "k = 1.566",
        "phi = 0.455",
    ] {
        assert!(text.contains(needle), "{needle} missing:\n{text}");
    }
}

#[test]
fn describe_echoes_config_fields() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "h.json", HYPERBOLIC_CONFIG);
    let o = susy(&["describe", "--config", &cfg]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    for needle in [
        "name: custom",
        "k: -0.49",
        "theta: -25",
        "phi: -0.54",
        "t_min: 0",
        "t_max: 50",
        "dt: 0.001",
        "frame: c",
        "initial_rule: explicit",
        "initial_1_re: 0.7071067811865476",
        "initial_1_im: 0",
        "initial_2_re: 0.7071067811865476",
        "initial_2_im: 0",
    ] {
        assert!(text.contains(needle), "{needle} missing:\n{text}");
    }
}

#[test]
fn config_equivalent_to_preset_gives_identical_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "h.json", HYPERBOLIC_CONFIG);
    let from_cfg = dir.path().join("cfg.csv");
    let from_preset = dir.path().join("preset.csv");
    assert!(susy(&[
        "simulate",
        "--config",
        &cfg,
        "--output",
        from_cfg.to_str().unwrap()
    ])
    .status
    .success());
    assert!(susy(&[
        "simulate",
        "--scenario",
        "hyperbolic",
        "--output",
        from_preset.to_str().unwrap()
    ])
    .status
    .success());
    assert_eq!(
        fs::read(&from_cfg).unwrap(),
        fs::read(&from_preset).unwrap()
    );
}

#[test]
fn simulate_is_deterministic_and_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.csv");
    let second = dir.path().join("b.csv");
    let args = |p: &Path| {
        vec![
            "simulate".to_string(),
            "--scenario".into(),
            "trigonometric".into(),
            "--method".into(),
            "rk4".into(),
            "--t-max".into(),
            "5".into(),
            "--output".into(),
            p.to_str().unwrap().into(),
        ]
    };
    let run = |p: &Path| Command::new(BIN).args(args(p)).output().unwrap();
    assert!(run(&first).status.success());
    assert!(run(&second).status.success());
    let bytes = fs::read(&first).unwrap();
    assert_eq!(bytes, fs::read(&second).unwrap());
    let piped = susy(&[
        "simulate",
        "--scenario",
        "trigonometric",
        "--method",
        "rk4",
        "--t-max",
        "5",
    ]);
    assert_eq!(piped.stdout, bytes);
    let text = String::from_utf8(bytes).unwrap();
    assert_eq!(text.lines().count(), 5001 + 1);
}

#[test]
fn decaying_csv_starts_in_lower_hemisphere() {
    let o = susy(&["simulate", "--scenario", "decaying", "--dt", "0.01"]);
    assert!(o.status.success());
    let rows = parse_csv(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 1001);
    assert_eq!(rows[0].t(), 0.0);
    assert!(rows[0].w() < 0.0);
}

#[test]
fn both_method_reports_deviation_on_stderr() {
    let o = susy(&[
        "simulate",
        "--scenario",
        "hyperbolic",
        "--method",
        "both",
        "--t-max",
        "2",
    ]);
    assert!(o.status.success());
    let err = stderr(&o);
    assert!(err.contains("max deviation") && err.contains("a1"), "{err}");
    assert!(stdout(&o).starts_with("t,a1_re"));
}

#[test]
fn validate_passes_and_fails_by_tolerance() {
    let ok = susy(&["validate", "--scenario", "decaying"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert!(stdout(&ok).contains("dt = 0.0001"));
    assert!(stdout(&ok).contains("PASS"));
    let strict = susy(&[
        "validate",
        "--scenario",
        "decaying",
        "--t-max",
        "1",
        "--tolerance",
        "1e-20",
    ]);
    assert_eq!(strict.status.code(), Some(2));
    assert!(stdout(&strict).contains("FAIL"));
}

#[test]
fn convergence_exit_codes() {
    let ok = susy(&["convergence", "--scenario", "hyperbolic"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    // At these steps the hyperbolic error is rounding-dominated.
    let degraded = susy(&[
        "convergence",
        "--scenario",
        "hyperbolic",
        "--base-dt",
        "1e-3",
        "--levels",
        "2",
    ]);
    assert_eq!(degraded.status.code(), Some(2), "{}", stdout(&degraded));
}

#[test]
fn decaying_rule_with_negative_k_is_a_regime_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "bad.json",
        r#"{"k": -2, "theta": 0, "phi": 0.3, "t_max": 1, "dt": 0.01, "initial_rule": "decaying_limit"}"#,
    );
    let o = susy(&["describe", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stderr(&o).contains("not valid for k = -2"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn config_diagnostics_name_each_key() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "bad.json",
        r#"{"k": "x", "theta": 0, "dt": 0, "initial_rule": "explicit", "extra": 1}"#,
    );
    let o = susy(&["simulate", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    for key in ["k:", "phi:", "t_max:", "dt:", "extra:", "initial_1_re:"] {
        assert!(err.contains(key), "{key} missing:\n{err}");
    }
}

#[test]
fn usage_and_lookup_errors_exit_one() {
    let unknown = susy(&["simulate", "--scenario", "nope"]);
    assert_eq!(unknown.status.code(), Some(1));
    assert!(stderr(&unknown).contains("decaying, hyperbolic, trigonometric"));
    assert_eq!(susy(&["simulate"]).status.code(), Some(1));
    assert_eq!(
        susy(&["simulate", "--scenario", "decaying", "--config", "x.json"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        susy(&["simulate", "--scenario", "decaying", "--method", "euler"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(susy(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        susy(&["describe", "--config", "/nonexistent/c.json"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(susy(&["--help"]).status.code(), Some(0));
}

#[test]
fn unwritable_output_reports_path() {
    let o = susy(&[
        "simulate",
        "--scenario",
        "decaying",
        "--t-max",
        "0.1",
        "--output",
        "/nonexistent/dir/out.csv",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("/nonexistent/dir/out.csv"));
}

#[test]
fn magnitude_cap_from_environment() {
    let bad = Command::new(BIN)
        .args(["describe", "--scenario", "decaying"])
        .env("SUSY_QUBIT_MAG_CAP", "abc")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let tight = Command::new(BIN)
        .args(["simulate", "--scenario", "hyperbolic", "--method", "rk4"])
        .env("SUSY_QUBIT_MAG_CAP", "0.9")
        .output()
        .unwrap();
    assert_eq!(tight.status.code(), Some(1));
    let err = stderr(&tight);
    assert!(
        err.contains("hyperbolic") && err.contains("last valid time"),
        "{err}"
    );
    let described = Command::new(BIN)
        .args(["describe", "--scenario", "decaying"])
        .env("SUSY_QUBIT_MAG_CAP", "1e6")
        .output()
        .unwrap();
    assert!(stdout(&described).contains("magnitude_cap: 1e6"));
}
