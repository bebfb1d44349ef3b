use std::f64::consts::{PI, SQRT_2};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn spincs(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_spincs"));
    cmd.args(args).env_remove("SPINCS_THREADS");
    if let Some(n) = threads {
        cmd.env("SPINCS_THREADS", n);
    }
    cmd.output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const MONOPOLE: &str = r#"{
  "two_s": 4,
  "fiducial": "pure:-2",
  "field": { "b0": 1.0, "b": -1.0, "drive_omega": 0.0, "hbar": 1.3 },
  "initial": { "phi": 0.0, "theta": 1.0471975511965976, "psi": 0.0 },
  "resonance": "omega-from-theta",
  "periods": 1,
  "n_steps": 400,
  "outputs": { "report": "report.json", "trajectory": "trajectory.csv" }
}"#;

fn json(out: &[u8]) -> serde_json::Value {
    serde_json::from_slice(out).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines().skip(1).map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect()
}

#[test]
fn run_writes_report_and_trajectory() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "cfg.json", MONOPOLE);
    let out = spincs(&["run", cfg.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let report = json(&std::fs::read(dir.path().join("report.json")).unwrap());
    let gamma = report["phases"]["gamma"].as_f64().unwrap();
    let theta0 = PI / 3.0;
    assert!((gamma - 4.0 * PI * 1.3 * (1.0 - theta0.cos())).abs() < 1e-6 * 1.3);
    assert_eq!(report["passed"], true);
    assert_eq!(report["scenario"], "simplest:-2");

    let csv = std::fs::read_to_string(dir.path().join("trajectory.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "t,phi,theta,psi,phi_dot,theta_dot,psi_dot,H,s3_expect");
    let rows = csv_rows(&csv);
    assert_eq!(rows.len(), 401);
    assert!(rows.iter().all(|r| r.len() == 9 && (r[2] - theta0).abs() < 1e-9));
    let first = csv.lines().nth(1).unwrap().split(',').nth(2).unwrap();
    assert_eq!(first.split('e').next().unwrap().replace(['.', '-'], "").len(), 17);
}

#[test]
fn run_is_byte_deterministic() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "cfg.json", MONOPOLE);
    let read = || {
        assert!(spincs(&["run", cfg.to_str().unwrap()], None).status.success());
        (std::fs::read(dir.path().join("report.json")).unwrap(), std::fs::read(dir.path().join("trajectory.csv")).unwrap())
    };
    assert_eq!(read(), read());
}

#[test]
fn equal_pair_run_reports_zero_phases() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        dir.path(),
        "cfg.json",
        r#"{"two_s": 2, "fiducial": "spin1-equal-pair", "field": {"b0": 0.7, "b": 0.2, "drive_omega": 2.3},
            "initial": {"phi": 0.2, "theta": 0.9, "psi": 0.1}, "duration": 5.0, "tolerance": 1e-10}"#,
    );
    let out = spincs(&["run", cfg.to_str().unwrap()], None);
    assert!(out.status.success());
    let r = json(&out.stdout);
    assert_eq!(r["phases"]["gamma"], 0.0);
    assert_eq!(r["phases"]["delta"], 0.0);
    assert_eq!(r["consistency_residual"], serde_json::Value::Null);
}

#[test]
fn malformed_config_exits_two_with_position() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "bad.json", "{\n  \"two_s\": 2,\n  \"fiducial\": \"spin1-uniform\"\n  \"field\": {}\n}\n");
    let out = spincs(&["run", cfg.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.json:4:3"), "{err}");
}

#[test]
fn unknown_keys_and_presets_exit_two() {
    let dir = TempDir::new().unwrap();
    for (name, text) in [
        ("key.json", r#"{"two_s": 2, "fiducial": "spin1-uniform", "field": {"b0": 1, "b": 0, "drive_omega": 1}, "extra": 1}"#),
        ("nested.json", r#"{"two_s": 2, "fiducial": "spin1-uniform", "field": {"b0": 1, "b": 0, "drive_omega": 1, "bz": 2}}"#),
        ("preset.json", r#"{"two_s": 2, "fiducial": "spin1-thirds", "field": {"b0": 1, "b": 0, "drive_omega": 1}}"#),
        ("spin.json", r#"{"two_s": 3, "fiducial": "spin1-uniform", "field": {"b0": 1, "b": 0, "drive_omega": 1}}"#),
    ] {
        let cfg = write(dir.path(), name, text);
        let out = spincs(&["run", cfg.to_str().unwrap()], None);
        assert_eq!(out.status.code(), Some(2), "{name}");
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(spincs(&["run", dir.path().join("missing.json").to_str().unwrap()], None).status.code(), Some(2));
}

#[test]
fn singular_start_exits_three() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        dir.path(),
        "pole.json",
        r#"{"two_s": 2, "fiducial": "pure:1", "field": {"b0": 1, "b": 0.5, "drive_omega": 1}, "duration": 1.0}"#,
    );
    let out = spincs(&["run", cfg.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    let no_root = write(
        dir.path(),
        "root.json",
        r#"{"two_s": 2, "fiducial": "pure:1", "field": {"b0": 0, "b": 0.5, "drive_omega": 1}, "resonance": "theta-from-omega"}"#,
    );
    assert_eq!(spincs(&["run", no_root.to_str().unwrap()], None).status.code(), Some(3));
}

#[test]
fn tolerance_breach_exits_one() {
    let dir = TempDir::new().unwrap();
    let text = MONOPOLE
        .replace("\"n_steps\": 400", "\"n_steps\": 400, \"tolerance\": 1e-300")
        .replace("\"outputs\": { \"report\": \"report.json\", \"trajectory\": \"trajectory.csv\" }", "\"outputs\": {}");
    let cfg = write(dir.path(), "cfg.json", &text);
    let out = spincs(&["run", cfg.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out.stdout)["passed"], false);
}

const A3: &str = r#"{
  "two_s": 2,
  "fiducial": "spin1-uniform",
  "field": { "b0": 1.0, "b": 0.5, "drive_omega": 0.0, "mu": -1.0, "hbar": 0.9 },
  "initial": { "phi": 0.0, "theta": 0.5, "psi": 0.0 },
  "resonance": "omega-from-theta",
  "periods": 1
}"#;

#[test]
fn theta_sweep_follows_the_a3_phase() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "a3.json", A3);
    let out = spincs(&["sweep", cfg.to_str().unwrap(), "--param", "theta0", "--from", "0.2", "--to", "1.4", "--count", "7"], None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next().unwrap(), "parameter,gamma,delta,intensity");
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 7);
    for r in rows {
        let want = -(4.0 * SQRT_2 / 3.0) * 0.9 * PI * r[0].sin();
        assert!((r[1] - want).abs() < 1e-6, "θ₀ = {}: {} vs {want}", r[0], r[1]);
        assert!((r[3] - (1.0 + ((r[1] - r[2]) / 0.9).cos())).abs() < 1e-12);
    }
}

#[test]
fn delta_zero_sweep_traces_the_fringe() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        dir.path(),
        "dz.json",
        r#"{"two_s": 2, "fiducial": "pure:1", "field": {"b0": 0.8, "b": 0.6, "drive_omega": 0, "mu": -1},
            "resonance": "delta-zero", "periods": 1}"#,
    );
    let out = spincs(&["sweep", cfg.to_str().unwrap(), "--param", "field.b0", "--from", "0.1", "--to", "3", "--count", "9"], None);
    assert!(out.status.success());
    for r in csv_rows(&String::from_utf8(out.stdout).unwrap()) {
        let gamma = -2.0 * PI * (1.0 + r[0] / (r[0] * r[0] + 0.36).sqrt());
        assert!(r[2].abs() < 1e-8);
        assert!((r[3] - (1.0 + gamma.cos())).abs() < 1e-6);
    }
}

#[test]
fn sweep_output_is_independent_of_thread_count() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "a3.json", A3);
    let args = ["sweep", cfg.to_str().unwrap(), "--param", "b", "--from", "-0.3", "--to", "0.8", "--count", "6"];
    let one = spincs(&args, Some("1"));
    let four = spincs(&args, Some("4"));
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, spincs(&args, None).stdout);
    assert_eq!(spincs(&args, Some("zero")).status.code(), Some(2));
}

#[test]
fn sweep_edge_cases() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "a3.json", A3);
    let c = cfg.to_str().unwrap();
    let empty = spincs(&["sweep", c, "--param", "b0", "--from", "0", "--to", "1", "--count", "0"], None);
    assert!(empty.status.success());
    assert_eq!(String::from_utf8(empty.stdout).unwrap(), "parameter,gamma,delta,intensity\n");
    assert_eq!(spincs(&["sweep", c, "--param", "colour", "--from", "0", "--to", "1", "--count", "2"], None).status.code(), Some(2));
    let file = dir.path().join("out.csv");
    let out =
        spincs(&["sweep", c, "--param", "hbar", "--from", "0.5", "--to", "1", "--count", "2", "--output", file.to_str().unwrap()], None);
    assert!(out.status.success() && out.stdout.is_empty());
    assert_eq!(csv_rows(&std::fs::read_to_string(file).unwrap()).len(), 2);
}

#[test]
fn fast_check_runs_without_configuration() {
    let dir = TempDir::new().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_spincs")).arg("check").current_dir(dir.path()).output().unwrap();
    assert!(out.status.success());
    let r = json(&out.stdout);
    assert_eq!(r["level"], "fast");
    assert_eq!(r["passed"], true);
    let names: Vec<_> = r["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap().to_string()).collect();
    assert_eq!(names, ["resolution_of_unity", "unitarity"]);
}
