// Copyright 2026 lindblad-fidelity contributors
// SPDX-License-Identifier: Apache-2.0

//! End-to-end tests of the binary: exit codes, report files, determinism.

use std::path::Path;
use std::process::{Command, Output};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lindblad-fidelity"))
}

fn write_config(dir: &Path, name: &str, body: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn run_config(dir: &Path, body: &str, extra: &[&str]) -> (Output, std::path::PathBuf) {
    let config = write_config(dir, "config.json", body);
    let out = dir.join("report.json");
    let mut cmd = binary();
    cmd.arg("run")
        .arg("--config")
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .args(extra)
        .current_dir(dir);
    (cmd.output().unwrap(), out)
}

const BASIC_CONFIG: &str = r#"{
    "schema": "lindblad-fidelity/v1",
    "seed": 11,
    "scenarios": [
        {"n": 1, "gate": "identity", "tau": 1.0,
         "noise": [{"kind": "relaxation", "qubit": 0, "rate": 1e-3}],
         "samples": 1000},
        {"n": 2, "gate": {"name": "haar-random", "seed": 3}, "tau": 1.0,
         "noise": [{"kind": "two-photon", "rate": 2e-3},
                   {"kind": "dephasing", "qubit": 1, "rate": 1e-3}],
         "samples": 0}
    ]
}"#;

#[test]
fn run_writes_valid_report_with_small_residual() {
    let dir = tempfile::tempdir().unwrap();
    let (output, report_path) = run_config(dir.path(), BASIC_CONFIG, &[]);
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["schema"], "lindblad-fidelity/v1");
    assert_eq!(report["metadata"]["seed"], 11);
    assert_eq!(report["scenarios"].as_array().unwrap().len(), 2);

    // identity gate, Gamma_1 tau = 1e-3: residual bounded by (Gamma tau)^2
    let scenario = &report["scenarios"][0];
    let residual = scenario["residual"].as_f64().unwrap();
    assert!(residual.abs() <= 2e-6, "residual {residual}");
    assert_eq!(scenario["expansion_warning"], false);
    assert!(
        scenario["simulated_monte_carlo"]["std_error"]
            .as_f64()
            .unwrap()
            > 0.0
    );

    // second scenario skipped Monte Carlo
    assert!(report["scenarios"][1]["simulated_monte_carlo"].is_null());
}

#[test]
fn reports_are_deterministic_modulo_wall_time() {
    let dir = tempfile::tempdir().unwrap();
    let (first, path_a) = run_config(dir.path(), BASIC_CONFIG, &[]);
    assert!(first.status.success());
    let body_a = std::fs::read_to_string(&path_a).unwrap();

    let (second, path_b) = run_config(dir.path(), BASIC_CONFIG, &[]);
    assert!(second.status.success());
    let body_b = std::fs::read_to_string(&path_b).unwrap();

    let strip = |body: &str| -> String {
        body.lines()
            .filter(|line| !line.contains("wall_time_seconds"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&body_a), strip(&body_b));
    assert_ne!(body_a.find("wall_time_seconds"), None);
}

#[test]
fn malformed_noise_kind_exits_2_naming_field() {
    let dir = tempfile::tempdir().unwrap();
    let config = r#"{
        "schema": "lindblad-fidelity/v1",
        "scenarios": [
            {"n": 1, "gate": "identity", "tau": 1.0,
             "noise": [{"kind": "t2star", "rate": 1e-3}]}
        ]
    }"#;
    let (output, _) = run_config(dir.path(), config, &[]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("scenarios[0].noise[0].kind"), "{stderr}");
    assert!(stderr.contains("t2star"), "{stderr}");
}

#[test]
fn unknown_gate_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = r#"{
        "schema": "lindblad-fidelity/v1",
        "scenarios": [{"n": 1, "gate": "swap3", "tau": 1.0, "noise": []}]
    }"#;
    let (output, _) = run_config(dir.path(), config, &[]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("scenarios[0].gate"), "{stderr}");
}

#[test]
fn large_gamma_tau_flags_expansion_warning() {
    let dir = tempfile::tempdir().unwrap();
    let config = r#"{
        "schema": "lindblad-fidelity/v1",
        "scenarios": [
            {"n": 1, "gate": "identity", "tau": 1.0,
             "noise": [{"kind": "relaxation", "qubit": 0, "rate": 0.5}],
             "samples": 0}
        ]
    }"#;
    let (output, report_path) = run_config(dir.path(), config, &[]);
    assert!(output.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(report_path).unwrap()).unwrap();
    assert_eq!(report["scenarios"][0]["expansion_warning"], true);
}

#[test]
fn csv_export_has_one_row_per_scenario() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("summary.csv");
    let (output, _) = run_config(
        dir.path(),
        BASIC_CONFIG,
        &["--csv", csv_path.to_str().unwrap()],
    );
    assert!(output.status.success());
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = csv.trim_end().lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("index,n,gate"));
}

#[test]
fn lf_seed_env_is_fallback_and_cli_seed_wins() {
    let dir = tempfile::tempdir().unwrap();
    let config_no_seed = r#"{
        "schema": "lindblad-fidelity/v1",
        "scenarios": [{"n": 1, "gate": "identity", "tau": 1.0, "samples": 0}]
    }"#;
    let config = write_config(dir.path(), "c.json", config_no_seed);
    let out = dir.path().join("r.json");

    let status = binary()
        .args(["run", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .env("LF_SEED", "77")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert!(status.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["metadata"]["seed"], 77);

    let status = binary()
        .args(["run", "--seed", "5", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .env("LF_SEED", "77")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert!(status.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["metadata"]["seed"], 5);

    let status = binary()
        .args(["run", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .env("LF_SEED", "not-a-number")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
}

#[test]
fn delta_f_subcommand_prints_closed_forms() {
    let output = binary()
        .args([
            "delta-f",
            "--channel",
            "sigma-minus",
            "--qubit",
            "0",
            "--n",
            "3",
        ])
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8_lossy(&output.stdout);
    let value: f64 = stdout
        .lines()
        .next()
        .unwrap()
        .trim_start_matches("delta_f = ")
        .parse()
        .unwrap();
    assert!((value - (-4.0 / 9.0)).abs() < 1e-12, "{stdout}");
    assert!(stdout.contains("-4/9"), "{stdout}");

    let output = binary()
        .args(["delta-f", "--channel", "sigma-z"])
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("-2/3"), "{stdout}");

    let output = binary()
        .args(["delta-f", "--channel", "identity"])
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&output.stdout);
    let value: f64 = stdout
        .lines()
        .next()
        .unwrap()
        .trim_start_matches("delta_f = ")
        .parse()
        .unwrap();
    assert_eq!(value, 0.0);

    let output = binary()
        .args(["delta-f", "--channel", "collective-dephasing", "--n", "2"])
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&output.stdout);
    let value: f64 = stdout
        .lines()
        .next()
        .unwrap()
        .trim_start_matches("delta_f = ")
        .parse()
        .unwrap();
    assert!((value - (-8.0 / 5.0)).abs() < 1e-12, "{stdout}");
    assert!(stdout.contains("-8/5"), "{stdout}");

    let output = binary()
        .args(["delta-f", "--channel", "t1t2"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn bundled_demo_config_runs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let config = concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/demo.json");
    let output = binary()
        .args(["run", "--config", config, "--out"])
        .arg(&out)
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["scenarios"].as_array().unwrap().len(), 4);
    // the deliberately strong last scenario carries the warning flag
    assert_eq!(report["scenarios"][3]["expansion_warning"], true);
}

#[test]
fn verify_fast_passes() {
    let output = binary().args(["verify", "--fast"]).output().unwrap();
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(
        output.status.success(),
        "stdout:\n{stdout}\nstderr:\n{}",
        String::from_utf8_lossy(&output.stderr)
    );
    assert!(stdout.contains("checks passed"), "{stdout}");
    assert!(!stdout.contains("FAIL"), "{stdout}");
}
