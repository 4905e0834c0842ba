use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn qslforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qslforge"))
        .args(args)
        .env_remove("QSLFORGE_SEED")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn close(v: &Value, expected: f64, tol: f64) -> bool {
    (v.as_f64().expect("number") - expected).abs() <= tol
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_schedule(dir: &TempDir, name: &str, schedule: Value) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, schedule.to_string()).unwrap();
    path
}

fn hadamard_schedule(scale: f64) -> Value {
    let k = scale * PI / (2.0 * SQRT_2);
    json!({"hbar": 1.0, "segments": [{"duration": 1.0, "h": [[[k, 0.0], [k, 0.0]], [[k, 0.0], [-k, 0.0]]]}]})
}

fn zero_schedule() -> Value {
    json!({"segments": [{"duration": 1.0, "h": [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]}]})
}

#[test]
fn analyze_hadamard() {
    let out = qslforge(&["analyze", "--named", "H"]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert!(close(&report["min_cost"], PI / 2.0, 1e-12));
    assert!(close(&report["rotation"]["angle"], PI, 1e-12));
    let axis = report["rotation"]["axis"].as_array().unwrap();
    assert!(close(&axis[0], FRAC_1_SQRT_2, 1e-4));
    assert!(close(&axis[1], 0.0, 1e-4));
    assert!(close(&axis[2], FRAC_1_SQRT_2, 1e-4));
    assert!(close(&report["rotation"]["worst_case_angle"], PI / 2.0, 1e-12));
}

#[test]
fn analyze_identity_and_cnot() {
    let report = stdout_json(&qslforge(&["analyze", "--named", "I"]));
    assert_eq!(report["min_cost"], 0.0);
    assert_eq!(report["arc_length"], 0.0);
    assert_eq!(report["rotation"]["axis_is_conventional"], true);

    let report = stdout_json(&qslforge(&["analyze", "--named", "CNOT"]));
    assert!(close(&report["min_cost"], PI / 2.0, 1e-12));
    assert!(close(&report["arc_length"], PI, 1e-12));
    assert!(report.get("rotation").is_none());
    assert_eq!(report["eigenphases"].as_array().unwrap().len(), 4);
}

#[test]
fn analyze_gate_file_and_out() {
    let dir = TempDir::new().unwrap();
    let gate = dir.path().join("t.json");
    let r = FRAC_1_SQRT_2;
    fs::write(&gate, json!({"dim": 2, "matrix": [[[1, 0], [0, 0]], [[0, 0], [r, r]]]}).to_string()).unwrap();
    let out_path = dir.path().join("report.json");
    let out = qslforge(&["analyze", "--gate", path_str(&gate), "--out", path_str(&out_path)]);
    assert!(out.status.success());
    let written: Value = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(written, stdout_json(&out));
    assert!(close(&written["min_cost"], PI / 8.0, 1e-12));
}

#[test]
fn synthesize_hadamard_matches_closed_form() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("h.json");
    let out = qslforge(&["synthesize", "--named", "H", "--tau", "1", "--out", path_str(&path)]);
    assert!(out.status.success());
    let meta = stdout_json(&out);
    assert!(close(&meta["min_cost"], PI / 2.0, 1e-12));
    assert_eq!(meta["exact_phase"], false);
    let schedule: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let expected = hadamard_schedule(1.0);
    let (got, want) = (&schedule["segments"][0]["h"], &expected["segments"][0]["h"]);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                assert!(close(&got[i][j][k], want[i][j][k].as_f64().unwrap(), 1e-9));
            }
        }
    }
}

#[test]
fn synthesize_identity_is_zero() {
    let out = qslforge(&["synthesize", "--named", "I", "--tau", "1"]);
    let doc = stdout_json(&out);
    let h = &doc["schedule"]["segments"][0]["h"];
    let entries = h.as_array().unwrap().iter().flat_map(|row| row.as_array().unwrap());
    assert!(entries.flat_map(|z| z.as_array().unwrap()).all(|x| x.as_f64() == Some(0.0)));
    assert_eq!(doc["metadata"]["min_cost"], 0.0);
}

#[test]
fn shaped_cnot_costs_the_minimum() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("cnot.json");
    let out = qslforge(&[
        "synthesize", "--named", "CNOT", "--tau", "2", "--shape", "triangular:64", "--out", path_str(&path),
    ]);
    assert!(out.status.success());
    let schedule: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(schedule["segments"].as_array().unwrap().len(), 64);
    let out = qslforge(&["verify", "--schedule", path_str(&path), "--named", "CNOT"]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert!(close(&report["costs"]["C_opnorm"], PI / 2.0, 1e-9));
}

#[test]
fn verify_optimal_hadamard() {
    let dir = TempDir::new().unwrap();
    let path = write_schedule(&dir, "h.json", hadamard_schedule(1.0));
    let out = qslforge(&["verify", "--schedule", path_str(&path), "--named", "H", "--p", "1,2,inf"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert!(close(&report["fidelity"], 1.0, 1e-12));
    assert_eq!(report["passed"], true);
    let bounds = report["bounds"].as_array().unwrap();
    assert!(bounds.iter().all(|b| b["satisfied"] == true));
    let cost_arc = bounds.iter().find(|b| b["bound"] == "cost_arc").unwrap();
    assert!(cost_arc["slack"].as_f64().unwrap().abs() <= 1e-9);
    for key in ["bound", "lhs", "rhs", "slack", "satisfied"] {
        assert!(cost_arc.get(key).is_some(), "{key}");
    }
    for key in ["tau", "C_opnorm", "A", "C_schatten", "C_lebesgue"] {
        assert!(report["costs"].get(key).is_some(), "{key}");
    }
}

#[test]
fn verify_rejects_wrong_gates() {
    let dir = TempDir::new().unwrap();
    let zero = write_schedule(&dir, "zero.json", zero_schedule());
    let out = qslforge(&["verify", "--schedule", path_str(&zero), "--named", "H"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["allowed"], false);

    let doubled = write_schedule(&dir, "double.json", hadamard_schedule(2.0));
    let out = qslforge(&["verify", "--schedule", path_str(&doubled), "--named", "H"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout_json(&out)["fidelity"].as_f64().unwrap() < 1.0 - 1e-8);
}

#[test]
fn verify_exact_phase_needs_exact_gate() {
    let dir = TempDir::new().unwrap();
    let centered = write_schedule(&dir, "h.json", hadamard_schedule(1.0));
    let out = qslforge(&["verify", "--schedule", path_str(&centered), "--named", "H", "--exact-phase"]);
    assert_eq!(out.status.code(), Some(2));

    let exact = dir.path().join("exact.json");
    assert!(qslforge(&["synthesize", "--named", "H", "--tau", "1", "--exact-phase", "--out", path_str(&exact)])
        .status
        .success());
    let out = qslforge(&["verify", "--schedule", path_str(&exact), "--named", "H", "--exact-phase"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    let schatten: Vec<&Value> = report["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|b| b["bound"].as_str().unwrap().starts_with("schatten"))
        .collect();
    assert_eq!(schatten.len(), 3);
    assert!(schatten.iter().all(|b| b["slack"].as_f64().unwrap().abs() <= 1e-9));
}

#[test]
fn verify_shift_ground_changes_reported_costs() {
    let dir = TempDir::new().unwrap();
    let path = write_schedule(
        &dir,
        "offset.json",
        json!({"segments": [{"duration": 1.0, "h": [[[3, 0], [0, 0]], [[0, 0], [1, 0]]]}]}),
    );
    let gate = dir.path().join("g.json");
    let phase = |e: f64| [(-e).cos(), (-e).sin()];
    fs::write(&gate, json!({"dim": 2, "matrix": [[phase(3.0), [0, 0]], [[0, 0], phase(1.0)]]}).to_string()).unwrap();
    let plain = stdout_json(&qslforge(&["verify", "--schedule", path_str(&path), "--gate", path_str(&gate)]));
    let shifted = stdout_json(&qslforge(&[
        "verify", "--schedule", path_str(&path), "--gate", path_str(&gate), "--shift-ground",
    ]));
    assert!(close(&plain["costs"]["C_opnorm"], 3.0, 1e-12));
    assert!(close(&shifted["costs"]["C_opnorm"], 2.0, 1e-12));
    assert_eq!(plain["passed"], true);
}

#[test]
fn sweep_is_clean_and_deterministic() {
    let run = || qslforge(&["sweep", "--seed", "42", "--trials", "1000", "--dims", "2,4"]);
    let first = run();
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    let report = stdout_json(&first);
    assert_eq!(report["total_violations"], 0);
    assert!(report["bounds"].as_object().unwrap().values().all(|b| b["violations"] == 0));
    let second = run();
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn sweep_seed_from_environment() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_qslforge"))
        .args(["sweep", "--trials", "3", "--bounds", "area"])
        .env("QSLFORGE_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(stdout_json(&with_env)["config"]["seed"], 7);
}

#[test]
fn sweep_rejects_bad_configs() {
    assert_eq!(qslforge(&["sweep", "--trials", "0"]).status.code(), Some(1));
    assert_eq!(qslforge(&["sweep", "--dims", "3"]).status.code(), Some(1));
    assert_eq!(qslforge(&["sweep", "--bounds", "nope"]).status.code(), Some(1));
}

#[test]
fn trajectories_of_optimal_and_zero_schedules() {
    let dir = TempDir::new().unwrap();
    let h = write_schedule(&dir, "h.json", hadamard_schedule(1.0));
    let csv = dir.path().join("h.csv");
    let out = qslforge(&["trajectories", "--schedule", path_str(&h), "--samples", "8", "--out", path_str(&csv)]);
    assert!(out.status.success());
    assert!(close(&stdout_json(&out)["phase_volume"], PI, 1e-12));
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,E_0,E_1"));
    for line in lines {
        let fields: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert!((fields[1] + PI / 2.0).abs() < 1e-12 && (fields[2] - PI / 2.0).abs() < 1e-12);
    }

    let zero = write_schedule(&dir, "zero.json", zero_schedule());
    let out = qslforge(&["trajectories", "--schedule", path_str(&zero), "--samples", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().skip(1).all(|l| l.split(',').skip(1).all(|x| x.parse::<f64>().unwrap() == 0.0)));
}

#[test]
fn trajectories_show_steps() {
    let dir = TempDir::new().unwrap();
    let path = write_schedule(
        &dir,
        "steps.json",
        json!({"segments": [
            {"duration": 1.0, "h": [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]},
            {"duration": 1.0, "h": [[[2, 0], [0, 0]], [[0, 0], [-2, 0]]]}
        ]}),
    );
    let out = qslforge(&["trajectories", "--schedule", path_str(&path), "--samples", "1"]);
    let rows: Vec<Vec<f64>> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[1][2], 1.0);
    assert_eq!(rows[2][2], 2.0);
    assert_eq!(rows[1][0], rows[2][0]);
}

#[test]
fn failures_leave_no_output_files() {
    let dir = TempDir::new().unwrap();
    let bad_gate = dir.path().join("bad.json");
    fs::write(&bad_gate, r#"{"dim": 2, "matrix": [[[1,0],[0,0]],[[0,0],[2,0]]]}"#).unwrap();
    let out_path = dir.path().join("out.json");
    let out = qslforge(&["synthesize", "--gate", path_str(&bad_gate), "--tau", "1", "--out", path_str(&out_path)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not unitary"));
    assert!(!out_path.exists());

    let malformed = dir.path().join("malformed.json");
    fs::write(&malformed, "{\"segments\": [").unwrap();
    let csv = dir.path().join("t.csv");
    let out = qslforge(&["trajectories", "--schedule", path_str(&malformed), "--out", path_str(&csv)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!csv.exists());
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(qslforge(&["analyze"]).status.code(), Some(1));
    assert_eq!(qslforge(&["analyze", "--named", "H", "--gate", "x.json"]).status.code(), Some(1));
    assert_eq!(qslforge(&["analyze", "--named", "RX"]).status.code(), Some(1));
    assert_eq!(qslforge(&["synthesize", "--named", "H", "--tau", "-1"]).status.code(), Some(1));
    assert_eq!(qslforge(&["synthesize", "--named", "H", "--tau", "1", "--shape", "wobble:4"]).status.code(), Some(1));
    assert_eq!(qslforge(&["verify", "--schedule", "missing.json", "--named", "H", "--p", "0.5"]).status.code(), Some(1));
    assert_eq!(qslforge(&["--help"]).status.code(), Some(0));
}
