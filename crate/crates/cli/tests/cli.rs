use std::process::{Command, Output};

use serde_json::Value;

fn cliffur(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cliffur"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_passes_for_three_qubits() {
    let out = cliffur(&["verify", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    for key in ["tool_version", "command", "config", "results", "residuals", "wall_time_ms"] {
        assert!(doc.get(key).is_some(), "missing {key}");
    }
    assert_eq!(doc["command"], "verify");
    let checks = doc["results"]["checks"].as_array().unwrap();
    assert!(checks.len() >= 8);
    assert!(checks.iter().all(|c| c["passed"] == true));
}

#[test]
fn zero_qubits_is_a_usage_error() {
    let out = cliffur(&["verify", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(cliffur(&["verify", "--bogus"]).status.code(), Some(2));
    assert_eq!(cliffur(&["minimize", "--n", "1", "--K", "2", "--alpha", "-3"]).status.code(), Some(2));
}

#[test]
fn verify_is_reproducible() {
    let args = ["verify", "--n", "2", "--samples", "1000", "--seed", "7"];
    let a = cliffur(&args);
    let b = cliffur(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn minimize_shannon_single_qubit() {
    let out = cliffur(&["minimize", "--n", "1", "--K", "3", "--alpha", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["results"];
    assert!((r["numeric_min"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-6);
    assert!(r["gap"].as_f64().unwrap().abs() <= 1e-6);
    assert_eq!(r["within_tolerance"], true);
}

#[test]
fn minimize_collision_two_qubits() {
    let out = cliffur(&["minimize", "--n", "2", "--K", "5", "--alpha", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["results"];
    assert!((r["numeric_min"].as_f64().unwrap() - 0.736966).abs() < 1e-6);
}

#[test]
fn minimize_min_entropy_reports_lower_bound() {
    let out = cliffur(&["minimize", "--n", "2", "--K", "4", "--alpha", "inf", "--samples", "20000"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["results"];
    assert_eq!(r["alpha"], "inf");
    assert_eq!(r["bound_kind"], "lower-bound");
    assert!(r["gap"].as_f64().unwrap().abs() <= 1e-6);
}

#[test]
fn minimize_rejects_too_many_observables() {
    let out = cliffur(&["minimize", "--n", "2", "--K", "6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_shannon_closed_forms() {
    let out = cliffur(&[
        "sweep", "--n", "4", "--alpha", "1", "--k-min", "2", "--k-max", "9", "--format", "csv",
        "--samples", "5000",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("K,alpha,closed_form,numeric_min,gap"));
    let expected = [0.5, 0.6667, 0.75, 0.8, 0.8333, 0.8571, 0.875, 0.8889];
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), expected.len());
    let mut previous = f64::NEG_INFINITY;
    for (row, want) in rows.iter().zip(expected) {
        let closed: f64 = row[2].parse().unwrap();
        assert!((closed - want).abs() < 5e-5);
        assert!(closed > previous);
        previous = closed;
        let gap: f64 = row[4].parse().unwrap();
        assert!(gap.abs() <= 1e-6);
    }
}

#[test]
fn sweep_single_collision_observable() {
    let out = cliffur(&["sweep", "--n", "2", "--alpha", "2", "--k-min", "1", "--k-max", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = &json(&out)["results"]["rows"];
    assert_eq!(rows[0]["closed_form"].as_f64(), Some(0.0));
}

#[test]
fn sweep_bad_range() {
    assert_eq!(cliffur(&["sweep", "--n", "2", "--k-min", "4", "--k-max", "3"]).status.code(), Some(2));
    assert_eq!(cliffur(&["sweep", "--n", "2", "--k-max", "6"]).status.code(), Some(2));
}

#[test]
fn bench_cross_checks_products() {
    let out = cliffur(&["bench", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let doc = json(&out);
    assert_eq!(doc["results"]["cross_check"]["mismatches"], 0);
    assert_eq!(doc["results"]["cross_check"]["pairs"], 1000);
    let sizes: Vec<u64> = doc["results"]["symplectic"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["n"].as_u64().unwrap())
        .collect();
    assert_eq!(sizes, vec![1_000, 10_000, 100_000]);
    assert!(doc["wall_time_ms"].as_f64().is_some());
}

#[test]
fn tolerance_overrides_are_logged() {
    let out = cliffur(&["verify", "--n", "1", "--tol-opt", "1e-5", "--samples", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let cfg = &json(&out)["config"];
    assert_eq!(cfg["tolerances"]["opt"], 1e-5);
    assert_eq!(cfg["tolerance_overrides"][0]["name"], "tol_opt");
    assert_eq!(cfg["tolerance_overrides"][0]["default"], 1e-6);
}

#[test]
fn timing_is_opt_in() {
    let out = cliffur(&["verify", "--n", "1", "--samples", "5"]);
    assert!(json(&out)["wall_time_ms"].is_null());
    let out = cliffur(&["verify", "--n", "1", "--samples", "5", "--timing"]);
    assert!(json(&out)["wall_time_ms"].as_f64().is_some());
}

#[test]
fn writes_to_out_path() {
    let path = std::env::temp_dir().join(format!("cliffur-test-{}.txt", std::process::id()));
    let out = cliffur(&[
        "verify", "--n", "1", "--samples", "5", "--format", "text", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.starts_with("cliffur "));
    assert!(text.trim_end().ends_with("status: ok"));
}

#[test]
fn thread_count_from_environment() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_cliffur"))
            .args(["minimize", "--n", "1", "--K", "2", "--samples", "30000"])
            .env("CLIFFUR_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(run("0").status.code(), Some(2));
}
