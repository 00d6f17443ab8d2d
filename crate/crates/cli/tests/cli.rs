use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_helix-steiner")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn eval_at_the_sausage_point() {
    let out = run(&["eval", "--omega", "2.30052398302", "--alpha", "0.26454000216"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["rho"].as_f64().unwrap() - 0.78419037337).abs() < 1e-9);
    assert!((v["rho1"].as_f64().unwrap() - 0.78419037337).abs() < 1e-9);
}

#[test]
fn eval_below_the_band_is_a_domain_error() {
    let out = run(&["eval", "--omega", "1.0", "--alpha", "0.2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.trim().lines().count(), 1);
    assert!(err.contains("A_1") && err.contains("pi/3"), "{err}");
}

#[test]
fn bad_flags_exit_two() {
    assert_eq!(run(&["scan", "--quantity", "rho", "--omega", "5:1:10", "--alpha", "0.1:1:5"]).status.code(), Some(2));
    assert_eq!(run(&["scan", "--quantity", "nope", "--omega", "1:5:10", "--alpha", "0.1:1:5"]).status.code(), Some(2));
    assert_eq!(run(&["mst", "--n", "1", "--omega", "2", "--alpha", "0.3"]).status.code(), Some(2));
    assert_eq!(run(&["points", "--n", "5", "--omega", "2", "--alpha", "0.3", "--k", "5"]).status.code(), Some(2));
}

#[test]
fn single_alpha_section_scan() {
    let out = run(&["scan", "--quantity", "rho", "--omega", "1.4:5.0:10", "--alpha", "0.2645:0.2645:1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("omega,alpha,value"));
    assert_eq!(lines.count(), 10);
}

#[test]
fn csv_numbers_round_trip() {
    let out = run(&["points", "--n", "30", "--omega", "2.3", "--alpha", "0.26"]);
    let text = stdout(&out);
    for (i, line) in text.lines().skip(1).enumerate() {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let t = i as f64 * 2.3;
        assert_eq!(cols[1], t.cos());
        assert_eq!(cols[2], t.sin());
        assert_eq!(cols[3], 0.26 * t);
    }
}

#[test]
fn json_mode_is_one_object() {
    let out = run(&["mst", "--n", "12", "--omega", "2.3", "--alpha", "0.26", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["edges"].as_array().unwrap().len(), 11);
    let closed = v["closed_form"].as_array().unwrap();
    let mst = v["mst_length"].as_f64().unwrap();
    assert!(closed.iter().all(|c| mst <= c["length"].as_f64().unwrap() + 1e-9));
}

#[test]
fn side_record_goes_to_summary_file() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("edges.csv");
    let side = dir.path().join("report.json");
    let out = run(&[
        "smith", "--n", "23", "--omega", "2.30052398302", "--alpha", "0.26454000216", "--format", "csv",
        "--output", table.to_str().unwrap(), "--summary", side.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let edges = std::fs::read_to_string(table).unwrap();
    assert_eq!(edges.lines().count(), 1 + 2 * 23 - 3);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(side).unwrap()).unwrap();
    let ratio = v["finite_steiner_ratio"].as_f64().unwrap();
    assert!(ratio > 0.78 && ratio < 0.80);
    assert!(v["degenerate"].as_array().unwrap().is_empty());
}

#[test]
fn degrees_convert_omega_only() {
    let rad = run(&["eval", "--omega", "2", "--alpha", "0.3"]);
    let deg = run(&["eval", "--omega", &2f64.to_degrees().to_string(), "--alpha", "0.3", "--degrees"]);
    let a: Value = serde_json::from_str(&stdout(&rad)).unwrap();
    let b: Value = serde_json::from_str(&stdout(&deg)).unwrap();
    assert!((a["rho"].as_f64().unwrap() - b["rho"].as_f64().unwrap()).abs() < 1e-12);
}

#[test]
fn contour_and_boundary_tables() {
    let out = run(&["contour", "--quantity", "rho", "--omega", "1.1:5.2:40", "--alpha", "0.01:1:40", "--levels", "0.8,0.9"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().count() > 2);
    let out = run(&["fst-boundary", "--k", "1", "--omega", "1.1:5.2:40", "--alpha", "0.01:1:40"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("curve_id,level,closed,omega,alpha\n"));
}

#[test]
fn minimize_reports_json() {
    let out = run(&["minimize", "--quantity", "rho", "--omega", "2.1:2.5:21", "--alpha", "0.2:0.33:21"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["value"].as_f64().unwrap() - 0.78419037337).abs() < 1e-7);
}

#[test]
fn verify_fast_passes() {
    let out = run(&["verify", "--fast"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("[PASS]")).count(), 12);
}
