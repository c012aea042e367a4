use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ergogap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ergogap"))
        .args(args)
        .env_remove("ERGOGAP_TOL")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn dense_file(dir: &Path, name: &str, entry: impl Fn(usize, usize) -> [f64; 2]) -> String {
    let matrix: Vec<Vec<[f64; 2]>> = (0..8).map(|i| (0..8).map(|j| entry(i, j)).collect()).collect();
    let body = serde_json::json!({"format": "dense", "d": 2, "matrix": matrix});
    let path = dir.join(name);
    fs::write(&path, body.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn witness_exit_codes_follow_verdict() {
    let out = ergogap(&["witness", "--family", "ghz-white-noise", "--p", "0.6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "Entangled");
    assert_eq!(v["units"], "E");

    let out = ergogap(&["witness", "--family", "ghz-white-noise", "--p", "0.3"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["verdict"], "Inconclusive");
}

#[test]
fn tolerance_comes_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ergogap"))
        .args(["witness", "--family", "ghz-white-noise", "--p", "0.6"])
        .env("ERGOGAP_TOL", "0.5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["decision_tol"], 0.5);
}

#[test]
fn ground_state_file_is_inconclusive() {
    let dir = tempfile::tempdir().unwrap();
    let path = dense_file(dir.path(), "ground.json", |i, j| if i == 0 && j == 0 { [1.0, 0.0] } else { [0.0, 0.0] });
    let out = ergogap(&["witness", "--input", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["gap"], 0.0);
}

#[test]
fn gap_examples() {
    let gap = |args: &[&str]| json(&ergogap(args))["gap"].as_f64().unwrap();
    assert!((gap(&["gap", "--family", "w"]) - 1.0).abs() < 1e-9);
    assert!((gap(&["gap", "--family", "ghz", "--d", "2"]) - 1.5).abs() < 1e-9);
    assert!((gap(&["gap", "--family", "classical-ghz-diag", "--d", "3"]) - 7.0 / 3.0).abs() < 1e-9);
}

#[test]
fn bounds_summary() {
    let v = json(&ergogap(&["bounds", "--d", "2"]));
    assert_eq!(v["m_d"], 1.0);
    assert_eq!(v["degeneracies"], serde_json::json!([1, 3, 3, 1]));
    assert_eq!(v["slot_count"], 8);
    let v = json(&ergogap(&["bounds", "--d", "3"]));
    assert!((v["m_d"].as_f64().unwrap() - 7.0 / 3.0).abs() < 1e-12);
    let out = ergogap(&["bounds", "--d", "5"]);
    assert_eq!(json(&out)["m_d"], 5.0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("5.2"));
}

#[test]
fn validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ghz = dir.path().join("ghz.json");
    let out = ergogap(&["export", "--family", "ghz", "--out", ghz.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(ergogap(&["validate", "--input", ghz.to_str().unwrap()]).status.code(), Some(0));

    let low_trace = dense_file(dir.path(), "trace.json", |i, j| if i == j { [0.9 / 8.0, 0.0] } else { [0.0, 0.0] });
    assert_eq!(ergogap(&["validate", "--input", &low_trace]).status.code(), Some(2));

    let skew = dense_file(dir.path(), "skew.json", |i, j| match (i, j) {
        (i, j) if i == j => [0.125, 0.0],
        (0, 1) => [0.1, 0.0],
        _ => [0.0, 0.0],
    });
    let out = ergogap(&["validate", "--input", &skew]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!json(&out)["problems"].as_array().unwrap().is_empty());
}

#[test]
fn bad_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("junk.json");
    fs::write(&path, "{\"format\": \"dense\"").unwrap();
    let out = ergogap(&["witness", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    assert_eq!(ergogap(&["witness", "--family", "ghz-white-noise"]).status.code(), Some(1));
    assert_eq!(ergogap(&["witness", "--family", "nonsense"]).status.code(), Some(1));
    assert_eq!(ergogap(&["sweep", "--family", "ghz"]).status.code(), Some(1));
}

fn sweep_csv(dir: &Path, name: &str, family: &str, steps: &str) -> String {
    let out_path = dir.join(name);
    let out = ergogap(&["sweep", "--family", family, "--p-start", "0", "--p-end", "1", "--p-steps", steps, "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    fs::read_to_string(out_path).unwrap()
}

fn verdicts(csv: &str) -> Vec<(f64, String)> {
    csv.lines()
        .skip(2)
        .map(|line| {
            let cols: Vec<&str> = line.split(',').collect();
            (cols[0].parse().unwrap(), cols[5].to_string())
        })
        .collect()
}

#[test]
fn white_noise_sweep_flips_around_three_sevenths() {
    let dir = tempfile::tempdir().unwrap();
    let csv = sweep_csv(dir.path(), "white.csv", "ghz-white-noise", "15");
    assert!(csv.starts_with("# energies in units of E\np,gap,y_minus_z,m_d,min_bound,verdict,margin\n"));
    assert!(!csv.contains('\r'));
    let rows = verdicts(&csv);
    assert_eq!(rows.len(), 16);
    for (p, verdict) in rows {
        let want = if p > 3.0 / 7.0 { "Entangled" } else { "Inconclusive" };
        assert_eq!(verdict, want, "p = {p}");
    }
}

#[test]
fn superposition_sweep_is_entangled_everywhere() {
    let dir = tempfile::tempdir().unwrap();
    let rows = verdicts(&sweep_csv(dir.path(), "sup.csv", "ghz-w-superposition", "20"));
    assert!(rows.iter().all(|(_, v)| v == "Entangled"));
}

#[test]
fn colored_noise_margin_vanishes_at_one() {
    let dir = tempfile::tempdir().unwrap();
    let csv = sweep_csv(dir.path(), "colored.csv", "ghz-colored-noise", "10");
    let margins: Vec<f64> = csv.lines().skip(2).map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert!(margins.windows(2).all(|w| w[1] < w[0]));
    assert_eq!(*margins.last().unwrap(), 0.0);
}

#[test]
fn sweep_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = sweep_csv(dir.path(), "a.csv", "ghz-w-superposition", "37");
    let b = sweep_csv(dir.path(), "b.csv", "ghz-w-superposition", "37");
    assert_eq!(a, b);
}

#[test]
fn unwritable_sweep_path_exits_one() {
    let out = ergogap(&["sweep", "--family", "ghz-white-noise", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(out.status.code(), Some(1));
}
