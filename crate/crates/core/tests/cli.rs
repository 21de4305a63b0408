mod common;

use std::process::{Command, Output};

use common::config;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_levy-bandit")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(name: &str) -> String {
    config(name).display().to_string()
}

#[test]
fn check_exit_codes() {
    assert_eq!(bin(&["check", &path("krc")]).status.code(), Some(0));
    let bad = bin(&["check", &path("indistinguishable")]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stdout(&bad).contains("A5         FAIL"));
    let json = bin(&["check", "--json", &path("krc")]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["ok"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 8);
}

#[test]
fn parse_error_names_field() {
    let o = bin(&["solve", &path("bad_field")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("high.sigma"), "{}", stderr(&o));
    assert_eq!(bin(&["solve", "/no/such/file.json"]).status.code(), Some(3));
}

#[test]
fn solve_krc() {
    let o = bin(&["solve", &path("krc"), "--grid", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["alphaStar"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((v["pStar"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
    assert!((v["cAlpha"].as_f64().unwrap() - 0.125).abs() < 1e-12);
    let table = v["valueTable"].as_array().unwrap();
    assert_eq!(table.len(), 5);
    assert_eq!(table[4][1].as_f64().unwrap(), 1.0);
    assert_eq!(v["manifest"]["command"], "solve");
}

#[test]
fn solve_indistinguishable_reports_no_signal() {
    let o = bin(&["solve", &path("indistinguishable")]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("NoSignal"));
}

#[test]
fn solve_with_payoff_override() {
    let o = bin(&["solve", &path("krc"), "--g1", "2", "--g0", "-1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["g0"].as_f64().unwrap(), -1.0);
    assert!((v["pMyopic"].as_f64().unwrap() - 0.5).abs() < 1e-15);
    let bad = bin(&["solve", &path("krc"), "--g1", "0.2"]);
    assert_eq!(bad.status.code(), Some(4));
}

#[test]
fn hjb_grid_certifies() {
    let o = bin(&["hjb-grid", &path("mixed"), "--points", "200"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("# certified=true"));
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "p,residual_k0,residual_k1,branch");
    assert_eq!(rows.len(), 201);
}

#[test]
fn sweep_csv() {
    let o = bin(&["sweep", &path("bolton_harris"), "--param", "r", "--from", "0.5", "--to", "2", "--steps", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("param,alphaStar,pStar,pMyopic\n0.5,"));
    assert!(text.contains("# monotonicity: alphaStar=increasing pStar=increasing pStarBelowMyopic=true"));
    assert_eq!(bin(&["sweep", &path("krc"), "--param", "lambda", "--from", "1", "--to", "2", "--steps", "2"]).status.code(), Some(1));
    let broken = bin(&["sweep", &path("krc"), "--param", "rho", "--from", "0.5", "--to", "1.5", "--steps", "3"]);
    assert_eq!(broken.status.code(), Some(2));
}

#[test]
fn simulate_is_reproducible_and_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run.json");
    let per_path = dir.path().join("paths.csv");
    let args = |extra: &[&str]| {
        let mut v = vec!["simulate".to_string(), path("krc"), "--paths".into(), "500".into(), "--dt".into(), "0.01".into(), "--seed".into(), "9".into()];
        v.extend(extra.iter().map(|s| s.to_string()));
        v
    };
    let a = Command::new(env!("CARGO_BIN_EXE_levy-bandit"))
        .args(args(&["--out", out.to_str().unwrap(), "--per-path", per_path.to_str().unwrap()]))
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    let b = Command::new(env!("CARGO_BIN_EXE_levy-bandit")).args(args(&["--workers", "1"])).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(std::fs::read(&out).unwrap(), a.stdout);
    let sidecar: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("run.json.manifest.json")).unwrap()).unwrap();
    assert!(sidecar["timestamp"].as_u64().unwrap() > 0);
    assert_eq!(sidecar["seed"], 9);
    let csv = std::fs::read_to_string(&per_path).unwrap();
    assert_eq!(csv.lines().count(), 501);
    assert!(csv.starts_with("path,high,payoff,belief,final_belief\n0,"));
}

#[test]
fn simulate_errors() {
    assert_eq!(bin(&["simulate", &path("krc"), "--strategy", "sometimes"]).status.code(), Some(1));
    assert_eq!(bin(&["simulate", &path("krc"), "--paths", "1"]).status.code(), Some(5));
    assert_eq!(bin(&["simulate", &path("krc"), "--dt=-1"]).status.code(), Some(5));
    assert_eq!(bin(&["simulate", &path("indistinguishable")]).status.code(), Some(2));
}

#[test]
fn usage_errors() {
    assert_eq!(bin(&[]).status.code(), Some(1));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
}
