use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn uattach(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uattach")).args(args).output().expect("spawn uattach")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn simulate_is_deterministic_for_a_seed() {
    let args = ["simulate", "--pattern", "triangle", "--n", "50,200", "--m", "2", "--R", "300", "--seed", "9"];
    let a = uattach(&args);
    let b = uattach(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,m,pattern,R,seed,mean,var,d_tv,d_k,d_w,fitted_p");
    assert_eq!(lines.count(), 2);

    let c = uattach(&["simulate", "--pattern", "triangle", "--n", "50,200", "--m", "2", "--R", "300", "--seed", "10"]);
    assert_ne!(text.as_bytes(), c.stdout.as_slice());
}

#[test]
fn missing_pattern_is_a_usage_error() {
    let out = uattach(&["exact", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    assert_eq!(uattach(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn exact_two_cycle_small_cases() {
    let v = stdout_json(&uattach(&["exact", "--pattern", "cycle:2", "--n", "3", "--m", "2"]));
    assert_eq!(v["law"]["1"].as_f64().unwrap(), 0.5);
    assert_eq!(v["law"]["2"].as_f64().unwrap(), 0.5);
    assert!((v["mean"].as_f64().unwrap() - 1.5).abs() < 1e-12);

    let v = stdout_json(&uattach(&["exact", "--pattern", "cycle:2", "--n", "2", "--m", "2"]));
    assert_eq!(v["law"]["1"].as_f64().unwrap(), 1.0);
    assert_eq!(v["variance"].as_f64().unwrap(), 0.0);
}

#[test]
fn exact_respects_the_budget() {
    let out = uattach(&["exact", "--pattern", "triangle", "--n", "6", "--m", "2", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("14400"));
}

#[test]
fn stein_bound_dominates_exact_tv() {
    let stein = stdout_json(&uattach(&["stein", "--pattern", "cycle:2", "--n", "5", "--m", "2"]));
    let exact = stdout_json(&uattach(&["exact", "--pattern", "cycle:2", "--n", "5", "--m", "2"]));
    let lambda = stein["lambda"].as_f64().unwrap();
    assert!((lambda - exact["mean"].as_f64().unwrap()).abs() < 1e-12);
    let law: Vec<(u64, f64)> = exact["law"]
        .as_object()
        .unwrap()
        .iter()
        .map(|(k, p)| (k.parse().unwrap(), p.as_f64().unwrap()))
        .collect();
    let tv = uniform_attachment::stats::tv_to_poisson(&uniform_attachment::ExactLaw::from_weighted(law), lambda);
    assert!(tv <= stein["bound"].as_f64().unwrap() + 1e-12);
}

#[test]
fn joint_cycle_bound_reports_each_length() {
    let v = stdout_json(&uattach(&["stein", "--lengths", "2,3", "--n", "5", "--m", "2"]));
    assert_eq!(v["lambdas"].as_array().unwrap().len(), 2);
    assert!(v["report"]["bound"].as_f64().unwrap() > 0.0);
}

#[test]
fn coupling_check_passes() {
    let v = stdout_json(&uattach(&["coupling-check", "--pattern", "triangle", "--n", "4", "--m", "2"]));
    assert_eq!(v["pass"], Value::Bool(true));
}

#[test]
fn out_writes_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("law.json");
    let status = uattach(&["exact", "--pattern", "star:2", "--n", "4", "--out", out.to_str().unwrap()]);
    assert!(status.status.success());
    assert!(status.stdout.is_empty());
    let body: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(body["n"], 4);
    let manifest: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("law.json.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["config"]["pattern"], "star:2");
    assert_eq!(manifest["config_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(&cfg, "pattern = \"cycle:2\"\nn = [3]\nm = 3\n").unwrap();
    let c = cfg.to_str().unwrap();

    let v = stdout_json(&uattach(&["exact", "--config", c]));
    assert_eq!(v["m"], 3);
    assert_eq!(v["n"], 3);
    let v = stdout_json(&uattach(&["exact", "--config", c, "--m", "2"]));
    assert_eq!(v["m"], 2);
    assert_eq!(v["pattern"], "cycle:2");

    fs::write(&cfg, "pattern = \"cycle:2\"\nbogus = 1\n").unwrap();
    assert_eq!(uattach(&["exact", "--config", c]).status.code(), Some(2));
}

#[test]
fn tail_and_lln_emit_csv() {
    let out = uattach(&["tail", "--pattern", "double-2-cycle", "--attach", "2", "--n", "50,500", "--R", "5", "--seed", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("replica,n,w,w_core,d\n"));
    assert_eq!(text.lines().count(), 1 + 5 * 2);

    let out = uattach(&["lln", "--p", "harmonic", "--n", "100,1000", "--R", "20"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("n,mean_ratio,min_ratio,max_ratio,within_0.1\n"));
}

#[test]
fn rates_fits_an_exponent() {
    let out = uattach(&["rates", "--pattern", "star:2", "--n", "100,300,1000,3000", "--R", "200", "--stat", "mean", "--model", "power"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 4);
    let p: f64 = rows[0][3].parse().unwrap();
    assert!((0.7..1.3).contains(&p), "exponent {p}");
}
