use std::process::{Command, Output};

use exactss_core::candidates::candidates_abs;
use exactss_core::{builtin, min_coverage, ErrorCriterion, EstimatorKind, Rational};
use serde_json::Value;

fn exactss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exactss"))
        .args(args)
        .env_remove("EXACTSS_THREADS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = exactss(&all);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn exact(v: &Value) -> Rational {
    v.as_str().expect("exact values are strings").parse().unwrap()
}

fn r(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

#[test]
fn golden_sample_size() {
    let v = json(&["sample-size", "--family", "bernoulli", "--abs-eps", "0.1", "--a", "0", "--b", "1", "--delta", "0.05"]);
    assert_eq!(v["n_min"], 101);
    assert!(v["coverage_at_n_min"].as_f64().unwrap() > 0.95);
    assert_eq!(v["examined"], 100);
    assert!(v.get("trace").is_none());
}

#[test]
fn candidates_example_round_trips() {
    let v = json(&["candidates", "--n", "10", "--abs-eps", "0.05", "--a", "0.2", "--b", "0.8"]);
    let got: Vec<Rational> = v["points"].as_array().unwrap().iter().map(|p| exact(&p["theta"])).collect();
    let want: Vec<Rational> = candidates_abs(10, r(1, 20), r(1, 5), r(4, 5)).unwrap().thetas().collect();
    assert_eq!(got.len(), 8);
    assert_eq!(got, want);
    assert_eq!(exact(&v["query"]["criterion"]["eps"]), r(1, 20));
    assert_eq!(exact(&v["cardinality_bound"]), r(16, 1));
    assert_eq!(v["points"][0]["provenance"], serde_json::json!(["endpoint"]));
}

#[test]
fn min_coverage_json_matches_library() {
    let v = json(&["min-coverage", "--n", "25", "--abs-eps", "0.05", "--rel-eps", "0.2", "--a", "0.1", "--b", "0.9", "--range-preserving"]);
    let crit = ErrorCriterion::mixed(r(1, 20), r(1, 5)).unwrap();
    let est = EstimatorKind::range_preserving(r(1, 10), r(9, 10)).unwrap();
    let rep = min_coverage(builtin("bernoulli").unwrap(), 25, &crit, &est, r(1, 10), r(9, 10)).unwrap();
    assert_eq!(v["min_coverage"].as_f64().unwrap(), rep.min_coverage);
    assert_eq!(exact(&v["argmin_theta"]), rep.argmin_theta);
    let evals = v["evaluations"].as_array().unwrap();
    assert_eq!(evals.len(), rep.evaluations.len());
    for (e, want) in evals.iter().zip(&rep.evaluations) {
        assert_eq!(exact(&e["theta"]), want.theta);
        assert_eq!(e["coverage"].as_f64().unwrap(), want.coverage);
    }
    assert_eq!(v["candidate_set"]["set_kind"], "range-preserving-mixed");
}

#[test]
fn curve_csv_has_fixed_columns() {
    let out = exactss(&["coverage-curve", "--n", "5", "--abs-eps", "0.1", "--a", "0", "--b", "1", "--step", "0.25", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta_exact,theta_float,coverage,is_candidate,provenance"));
    let rows: Vec<&str> = lines.collect();
    // grid {0, 1/4, 1/2, 3/4, 1} plus lattice {1/10, 3/10, 7/10, 9/10}
    assert_eq!(rows.len(), 9);
    assert!(rows.contains(&"1/4,0.25,0.39550781249999994,false,"));
    assert!(rows[0].starts_with("0/1,0,1,true,endpoint"));
}

#[test]
fn trace_csv_lists_every_n() {
    let out = exactss(&["sample-size", "--abs-eps", "0.2", "--a", "0", "--b", "1", "--delta", "0.1", "--n-start", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,min_coverage,argmin_theta"));
    let ns: Vec<u64> = lines.map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(ns[0], 3);
    assert!(ns.windows(2).all(|w| w[1] == w[0] + 1));
}

#[test]
fn not_found_is_a_normal_result() {
    let v = json(&["sample-size", "--abs-eps", "0.01", "--a", "0", "--b", "1", "--delta", "0.05", "--n-max", "10", "--trace"]);
    assert!(v["n_min"].is_null());
    assert_eq!(v["trace"].as_array().unwrap().len(), 9);
}

#[test]
fn verify_agrees_and_reports_discrepancy() {
    let v = json(&["verify", "--n", "2..12", "--rel-eps", "0.25", "--a", "0.1", "--b", "0.7", "--range-preserving"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 11);

    // a coarse grid alone misses the minimum
    let out = exactss(&["verify", "--n", "10", "--abs-eps", "0.13", "--a", "0", "--b", "1", "--grid-only", "--step", "0.5"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(!out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("differ"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| exactss(args).status.code();
    // configuration problems
    assert_eq!(code(&["candidates", "--n", "3", "--abs-eps", "0.1x", "--a", "0", "--b", "1"]), Some(2));
    assert_eq!(code(&["candidates", "--n", "3", "--a", "0", "--b", "1"]), Some(2));
    assert_eq!(code(&["candidates", "--n", "3", "--abs-eps", "0.1", "--a", "0.5", "--b", "0.2"]), Some(2));
    assert_eq!(code(&["candidates", "--n", "0", "--abs-eps", "0.1", "--a", "0", "--b", "1"]), Some(2));
    assert_eq!(code(&["candidates", "--n", "3", "--rel-eps", "1.5", "--a", "0.1", "--b", "1"]), Some(2));
    assert_eq!(code(&["candidates", "--n", "3", "--family", "gamma", "--abs-eps", "0.1", "--a", "0", "--b", "1"]), Some(2));
    assert_eq!(code(&["sample-size", "--abs-eps", "0.1", "--a", "0", "--b", "1", "--delta", "1"]), Some(2));
    // domain and hypothesis problems
    assert_eq!(code(&["min-coverage", "--n", "3", "--family", "poisson", "--abs-eps", "0.1", "--a", "0", "--b", "1"]), Some(3));
    assert_eq!(code(&["min-coverage", "--n", "3", "--abs-eps", "0.1", "--a", "0.5", "--b", "1.5"]), Some(3));
    assert_eq!(code(&["candidates", "--n", "3", "--rel-eps", "0.1", "--a", "0", "--b", "1"]), Some(3));

    let out = exactss(&["candidates", "--n", "3", "--abs-eps", "0.1", "--rel-eps", "0.5", "--a", "0.5", "--b", "0.9"]);
    assert_eq!(out.status.code(), Some(3));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("a < eps_a/eps_r < b"), "{msg}");
    assert!(msg.contains("purely relative"), "{msg}");
}

#[test]
fn thread_variable_is_checked() {
    let out = Command::new(env!("CARGO_BIN_EXE_exactss"))
        .args(["candidates", "--n", "3", "--abs-eps", "0.1", "--a", "0", "--b", "1"])
        .env("EXACTSS_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("set.csv");
    let args = ["candidates", "--n", "7", "--rel-eps", "0.3", "--a", "0.2", "--b", "0.9", "--format", "csv"];
    let stdout = exactss(&args).stdout;
    let mut with_file = args.to_vec();
    with_file.extend(["--output", path.to_str().unwrap()]);
    let out = exactss(&with_file);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
}
