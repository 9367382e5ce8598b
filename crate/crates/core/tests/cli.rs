use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        Files { dir: tempfile::tempdir().unwrap() }
    }

    fn write(&self, name: &str, body: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, body).unwrap();
        path
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cuntzkit")).args(args).env_remove("CUNTZKIT_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const ALT: &str = r#"{"n":2,"period":[[[1,0],[0,0]],[[0,0],[1,0]]]}"#;
const E1: &str = r#"{"n":2,"period":[[[1,0],[0,0]]]}"#;
const DELTA1: &str = r#"{"atoms":[{"point":[1,0],"weight":1}]}"#;
const DELTAM1: &str = r#"{"atoms":[{"point":[-1,0],"weight":1}]}"#;

#[test]
fn period_of_alternating() {
    let fs = Files::new();
    let seq = fs.write("alt.json", ALT);
    let o = run(&["period", "--seq", seq.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "period: 2\n");
}

#[test]
fn extend_eval_cuntz_state() {
    let fs = Files::new();
    let seq = fs.write("e1.json", E1);
    let mu = fs.write("d1.json", DELTA1);
    let o = run(&["extend-eval", "--seq", seq.to_str().unwrap(), "--measure", mu.to_str().unwrap(), "--expr", "v1"]);
    assert_eq!(stdout(&o), "value: (1, 0)\n");
}

#[test]
fn classify_cuntz_swap() {
    let fs = Files::new();
    let a = fs.write("a.json", r#"{"n":2,"lines":[[[1,0],[0,0]],[[0,0],[1,0]]]}"#);
    let b = fs.write("b.json", r#"{"n":2,"lines":[[[0,0],[1,0]],[[1,0],[0,0]]]}"#);
    let o = run(&["--json", "classify-cuntz", "--tuple", a.to_str().unwrap(), "--tuple2", b.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "conjugate");
    assert_eq!(v["k"], 1);
    assert_eq!(v["gram_tol"], 1e-8);
}

#[test]
fn negative_verdict_exits_zero() {
    let fs = Files::new();
    let seq = fs.write("alt.json", ALT);
    let a = fs.write("d1.json", DELTA1);
    let b = fs.write("dm1.json", DELTAM1);
    let s = seq.to_str().unwrap();
    let o = run(&["compare-extensions", "--seq", s, "--measure", a.to_str().unwrap(), "--seq2", s, "--measure2", b.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("verdict: disjoint\n"));
    let o = run(&["classify-endo", "--seq", s, "--measure", a.to_str().unwrap(), "--seq2", s, "--measure2", b.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("verdict: conjugate\n"));
}

#[test]
fn eval_state_and_quasi_orbit() {
    let fs = Files::new();
    let seq = fs.write("alt.json", ALT);
    let s = seq.to_str().unwrap();
    let o = run(&["eval-state", "--seq", s, "--expr", "v1 v2 v2* v1* + (0.5,0) v2 v2*"]);
    assert_eq!(stdout(&o), "value: (1, 0)\n");
    let o = run(&["--json", "quasi-orbit", "--seq", s]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["period"], 2);
    assert_eq!(v["lines"].as_array().unwrap().len(), 2);
}

#[test]
fn exit_codes() {
    let fs = Files::new();
    let seq = fs.write("alt.json", ALT);
    let s = seq.to_str().unwrap();
    assert_eq!(run(&["period", "--seq", "/nonexistent/f.json"]).status.code(), Some(2));
    let bad = fs.write("bad.json", "{ not json");
    assert_eq!(run(&["period", "--seq", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["eval-state", "--seq", s, "--expr", "v3"]).status.code(), Some(2));
    assert_eq!(run(&["eval-state", "--seq", s, "--expr", "v1 +"]).status.code(), Some(2));
    // off-degree element for a product state
    assert_eq!(run(&["eval-state", "--seq", s, "--expr", "v1"]).status.code(), Some(3));
    // the simulator has no model for a Haar component
    let haar = fs.write("haar.json", r#"{"haar":1}"#);
    assert_eq!(run(&["simulate-check", "--seq", s, "--measure", haar.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn simulate_check_is_deterministic() {
    let fs = Files::new();
    let seq = fs.write("alt.json", ALT);
    let mu = fs.write("mu.json", r#"{"atoms":[{"point":[0.6,0.8],"weight":0.25},{"point":[-1,0],"weight":0.75}]}"#);
    let args = ["simulate-check", "--seq", seq.to_str().unwrap(), "--measure", mu.to_str().unwrap(), "--trials", "50", "--seed", "7"];
    let a = run(&args);
    let mut seq_args = args.to_vec();
    seq_args.insert(0, "--sequential");
    let b = run(&seq_args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("seed: 7\n"));
    let dev: f64 = stdout(&a)
        .lines()
        .find_map(|l| l.strip_prefix("max_deviation: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(dev <= 1e-12);

    let env = Command::new(env!("CARGO_BIN_EXE_cuntzkit"))
        .args(["simulate-check", "--seq", seq.to_str().unwrap(), "--measure", mu.to_str().unwrap(), "--trials", "5"])
        .env("CUNTZKIT_SEED", "42")
        .output()
        .unwrap();
    assert!(stdout(&env).contains("seed: 42\n"));
}
