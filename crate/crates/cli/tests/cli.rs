use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dadkit")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows(o: &Output) -> Vec<Vec<String>> {
    stdout(o).lines().map(|l| l.split('\t').map(str::to_owned).collect()).collect()
}

#[test]
fn validate_exit_codes() {
    let ok = run(&["validate", &fixture("instances")]);
    assert_eq!(ok.status.code(), Some(0));
    let r = rows(&ok);
    assert_eq!(r[0], ["path", "status", "units", "arrows", "violations"]);
    assert_eq!(r.len(), 9);
    assert!(r[1..].iter().all(|row| row[1] == "ok"));

    let bad = run(&["validate", &fixture("invalid/p3_bad_comp.json")]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("\tinvalid\t"));
    assert!(stdout(&bad).contains("3,5,3"));

    let missing = run(&["validate", "/nonexistent/x.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn dad_examples() {
    let p7 = fixture("instances/p7.json");
    let o = run(&["dad", &p7]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&o);
    assert_eq!(r[1][4], "certified");
    assert_eq!(r[1][5], "1");

    let o = run(&["dad", &p7, "--l-spec", "all"]);
    assert_eq!(rows(&o)[1][5], "0");

    let o = run(&["dad", &p7, "--l-spec", "units", "--d-max", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(rows(&o)[1][4], "none");
}

#[test]
fn input_errors_exit_two() {
    let p7 = fixture("instances/p7.json");
    assert_eq!(run(&["dad", &p7, "--d-max", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["dad", &p7, "--k-spec", "bogus:1"]).status.code(), Some(2));
    assert_eq!(run(&["dad", &fixture("invalid/p3_bad_comp.json")]).status.code(), Some(2));
    let o = run(&["asdim", &p7, "--d-max", "-3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn theorems_hold_on_fixtures() {
    let o = run(&["theorem", "union", &fixture("instances/p13.json"), "--parts", "0-6;7-12"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(rows(&o).last().unwrap()[3] == "holds");
    let o = run(&["theorem", "bridge", &fixture("instances/z8.json"), "--l-spec", "power:K:3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn treeable_verdicts() {
    assert_eq!(run(&["asdim", &fixture("instances/binary3.json"), "--treeable", "1"]).status.code(), Some(0));
    assert_eq!(run(&["asdim", &fixture("instances/z8.json"), "--treeable", "1"]).status.code(), Some(1));
}

#[test]
fn artifacts_and_build() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&["--out", out, "dad", &fixture("instances/p4.json")]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("dad-p4.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["bound"], "L");
    assert_eq!(v["witness"]["certified"], true);

    let o = run(&["build", "--family", "pair", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let built: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let golden: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(fixture("instances/p4.json")).unwrap()).unwrap();
    assert_eq!(built["units"], golden["units"]);
    assert_eq!(built["arrows"].as_array().unwrap().len(), 12);
}

#[test]
fn stdout_carries_no_timing() {
    let o = run(&["sweep", "--family", "pair", "--sizes", "4-6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("wall"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("wall time"));
    assert_eq!(rows(&o).len(), 4);
}
