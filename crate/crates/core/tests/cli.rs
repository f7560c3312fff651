use std::path::PathBuf;
use std::process::{Command, Output};

use g2::chevalley::{explicit, lift};
use g2::ring::{RingDescriptor, RingValue};

fn g2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

#[test]
fn verify_relations_exits_zero() {
    let o = g2(&["verify", "relations", "--ring", "zmod:5^2", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("ALL PASS"));
}

#[test]
fn same_seed_same_bytes() {
    let args = ["verify", "relations", "--ring", "zmod:7^2", "--seed", "3", "--format", "json"];
    assert_eq!(g2(&args).stdout, g2(&args).stdout);
}

#[test]
fn decompose_identity_is_trivial() {
    let o = g2(&["decompose", "--in", &data("identity.json"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["lambda"], 1);
    assert_eq!(v["s"], serde_json::json!([1, 1]));
    assert!(v["t"].as_array().unwrap().iter().chain(v["u"].as_array().unwrap()).all(|x| x == 0));
}

#[test]
fn show_gen_a2_is_the_explicit_matrix() {
    let o = g2(&["show", "gen", "a2", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let printed = lift(&explicit::x2(), &RingValue::one(RingDescriptor::Rationals)).render();
    assert_eq!(stdout(&o), printed);
}

#[test]
fn eval_json_roundtrips_through_decompose() {
    let dir = std::env::temp_dir().join(format!("g2-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let o = g2(&["eval", "x(-a2,u)", "--ring", "zmod:5^2", "--set", "u=5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let path = dir.join("m.json");
    std::fs::write(&path, &o.stdout).unwrap();
    let d = g2(&["decompose", "--in", path.to_str().unwrap()]);
    assert_eq!(d.status.code(), Some(0), "{}", String::from_utf8_lossy(&d.stderr));
    assert!(stdout(&d).contains("u2 = 5"), "{}", stdout(&d));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(g2(&["show", "gen", "a9"]).status.code(), Some(2));
    assert_eq!(g2(&["verify", "relations", "--ring", "zmod:6"]).status.code(), Some(2));
    assert_eq!(g2(&["verify", "normalizer", "--ring", "zmod:5"]).status.code(), Some(2));
    assert_eq!(g2(&["verify", "elimination", "--trunc-degree", "4"]).status.code(), Some(2));
    assert_eq!(g2(&["decompose", "--in", "/nonexistent/x.json"]).status.code(), Some(2));
    assert_eq!(g2(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn bad_ledger_file_exits_two() {
    let dir = std::env::temp_dir().join(format!("g2-ledger-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.txt");
    std::fs::write(&path, "Con9 1 1 y1 1\n").unwrap();
    let o = g2(&["verify", "elimination", "--ledger", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
}

#[test]
fn verification_failure_exits_one() {
    // the shipped ledger does not replay to the end
    let o = g2(&["verify", "elimination", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["all_pass"], false);
    let checks = v["reports"][0]["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["status"] == "fail" && c["witness"].as_str().unwrap().contains("(Con1,1,1)")));
}

#[test]
fn roots_json_lists_twelve() {
    let o = g2(&["roots", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 12);
}

#[test]
fn timing_is_opt_in() {
    let o = g2(&["verify", "genunits", "--format", "json"]);
    assert!(!stdout(&o).contains("timing_ms"));
    let o = g2(&["verify", "genunits", "--format", "json", "--timing"]);
    assert!(stdout(&o).contains("timing_ms"));
}
