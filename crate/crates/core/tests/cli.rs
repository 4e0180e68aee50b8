use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn galdual(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galdual")).args(args).output().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

const EVEN: &str = r#"{"domain_size": 4,
  "relations": [{"name": "bot", "arity": 1, "tuples": []}, {"name": "top", "arity": 1, "tuples": [[0], [1], [2], [3]]}],
  "quantifiers": [{"name": "QE", "type": [1], "members": [[{"tuples": [[0], [2]]}]]}]}"#;

#[test]
fn aut_lists_identity_only() {
    let dir = TempDir::new().unwrap();
    let s = write(&dir, "s.json", r#"{"domain_size": 2, "relations": [{"name": "P", "arity": 1, "tuples": [[0]]}]}"#);
    let out = galdual(&["aut", &s, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["law"], "aut");
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["output"]["elements"], serde_json::json!([[0, 1]]));
    for field in ["instance_digest", "timing_ms", "details"] {
        assert!(r.get(field).is_some(), "{field}");
    }
}

#[test]
fn mcgee_reports_sixteen() {
    let out = galdual(&["check", "--law", "mcgee", "--n", "3", "--qtype", "1", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["details"]["type (1) invariant quantifiers"], "16");
    assert_eq!(r["details"]["type (1) brute force"], "16");
}

#[test]
fn seeded_cor_passes_with_cardinalities() {
    let out = galdual(&["check", "--law", "cor", "--n", "3", "--count", "5", "--seed", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["details"]["instances"], "5");
    assert!(r["details"]["#0 cor.2.sim_inv_size"].is_string());
    assert_eq!(r["details"]["#0 cor.2.sim_inv_size"], r["details"]["#0 cor.2.full_closure_size"]);
    let again = report(&galdual(&["check", "--law", "cor", "--n", "3", "--count", "5", "--seed", "3", "--json"]));
    assert_eq!(r["instance_digest"], again["instance_digest"]);
    assert_eq!(r["details"], again["details"]);
}

#[test]
fn failed_law_exits_one_with_counterexample() {
    let dir = TempDir::new().unwrap();
    let a4 = write(&dir, "a4.json", r#"{"domain_size": 4, "permutations": [[1, 2, 0, 3], [0, 2, 3, 1]]}"#);
    let out = galdual(&["check", &a4, "--law", "kras-group", "--k", "2", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["verdict"], "fail");
    assert_eq!(r["details"]["recovered_order"], "24");
    assert_eq!(galdual(&["check", &a4, "--law", "kras-group"]).status.code(), Some(0));
}

#[test]
fn errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{\"domain_size\": 2,\n \"colour\": 1}");
    let out = galdual(&["aut", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let big = write(&dir, "big.json", r#"{"domain_size": 12}"#);
    let out = galdual(&["aut", &big]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bound is 8"));
    assert_eq!(galdual(&["closure", &bad, "--mode", "k=x"]).status.code(), Some(2));
}

#[test]
fn closure_modes() {
    let dir = TempDir::new().unwrap();
    let c3 = write(&dir, "c3.json", r#"{"domain_size": 3, "permutations": [[1, 2, 0]]}"#);
    let order = |mode: &str| {
        let r = report(&galdual(&["closure", &c3, "--mode", mode, "--json"]));
        r["details"]["order"].as_str().unwrap().to_string()
    };
    assert_eq!(order("group"), "3");
    assert_eq!(order("k=1"), "6");
    assert_eq!(order("k=2"), "3");
    assert_eq!(order("sets=1"), "6");
    let p = write(&dir, "p.json", r#"{"domain_size": 2, "similarities": [[[0, 0], [1, 1], [0, 1]]]}"#);
    let r = report(&galdual(&["closure", &p, "--mode", "full-monoid", "--json"]));
    assert_eq!(r["details"]["size"], "7");
}

#[test]
fn define_with_and_without_equality() {
    let dir = TempDir::new().unwrap();
    let s = write(&dir, "s.json", r#"{"domain_size": 3, "relations": [{"name": "P", "arity": 1, "tuples": [[0], [1]]}]}"#);
    let single = write(&dir, "t.json", r#"{"domain_size": 3, "relations": [{"name": "T", "arity": 1, "tuples": [[0]]}]}"#);
    let r = report(&galdual(&["define", &s, &single, "--json"]));
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["details"]["definable"], "false");
    assert!(r["counterexample"].as_str().unwrap().starts_with("permutation"));
    let q = write(
        &dir,
        "q.json",
        r#"{"domain_size": 3, "quantifiers": [{"name": "Q", "type": [1], "members": [[{"tuples": [[0], [1]]}], [{"tuples": [[0]]}]]}]}"#,
    );
    let r = report(&galdual(&["define", &s, &q, "--no-equality", "--json"]));
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["details"]["definable"], "true");
    assert!(r["witness"].as_str().unwrap().contains("~"));
}

#[test]
fn sim_and_quotient_of_worked_example() {
    let dir = TempDir::new().unwrap();
    let even = write(&dir, "even.json", EVEN);
    let r = report(&galdual(&["sim", &even, "--json"]));
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["output"]["sim_equiv"], serde_json::json!([[0, 1, 2, 3]]));
    let r = report(&galdual(&["quotient", &even, "--json"]));
    assert_eq!(r["output"]["quotient"]["domain_size"], 1);
    assert_eq!(r["output"]["quotient"]["quantifiers"][0]["members"], serde_json::json!([]));
    for law in ["cor", "respect", "allisgood", "propaut", "bijective"] {
        let out = galdual(&["check", &even, "--law", law]);
        assert_eq!(out.status.code(), Some(0), "{law}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn inv_counts() {
    let dir = TempDir::new().unwrap();
    let a4 = write(&dir, "a4.json", r#"{"domain_size": 4, "permutations": [[1, 2, 0, 3], [0, 2, 3, 1]]}"#);
    let r = report(&galdual(&["inv", &a4, "--arity", "2", "--qtype", "1", "--json"]));
    assert_eq!(r["details"]["group_order"], "12");
    assert_eq!(r["details"]["arity 2 invariant relations"], "4");
    assert_eq!(r["details"]["type (1) invariant quantifiers"], "32");
    let p = write(&dir, "p.json", r#"{"domain_size": 3, "similarities": [[[0, 0], [1, 1], [2, 2], [0, 1], [1, 0]]]}"#);
    let r = report(&galdual(&["inv", &p, "--arity", "1", "--json"]));
    assert_eq!(r["output"]["approx"], serde_json::json!([[0, 1], [2]]));
    assert_eq!(r["details"]["arity 1 invariant relations"], "4");
}

#[test]
fn seeded_structure_laws_pass() {
    for law in ["kras-def", "respect", "allisgood", "propaut", "bijective"] {
        let out = galdual(&["check", "--law", law, "--count", "4", "--seed", "9"]);
        assert_eq!(out.status.code(), Some(0), "{law}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn text_output_is_readable() {
    let out = galdual(&["check", "--law", "mcgee", "--n", "4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("mcgee: pass"));
    assert!(Path::new(env!("CARGO_BIN_EXE_galdual")).exists());
}
