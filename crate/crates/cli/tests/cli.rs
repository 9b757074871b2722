use std::process::{Command, Output};

use hecke_bc::HeckeElement;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke-bc")).args(args).env_remove("HECKE_BC_BUDGET").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn expand_prints_both_methods() {
    let o = run(&["expand", "--n", "1", "--stages", "[-1,1] o [-1,1]"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("hecke:   (1 + q)T[1] + (1 + q)T[-1]"), "{s}");
    assert!(s.contains("paths:   (1 + q)T[1] + (1 + q)T[-1]"), "{s}");
    assert!(s.contains("diff:    (empty)"), "{s}");
}

#[test]
fn expand_json_roundtrips() {
    let o = run(&["expand", "--n", "3", "--stages", "[1,3] o [2,3] o [1,2] o [-1,1]", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["agree"], true);
    let paths = HeckeElement::from_json(3, &v["paths"].to_string()).unwrap();
    let hecke = HeckeElement::from_json(3, &v["hecke"].to_string()).unwrap();
    assert_eq!(paths, hecke);
    assert!(!paths.is_zero());
}

#[test]
fn parse_errors_exit_2() {
    let o = run(&["expand", "--n", "2", "--stages", ""]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error at byte 0"));
    assert_eq!(run(&["expand", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["render", "--n", "2", "--stages", "[1,2]", "--format", "json"]).status.code(), Some(2));
}

#[test]
fn budget_refusal_exit_3() {
    let o = run(&["expand", "--n", "3", "--stages", "[-3,3] o [-3,3]", "--budget", "100"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2304"));
    let o = Command::new(env!("CARGO_BIN_EXE_hecke-bc"))
        .args(["klpoly", "--n", "3", "--stages", "[-3,3]", "--target", "1 2 3"])
        .env("HECKE_BC_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_suites() {
    let o = run(&["verify", "--suite", "lengths-b3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "lengths-b3: 48/48 agree: pass");
    assert_eq!(run(&["verify", "--suite", "collapse-m2"]).status.code(), Some(0));
    let o = run(&["verify", "--suite", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["verify", "--suite", "main-b2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["checked"], 39);
    assert_eq!(v["passed"], true);
}

#[test]
fn klpoly_values() {
    let o = run(&["klpoly", "--n", "4", "--stages", "F3412", "--target", "1 2 3 4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("paths: 1 + q"));
    let o = run(&["klpoly", "--n", "2", "--stages", "[-2,2]", "--target", "-2 1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["paths"], serde_json::json!([1]));
    let o = run(&["klpoly", "--n", "2", "--stages", "[1,2]", "--target", "-1 2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["paths"], serde_json::json!([]));
    assert_eq!(v["agree"], true);
}

#[test]
fn render_dot() {
    let o = run(&["render", "--n", "2", "--stages", "[-2,2] o [-1,1] o [1,2] * [-2,2]"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("digraph star_network {"));
    assert!(s.contains("st3_u -> st4_c [label=\"2\"];"));
    assert_eq!(s, stdout(&run(&["render", "--n", "2", "--stages", "[-2,2] o [-1,1] o [1,2] * [-2,2]"])));
}

#[test]
fn deodhar_command() {
    let o = run(&["deodhar", "--n", "1", "--gens", "0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("subexpressions: (1 + q)T[1] + (1 + q)T[-1]"));
    let o = run(&["deodhar", "--n", "2", "--gens", ""]);
    assert!(stdout(&o).contains("subexpressions: T[1 2]"));
    assert_eq!(run(&["deodhar", "--n", "2", "--gens", "0,x"]).status.code(), Some(2));
    assert_eq!(run(&["deodhar", "--n", "2", "--gens", "2"]).status.code(), Some(2));
}
