use std::process::{Command, Output};

use serde_json::Value;

fn cgw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cgw")).args(args).env("CGW_THREADS", "1").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let o = cgw(&a);
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)))
}

#[test]
fn relations_pass_at_rank_five() {
    let o = cgw(&["verify-relations", "--n", "5"]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn rank_below_four_is_a_usage_error() {
    let o = cgw(&["verify-relations", "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--n"));
}

#[test]
fn relations_as_json() {
    let v = json(&["verify-relations", "--n", "6"]);
    let list = v.as_array().expect("a list of results");
    assert!(!list.is_empty());
    assert!(list.iter().all(|c| c["pass"] == Value::Bool(true) && c["relation"].is_string()));
}

#[test]
fn relations_at_points() {
    let o = cgw(&["verify-relations", "--n", "7", "--mode", "probabilistic", "--points", "3", "--seed", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("3 points: PASS"));
}

#[test]
fn rank_seven_determinant_matches() {
    let o = cgw(&["det-sum", "--n", "7", "--mode", "probabilistic", "--points", "12", "--seed", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).trim_end().ends_with("MATCH"));
    assert!(!stdout(&o).contains("MISMATCH"));
}

#[test]
fn rank_four_determinant_is_factored() {
    let v = json(&["det-sum", "--n", "4", "--mode", "symbolic"]);
    assert_eq!(v["complete"], Value::Bool(true));
    let roots: Vec<&str> = v["l_roots"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(roots, ["r^-9", "-r^-3", "r^-1", "-r^3", "r^3"]);
    assert!(v["factored"].as_str().unwrap().contains("(l*r - 1)^9"));
}

#[test]
fn large_symbolic_determinant_is_refused() {
    let o = cgw(&["det-sum", "--n", "9", "--mode", "symbolic"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("probabilistic"));
}

#[test]
fn rank_seven_kernels() {
    for (l, k) in [("r^-7", 6), ("r^3", 14), ("r^-1", 21)] {
        let v = json(&["kernel", "--n", "7", "--l", l]);
        assert_eq!(v["k"], k, "l = {l}");
        assert_eq!(v["rank"], 42 - k);
        assert_eq!(v["l"], l);
        assert_eq!(v["basis"].as_array().unwrap().len(), k);
    }
    let o = cgw(&["kernel", "--n", "7", "--l", "r^-1"]);
    assert!(stdout(&o).contains("k = 21"));
}

#[test]
fn malformed_l_is_rejected() {
    let o = cgw(&["kernel", "--n", "5", "--l", "r^^2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn subspaces_at_rank_five() {
    let o = cgw(&["check-subspaces", "--n", "5"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v = json(&["check-subspaces", "--n", "5"]);
    let names: Vec<&str> = v["families"].as_array().unwrap().iter().map(|f| f["family"].as_str().unwrap()).collect();
    assert_eq!(names, ["u", "v", "t", "X", "Y", "J"]);
}

#[test]
fn subspaces_at_rank_four_skip_v() {
    let v = json(&["check-subspaces", "--n", "4"]);
    let names: Vec<&str> = v["families"].as_array().unwrap().iter().map(|f| f["family"].as_str().unwrap()).collect();
    assert_eq!(names, ["u", "t", "X", "Z", "J"]);
    let skipped = v["skipped"].as_array().unwrap();
    assert!(skipped.iter().any(|s| s.as_str().unwrap().starts_with("v:")));
}

#[test]
fn subspaces_filtered_by_l() {
    let v = json(&["check-subspaces", "--n", "6", "--l", "r^3"]);
    let fams = v["families"].as_array().unwrap();
    assert_eq!(fams.len(), 1);
    assert_eq!(fams[0]["family"], "X");
}

#[test]
fn specht_rank_eight_list() {
    let o = cgw(&["specht", "--n", "8", "--max", "56"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("degrees: [1, 7, 8, 14, 20, 21, 28, 35, 42, 48]"));
}

#[test]
fn specht_sum_check() {
    let v = json(&["specht", "--n", "6", "--sum-check"]);
    assert_eq!(v["sum_check"]["sum"], "23040");
    assert_eq!(v["sum_check"]["pass"], Value::Bool(true));
}

#[test]
fn specht_rank_four_notes_missing_degree() {
    let o = cgw(&["specht", "--n", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("omits [4]"));
    let v = json(&["specht", "--n", "4"]);
    let degrees: Vec<&str> = v["degrees"].as_array().unwrap().iter().map(|d| d["degree"].as_str().unwrap()).collect();
    assert_eq!(degrees, ["1", "2", "3", "4", "6", "8"]);
}

#[test]
fn sweep_and_conjugate_search() {
    assert!(cgw(&["prop2-sweep", "--n", "5"]).status.success());
    let v = json(&["nabla-search", "--n", "5", "--seed", "3"]);
    assert_eq!(v["dimension"], 0);
    let v = json(&["nabla-search", "--n", "5", "--relaxed"]);
    assert_eq!(v["relaxed"], Value::Bool(true));
}

#[test]
fn same_seed_same_bytes() {
    for args in [
        &["check-subspaces", "--n", "4", "--seed", "9", "--json"][..],
        &["det-sum", "--n", "5", "--mode", "probabilistic", "--points", "2", "--seed", "5", "--json"][..],
    ] {
        let a = cgw(args);
        let b = cgw(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}
