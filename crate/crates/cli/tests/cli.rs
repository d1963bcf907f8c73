use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hallgebra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: {e}: {}", String::from_utf8_lossy(&out.stderr));
    });
    (out.status.code().unwrap(), v)
}

fn assert_exit_matches_pass(args: &[&str]) -> Value {
    let (code, v) = json(args);
    assert_eq!(code == 0, v["pass"] == Value::Bool(true), "{args:?}");
    assert!(code == 0 || code == 1);
    v
}

#[test]
fn f1_free_table_is_binomial() {
    let (code, v) = json(&["hall-table", "--family", "f1-free", "--G", "cyclic:2", "--bound", "4"]);
    assert_eq!(code, 0);
    for e in v["constants"].as_array().unwrap() {
        let n: u64 = e["n"].as_str().unwrap().parse().unwrap();
        let l: u64 = e["l"].as_str().unwrap().parse().unwrap();
        let m: u64 = e["m"].as_str().unwrap().parse().unwrap();
        assert_eq!(n + l, m);
        let binom = (1..=n).fold(1u64, |acc, i| acc * (l + i) / i);
        assert_eq!(e["value"].as_str().unwrap(), binom.to_string());
    }
    assert_eq!(v["constants"].as_array().unwrap().len(), 15);
}

#[test]
fn vect_table_counts_lines() {
    let (code, v) = json(&["hall-table", "--family", "vect", "--q", "2", "--bound", "2", "--route", "span"]);
    assert_eq!(code, 0);
    let c = v["constants"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["n"] == "1" && e["l"] == "1" && e["m"] == "2")
        .unwrap();
    assert_eq!(c["value"], "3");
    assert_eq!(v["span_mismatches"], Value::Array(vec![]));
}

#[test]
fn hecke_segal_check_passes() {
    let (code, v) = json(&["segal-check", "--construction", "hecke", "--G", "sym:3", "--H", "sym:2"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    assert_eq!(v["witnesses"], Value::Array(vec![]));
}

#[test]
fn mutation_corpus_is_detected() {
    let v = assert_exit_matches_pass(&["segal-check", "--construction", "mutations"]);
    let entries = v["entries"].as_array().unwrap();
    assert!(entries.len() >= 5);
    assert!(entries.iter().all(|e| e["detected"] == true));
    assert!(!v["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn schurweyl_kernel_pattern() {
    let (code, v) = json(&["schurweyl", "--G", "cyclic:2", "--n", "2", "--d", "1", "--out", "json"]);
    assert_eq!(code, 0);
    let kernels: Vec<&str> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["kernel"] == true)
        .map(|r| r["dim_x"].as_str().unwrap())
        .collect();
    // the two sign-type labels γ ↦ (1,1) vanish in one variable
    assert_eq!(kernels, vec!["1", "1"]);
    assert_eq!(v["sum_of_squares"]["rhs"], "3");
}

#[test]
fn wreath_table_values_are_strings() {
    let (code, v) = json(&["wreath-char-table", "--G", "cyclic:3", "--n", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["conductor"], 3);
    let flat: Vec<&str> = v["values"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r.as_array().unwrap().iter().map(|x| x.as_str().unwrap()))
        .collect();
    assert!(flat.iter().any(|s| s.contains("*z")));
    assert_eq!(v["irreducible_labels"].as_array().unwrap().len(), 3);
}

#[test]
fn exit_codes_follow_verdicts() {
    for args in [
        &["hecke-table", "--G", "sym:3", "--H", "sym:2"][..],
        &["hecke-module", "--G", "sym:3", "--H", "sym:2", "--P", "whole"],
        &["ch-verify", "--G", "trivial", "--max-total", "3"],
        &["segal-check", "--construction", "s", "--family", "f1-free", "--bound", "2"],
    ] {
        assert_exit_matches_pass(args);
    }
}

#[test]
fn output_is_byte_stable() {
    for args in [
        &["hall-table", "--family", "ab-groups", "--p", "2", "--bound", "3"][..],
        &["wreath-char-table", "--G", "klein", "--n", "2", "--out", "csv"],
        &["schurweyl", "--G", "cyclic:3", "--n", "2", "--d", "2", "--out", "text", "--seed", "7"],
    ] {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn usage_and_budget_errors_exit_2() {
    assert_eq!(run(&["hall-table", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(run(&["hecke-table", "--G", "sym:3"]).status.code(), Some(2));
    assert_eq!(run(&["wreath-char-table", "--G", "nonsense", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["hall-table", "--budget", "0"]).status.code(), Some(2));
    let out = run(&["wreath-char-table", "--G", "cyclic:2", "--n", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    assert_eq!(run(&["hecke-table", "--G", "sym:3", "--H", "sym:5"]).status.code(), Some(2));
}

#[test]
fn output_path_receives_the_report() {
    let path = std::env::temp_dir().join(format!("hallgebra-cli-{}.csv", std::process::id()));
    let out = run(&["hall-table", "--bound", "2", "--out", "csv", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.starts_with("n,l,m,value\n"));
}
