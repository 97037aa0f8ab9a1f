mod common;

use std::fs;
use std::process::{Command, Output};

use confluence::format::snf::{parse_clause_set, write_clause_set};
use confluence::{run, Answer, Input, Mode, RunConfig};
use confluence_core::formula::render;
use confluence_core::{Formula, LogicSpec};

fn confluence(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_confluence")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verdicts_exit_zero() {
    let o = confluence(&["--logic", "1:K;2:K", "[1][2](a&b) -> [1]([2]a & [2]b)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("VALID"));
    let o = confluence(&["--mode", "sat", "p & ~p"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "UNSAT");
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(confluence(&["[1 p"]).status.code(), Some(2));
    assert_eq!(confluence(&["--logic", "1:X", "p"]).status.code(), Some(2));
    assert_eq!(confluence(&[]).status.code(), Some(2));
    assert_eq!(confluence(&["--file", "/nonexistent/formula"]).status.code(), Some(2));
}

#[test]
fn clause_limit_exits_three() {
    let o = confluence(&["--logic", "1:5", "--max-clauses", "20", "<1>((q -> false) & <1>r <-> (<1>p <-> [1]p))"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stdout(&o).trim(), "UNKNOWN (resource limit)");
}

#[test]
fn countermodel_is_printed_and_exported() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("model.json");
    let o = confluence(&["--oracle-check", "--model-json", json.to_str().unwrap(), "[1]p -> p"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("NOT VALID\ncountermodel:\nworlds: w0\n"), "{out}");
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(v["worlds"], 1);
    assert!(v["relations"]["1"].as_array().unwrap().is_empty(), "{v}");
}

#[test]
fn no_model_within_bound_is_reported() {
    // Satisfiable only on frames with an infinite chain.
    let o = confluence(&["--mode", "sat", "--oracle-check", "--max-worlds", "1", "<1>p & [1]<1>~p & [1][1]<1>p"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("SAT\n"), "{out}");
    assert!(out.contains("no model"), "{out}");
}

#[test]
fn proof_file_lists_the_refutation() {
    let dir = tempfile::tempdir().unwrap();
    let proof = dir.path().join("proof.txt");
    let o = confluence(&["--logic", "1:T,5", "--proof-out", proof.to_str().unwrap(), "p -> [1]<1>p"]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(proof).unwrap();
    assert!(text.lines().next().unwrap().starts_with("1. start -> "), "{text}");
    assert!(text.lines().last().unwrap().contains("-> false"), "{text}");
    assert!(text.contains("[RES[1]{1,0,1,1}, "), "{text}");
}

/// Clause lines with each disjunction's literals sorted.
fn canonical(text: &str) -> Vec<String> {
    text.lines()
        .map(|line| {
            let (lhs, rhs) = line.split_once(" -> ").unwrap();
            let mut lits: Vec<&str> = rhs.split(" | ").collect();
            lits.sort();
            format!("{lhs} -> {}", lits.join(" | "))
        })
        .collect()
}

#[test]
fn emitted_clauses_can_be_read_back() {
    let o = confluence(&["--mode", "sat", "--emit-snf", "[1][2](a&b) & ~[1]([2]a & [2]b)"]);
    let out = stdout(&o);
    let (clauses, verdict) = out.trim_end().rsplit_once('\n').unwrap();
    assert_eq!(verdict, "UNSAT");
    assert_eq!(clauses.lines().count(), 9);
    let set = parse_clause_set(clauses).unwrap();
    assert_eq!(canonical(&write_clause_set(&set)), canonical(clauses));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("clauses.snf");
    fs::write(&path, clauses).unwrap();
    let o = confluence(&["--mode", "sat", "--input-snf", path.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "UNSAT");
    let o = confluence(&["--input-snf", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn validity_is_unsatisfiability_of_the_negation() {
    let mut rng = common::rng(81);
    for (i, logic) in ["1:K", "1:T", "1:B", "1:D;2:Ban", "1:5"].iter().cycle().take(150).enumerate() {
        let f = common::formula(&mut rng, 2, 4, 2, 2);
        let logic: LogicSpec = logic.parse().unwrap();
        let answer = |mode, text: String| {
            run(&RunConfig::new(mode, logic.clone(), Input::Formula(text)), &mut std::io::sink()).unwrap().answer
        };
        let valid = answer(Mode::Valid, render(&f));
        let unsat = answer(Mode::Sat, render(&Formula::not(f.clone())));
        assert_eq!(valid == Answer::Valid, unsat == Answer::Unsat, "round {i}: {}", render(&f));
        assert!(matches!(valid, Answer::Valid | Answer::NotValid));
    }
}
