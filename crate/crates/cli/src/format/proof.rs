//! Proof traces, one numbered step per line:
//!
//! ```text
//! 1. start -> _t0  [input]
//! 7. _w1_pp -> ~[1] ~p  [def]
//! 9. true -> ~a | b  [LRES, 3,5]
//! ```

use std::fmt::Write as _;

use confluence_core::{Justification, Proof};

use super::snf::write_clause;

pub fn write_proof(proof: &Proof) -> String {
    let mut out = String::new();
    for (i, step) in proof.steps.iter().enumerate() {
        let tag = match &step.justification {
            Justification::Input => "input".to_string(),
            Justification::Definition => "def".to_string(),
            Justification::Inference { rule, premises } => {
                let refs: Vec<String> = premises.iter().map(|p| (p + 1).to_string()).collect();
                format!("{rule}, {}", refs.join(","))
            }
        };
        writeln!(out, "{}. {}  [{}]", i + 1, write_clause(&step.clause, &proof.symbols), tag).unwrap();
    }
    out
}
