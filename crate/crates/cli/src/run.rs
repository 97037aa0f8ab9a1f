//! The prover pipeline behind the command line.

use std::io::{self, Write};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use confluence_core::formula::{parse_with, ParseOptions};
use confluence_core::semantics::{bounded_model_search, formula_model_search, SearchError};
use confluence_core::snf::{add_required_definitions, to_snf, SnfError};
use confluence_core::saturation::saturate_with;
use confluence_core::{ClauseSet, Formula, KripkeModel, Limits, LogicSpec, Proof, Verdict};
use thiserror::Error;

use crate::format::model::{model_json, write_model};
use crate::format::proof::write_proof;
use crate::format::snf::{parse_clause_set, write_clause_set, SnfParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Refute the negation of the input formula.
    Valid,
    /// Refute the input itself.
    Sat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Formula(String),
    FormulaFile(PathBuf),
    SnfFile(PathBuf),
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub mode: Mode,
    pub logic: LogicSpec,
    pub input: Input,
    pub emit_snf: bool,
    pub proof_out: Option<PathBuf>,
    pub model_json_out: Option<PathBuf>,
    pub oracle_check: bool,
    pub max_worlds: usize,
    pub max_clauses: usize,
    pub max_seconds: u64,
    /// Accept `start` and `_`-prefixed names in formulas.
    pub permissive: bool,
}

impl RunConfig {
    pub fn new(mode: Mode, logic: LogicSpec, input: Input) -> RunConfig {
        RunConfig {
            mode,
            logic,
            input,
            emit_snf: false,
            proof_out: None,
            model_json_out: None,
            oracle_check: false,
            max_worlds: 4,
            max_clauses: Limits::default().max_clauses,
            max_seconds: 60,
            permissive: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Answer {
    Valid,
    NotValid,
    Sat,
    Unsat,
    Unknown,
}

impl Answer {
    pub fn text(self) -> &'static str {
        match self {
            Answer::Valid => "VALID",
            Answer::NotValid => "NOT VALID",
            Answer::Sat => "SAT",
            Answer::Unsat => "UNSAT",
            Answer::Unknown => "UNKNOWN (resource limit)",
        }
    }
}

#[derive(Debug)]
pub struct Report {
    pub answer: Answer,
    pub proof: Option<Proof>,
    /// Set when the oracle was asked for and found a model.
    pub model: Option<KripkeModel>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.answer == Answer::Unknown {
            3
        } else {
            0
        }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
    #[error("parse error at {0}")]
    Parse(#[from] confluence_core::formula::ParseError),
    #[error("clause input: {0}")]
    Snf(#[from] SnfParseError),
    #[error("{0}")]
    Translation(#[from] SnfError),
    #[error("{0}")]
    Oracle(#[from] SearchError),
    #[error("clause-set input is checked for satisfiability; use --mode sat")]
    ClauseInputNeedsSat,
    #[error(transparent)]
    Output(#[from] io::Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

enum Problem {
    Formula(Formula),
    Clauses,
}

pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<Report, RunError> {
    let read = |path: &PathBuf| {
        std::fs::read_to_string(path).map_err(|source| RunError::Read { path: path.clone(), source })
    };
    let (problem, mut set) = match &config.input {
        Input::SnfFile(path) => {
            if config.mode == Mode::Valid {
                return Err(RunError::ClauseInputNeedsSat);
            }
            (Problem::Clauses, parse_clause_set(&read(path)?)?)
        }
        Input::Formula(text) => formula_problem(text, config)?,
        Input::FormulaFile(path) => formula_problem(&read(path)?, config)?,
    };
    add_required_definitions(&mut set, &config.logic);
    if config.emit_snf {
        write!(out, "{}", write_clause_set(&set))?;
    }
    let oracle_input = config.oracle_check.then(|| set.clone());

    let deadline = Instant::now() + Duration::from_secs(config.max_seconds);
    let limits = Limits { max_clauses: config.max_clauses };
    let verdict = saturate_with(set, &config.logic, &limits, || Instant::now() >= deadline);

    let mut report = Report { answer: Answer::Unknown, proof: None, model: None };
    match verdict {
        Verdict::Unsatisfiable(proof) => {
            report.answer = if config.mode == Mode::Valid { Answer::Valid } else { Answer::Unsat };
            writeln!(out, "{}", report.answer.text())?;
            if let Some(path) = &config.proof_out {
                std::fs::write(path, write_proof(&proof))
                    .map_err(|source| RunError::Write { path: path.clone(), source })?;
            }
            report.proof = Some(proof);
        }
        Verdict::Saturated(_) => {
            report.answer = if config.mode == Mode::Valid { Answer::NotValid } else { Answer::Sat };
            writeln!(out, "{}", report.answer.text())?;
            if let Some(set) = oracle_input {
                let found = match &problem {
                    Problem::Formula(f) => formula_model_search(f, &config.logic, config.max_worlds)?,
                    Problem::Clauses => bounded_model_search(&set, &config.logic, config.max_worlds)?,
                };
                match &found {
                    Some(m) => {
                        let label = if config.mode == Mode::Valid { "countermodel" } else { "model" };
                        writeln!(out, "{label}:")?;
                        write!(out, "{}", write_model(m))?;
                        if let Some(path) = &config.model_json_out {
                            let doc = serde_json::to_string_pretty(&model_json(m)).expect("json");
                            std::fs::write(path, doc + "\n")
                                .map_err(|source| RunError::Write { path: path.clone(), source })?;
                        }
                    }
                    None => writeln!(out, "no model ≤ bound ({} worlds)", config.max_worlds)?,
                }
                report.model = found;
            }
        }
        Verdict::ResourceLimit(_) => writeln!(out, "{}", report.answer.text())?,
    }
    Ok(report)
}

fn formula_problem(text: &str, config: &RunConfig) -> Result<(Problem, ClauseSet), RunError> {
    let options = ParseOptions { agent_count: u32::MAX, permissive: config.permissive };
    let f = parse_with(text.trim(), options)?;
    let goal = match config.mode {
        Mode::Valid => Formula::not(f),
        Mode::Sat => f,
    };
    let set = to_snf(&goal)?;
    Ok((Problem::Formula(goal), set))
}
