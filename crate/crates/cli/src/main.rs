use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use confluence::{run, Input, Mode, RunConfig};
use confluence_core::LogicSpec;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Valid,
    Sat,
}

/// Resolution prover for multimodal K(n) with confluence axioms.
#[derive(Debug, Parser)]
#[command(version)]
struct Args {
    /// Formula to check, e.g. "[1]p -> p".
    formula: Option<String>,

    /// Read the formula from a file.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["formula", "input_snf"])]
    file: Option<PathBuf>,

    /// Read a clause set instead of a formula.
    #[arg(long, value_name = "FILE", conflicts_with = "formula")]
    input_snf: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "valid")]
    mode: ModeArg,

    /// Per-agent families, e.g. "1:T,5;2:K". Unlisted agents are K.
    #[arg(long, default_value = "")]
    logic: String,

    /// Enable every confluence rule of the listed families.
    #[arg(long)]
    all_rules: bool,

    /// Print the clause set before saturation.
    #[arg(long)]
    emit_snf: bool,

    /// Write the refutation to this file.
    #[arg(long, value_name = "FILE")]
    proof_out: Option<PathBuf>,

    /// Look for a bounded model when the clause set saturates.
    #[arg(long)]
    oracle_check: bool,

    /// Write the model found by --oracle-check as JSON.
    #[arg(long, value_name = "FILE")]
    model_json: Option<PathBuf>,

    #[arg(long, default_value_t = 4)]
    max_worlds: usize,

    #[arg(long, default_value_t = 100_000)]
    max_clauses: usize,

    #[arg(long, default_value_t = 60)]
    max_seconds: u64,

    /// Accept `start` and `_`-prefixed names in formulas.
    #[arg(long)]
    permissive: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let logic = match args.logic.parse::<LogicSpec>() {
        Ok(l) => l.with_all_rules(args.all_rules),
        Err(e) => return fail(&format!("--logic: {e}")),
    };
    let input = match (args.formula, args.file, args.input_snf) {
        (Some(f), _, _) => Input::Formula(f),
        (_, Some(p), _) => Input::FormulaFile(p),
        (_, _, Some(p)) => Input::SnfFile(p),
        _ => return fail("no input: give a formula, --file or --input-snf"),
    };
    let mode = match args.mode {
        ModeArg::Valid => Mode::Valid,
        ModeArg::Sat => Mode::Sat,
    };
    let mut config = RunConfig::new(mode, logic, input);
    config.emit_snf = args.emit_snf;
    config.proof_out = args.proof_out;
    config.model_json_out = args.model_json;
    config.oracle_check = args.oracle_check;
    config.max_worlds = args.max_worlds;
    config.max_clauses = args.max_clauses;
    config.max_seconds = args.max_seconds;
    config.permissive = args.permissive;

    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match run(&config, &mut out) {
        Ok(report) => report.exit_code(),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}

fn fail(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}
