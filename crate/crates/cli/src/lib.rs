//! File formats and the prover pipeline for the `confluence` command.

pub mod format;
pub mod run;

pub use run::{run, Answer, Input, Mode, Report, RunConfig, RunError};
