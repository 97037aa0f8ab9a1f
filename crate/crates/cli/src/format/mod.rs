//! Text formats for clause sets, proofs and countermodels.

pub mod model;
pub mod proof;
pub mod snf;
