//! Clausal resolution for the multimodal logics K(n) extended with
//! confluence axioms `<a>^p [a]^q φ -> [a]^r <a>^s φ`, `p, q, r, s ∈ {0, 1}`.
//!
//! The pipeline is: [`formula::parse`] → [`snf::to_snf`] → definition
//! clauses ([`snf::add_required_definitions`]) → [`saturation::saturate`].
//! The [`semantics`] module is an independent bounded Kripke-model oracle
//! used for testing and for countermodel reporting.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![deny(missing_debug_implementations)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod calculus;
pub mod formula;
pub mod saturation;
pub mod semantics;
pub mod snf;
pub mod symbols;

pub use calculus::{Family, LogicSpec, RuleId, Shape};
pub use formula::{Agent, Formula, Literal, ModalLiteral};
pub use saturation::{saturate, Limits, Proof, Verdict};
pub use semantics::{FrameProperty, KripkeModel};
pub use snf::{Clause, ClauseSet, Justification};
pub use symbols::{Symbol, SymbolKind, SymbolTable};
