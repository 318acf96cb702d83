//! Propositional proof kernel.
//!
//! Explicit, checkable derivations for four calculi of classical
//! propositional logic (natural deduction, a Hilbert system, a sequent
//! calculus with cut and its cut-free fragment), together with executable
//! metatheory: proof synthesis for valid formulas through CNF, translations
//! between the calculi, and cut elimination by backward proof search.

pub mod check;
pub mod cli;
pub mod cutfree;
pub mod envelope;
pub mod formula;
pub mod hilbert;
pub mod natded;
pub mod normalforms;
pub mod semantics;
pub mod sequent;

pub use check::{CheckError, NodePath, ProofError};
pub use formula::{parse, print, Formula, VarName};
pub use semantics::{Context, Valuation};
