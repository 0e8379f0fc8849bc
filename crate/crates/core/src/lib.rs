//! A saturation-based theorem prover for classical higher-order logic.
//!
//! The pipeline is: parse a THF problem ([`tptp`]), optionally embed a
//! modal problem into classical logic ([`modal`]), clausify ([`cnf`]) and
//! saturate with the extensional paramodulation calculus ([`saturation`]).

pub mod calculus;
pub mod cli;
pub mod clause;
pub mod cnf;
pub mod formula;
pub mod modal;
pub mod proof;
pub mod saturation;
pub mod signature;
pub mod subsumption;
pub mod term;
pub mod tptp;
pub mod types;
pub mod unify;

pub use signature::{Signature, Symbol, SymbolKind};
pub use term::{Position, RawTerm, Step, Substitution, Term, TermKind, VarId};
pub use types::Type;
