//! Logic program updates.
//!
//! This crate provides:
//!
//! * rule / program / rule-base syntax with a deterministic printer and a
//!   line/column-reporting parser ([`syntax`], [`parse`]),
//! * brute-force model semantics over bitmask interpretations: classical,
//!   stable, strong (SE) and robust (RE) three-valued models, canonical
//!   forms, rule induction and model-set materialization ([`semantics`],
//!   [`canonical`]),
//! * a family of equivalence and entailment relations between rule bases
//!   ([`equivalence`]),
//! * exception-driven update operators on rule bases together with a
//!   postulate checker ([`exceptions`]),
//! * rejection-based semantics for sequences of programs ([`rejection`]),
//! * condensing of program sequences into single nested or disjunctive
//!   programs ([`condense`]),
//! * classical belief update operators on formula knowledge bases and their
//!   encoding as exception functions ([`belief`]).

pub mod belief;
pub mod canonical;
pub mod condense;
pub mod equivalence;
pub mod exceptions;
pub mod formula;
pub mod nested;
pub mod parse;
pub mod rejection;
pub mod semantics;
pub mod syntax;

/// Errors produced by parsing, enumeration caps, and input validation.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input text could not be parsed; positions are 1-based.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    /// An enumeration would range over more atoms than the configured cap.
    #[error("alphabet has {atoms} atoms, exceeding the enumeration cap of {cap}")]
    CapExceeded { atoms: usize, cap: usize },
    /// Structurally invalid input for the requested operation.
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
