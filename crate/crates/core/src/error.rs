use thiserror::Error;

use crate::automaton::Violation;
use crate::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("symbol '{0}' is not in the alphabet")]
    UnknownSymbol(char),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{what} is not affine: {detail}")]
    NotAffine { what: &'static str, detail: String },

    #[error("invalid automaton: {}", join_violations(.0))]
    InvalidAutomaton(Vec<Violation>),

    #[error("alphabets differ: {left:?} vs {right:?}")]
    AlphabetMismatch { left: Vec<char>, right: Vec<char> },

    #[error("accepting sets overlap at state {0}")]
    OverlappingProjections(usize),

    #[error("state index {index} out of range for {size} states")]
    StateOutOfRange { index: usize, size: usize },

    #[error("{what} = {value} is outside {range}")]
    OutOfRange {
        what: &'static str,
        value: Box<Rational>,
        range: &'static str,
    },

    #[error("construction needs {states} states, above the ceiling of {ceiling}")]
    TooManyStates { states: String, ceiling: u64 },

    #[error("cutpoint {from} cannot be moved to {to} while preserving both > and =")]
    UnshiftableCutpoint { from: Box<Rational>, to: Box<Rational> },

    #[error("initial state must be (1, 0, ..., 0)")]
    NonCanonicalInitial,

    #[error("expected a one-letter alphabet, found {0} letters")]
    NonUnary(usize),

    #[error("word list is empty")]
    EmptyWordList,

    #[error("incomplete transition function: no move from state {state} on '{symbol}'")]
    IncompleteDfa { state: usize, symbol: char },

    #[error("eigenvalue computation failed: {0}")]
    Eigen(String),

    #[error("{0}")]
    InvalidArgument(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
