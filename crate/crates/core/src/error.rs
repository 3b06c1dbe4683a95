use thiserror::Error;

use crate::quiver::{EdgeId, Violation};

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid quiver: {}", join(.0))]
    InvalidQuiver(Vec<Violation>),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("enumeration bound exceeded: {candidates} candidates > bound {bound}")]
    BoundExceeded { candidates: u128, bound: u128 },

    #[error("loop {0} is not a degenerate loop")]
    NotDegenerate(EdgeId),

    #[error("vertex order is not a loop-maximal permutation of the quiver's vertices")]
    InvalidOrder,

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("operation requires morphism kind `map`")]
    KindMismatch,

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

fn join(violations: &[Violation]) -> String {
    violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
