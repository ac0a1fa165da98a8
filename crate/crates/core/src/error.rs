use std::fmt;

use thiserror::Error;

/// A location in source text, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{position}: {message}")]
pub struct ParseError {
    pub position: Position,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            position: Position { line, column },
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live over different variable tables or orders")]
    RingMismatch,
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariable(String),
    #[error("at most {max} variables are supported, got {got}")]
    TooManyVariables { max: usize, got: usize },
    #[error("expected a point with {expected} coordinates, got {got}")]
    PointLength { expected: usize, got: usize },
    #[error("{0} of the zero polynomial is undefined")]
    ZeroPolynomial(&'static str),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("division is not exact")]
    InexactDivision,
    #[error("vector field has {got} components, expected {expected}")]
    FieldArity { expected: usize, got: usize },
    #[error("a system needs at least one input field")]
    NoInputs,
    #[error("minor size {size} out of range 1..={max}")]
    MinorSize { size: usize, max: usize },
    #[error("rank threshold {l} out of range 1..={n}")]
    RankThreshold { l: usize, n: usize },
    #[error("ideal has a non-monomial generator `{0}`")]
    NotMonomial(String),
    #[error("immersion map is invalid: {0}")]
    InvalidImmersion(String),
    #[error("closure violation: `{0}` has no companion variable in the immersion map")]
    ClosureViolation(String),
    #[error("undeclared transcendental subexpression `{0}`")]
    UndeclaredTranscendental(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
