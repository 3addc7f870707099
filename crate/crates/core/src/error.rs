use thiserror::Error;

use crate::monomial::Monomial;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("empty input: {0}")]
    Empty(String),

    #[error("degree error: {0}")]
    Degree(String),

    #[error("polynomial is not homogeneous: found degrees {0} and {1}")]
    Inhomogeneous(u32, u32),

    #[error("singular coordinate change")]
    SingularChange,

    #[error("division by zero polynomial")]
    DivisionByZero,

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("index error: {0}")]
    Index(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("pieces do not form an ideal: {0}")]
    NotAnIdeal(String),

    #[error("could not draw an invertible change after {0} attempts")]
    Randomness(usize),

    #[error("no generic sample: {} distinct staircases across trials", .staircases.len())]
    NonGeneric { staircases: Vec<Vec<Monomial>> },

    #[error("size error: {0}")]
    Size(String),

    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
