use thiserror::Error;

use crate::scalar::FieldContext;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed scalar text; `pos` is a byte offset into the input.
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("field context mismatch: {0} vs {1}")]
    ContextMismatch(FieldContext, FieldContext),

    #[error("matrix is singular")]
    Singular,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("oracle hull did not stabilize at radius {0}")]
    NotStabilized(i64),

    #[error("OFF output needs ambient dimension at most 3 after the chart, got {0}")]
    OffDimension(usize),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Singular => 3,
            Error::Invariant(_) => 4,
            _ => 2,
        }
    }
}
