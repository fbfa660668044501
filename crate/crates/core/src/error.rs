use thiserror::Error;

use crate::semiring::{SemiringId, Value};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("outcome `{value}` is not in the carrier of the {semiring} semiring")]
    Carrier { semiring: SemiringId, value: Value },

    #[error("interaction step {index} (`{label}`) is not a valid transition")]
    InvalidInteraction { index: usize, label: String },

    #[error("invalid trace: {0}")]
    InvalidTrace(String),

    #[error("contract violation: {0}")]
    Contract(String),
}

impl Error {
    pub fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
