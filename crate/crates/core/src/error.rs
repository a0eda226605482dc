use thiserror::Error;

/// Errors raised by the simulator, the circuit builders and the game engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("register size {0} out of range (1..={max})", max = crate::sim::MAX_QUBITS)]
    Size(usize),

    #[error("invalid gate: {0}")]
    Validation(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("rule violation: {0}")]
    RuleViolation(String),

    #[error("operation not allowed in phase {phase}: {action}")]
    State { phase: String, action: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
