use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cannot parse Pauli label {label:?}: {reason}")]
    Parse { label: String, reason: String },

    #[error("qubit count mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("{n} qubits exceeds the dense limit of {max}")]
    Capacity { n: usize, max: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("coefficient vector outside the unit ball (squared norm {0})")]
    BallViolation(f64),

    #[error("transform has determinant -1 on the extended generator set")]
    Orientation,

    #[error("malformed document: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
