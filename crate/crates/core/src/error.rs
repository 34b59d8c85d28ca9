use thiserror::Error;

/// Errors reported by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("polynomial is not symmetric in theta: {0}")]
    NotSymmetric(String),
    #[error("residue precondition violated: {0}")]
    Precondition(String),
    #[error("Q_{0} unavailable")]
    QkUnavailable(usize),
    #[error("weighted degree {actual} ≠ {expected}")]
    WeightedDegree { actual: u32, expected: u32 },
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("missing intersection number for `{0}`")]
    MissingEntry(String),
    #[error("elimination exceeded its budget: {0}")]
    Timeout(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
