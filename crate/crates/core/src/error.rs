//! Error types shared across the crate.

use thiserror::Error;

/// Raised while assembling graphs, instances or set systems from raw parts.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("vertex index {index} out of range (count {count})")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("budget k={k} exceeds red vertex count {red_count}")]
    BudgetTooLarge { k: usize, red_count: usize },
    #[error("connectivity graph has {conn} vertices but coverage graph has {cov} red vertices")]
    RedCountMismatch { conn: usize, cov: usize },
    #[error("terminal set has {terminals} vertices but budget is k={k}")]
    TooManyTerminals { terminals: usize, k: usize },
    #[error("{0}")]
    Invalid(String),
}

/// Raised by solvers and oracles. A limit error means the requested
/// computation was refused, never that a wrong verdict was produced.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl From<BuildError> for SolverError {
    fn from(e: BuildError) -> Self {
        SolverError::InvalidParameter(e.to_string())
    }
}

/// Raised when reading an instance file.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("malformed document: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("field `{field}`: {source}")]
    Semantic {
        field: &'static str,
        source: BuildError,
    },
}
