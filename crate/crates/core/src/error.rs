use thiserror::Error;

/// Errors raised anywhere in the search pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid graph order {0}: at least 2 vertices are required")]
    InvalidOrder(usize),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("truncation: {0}")]
    Truncation(String),

    #[error("invalid Jacobi matrix: {0}")]
    InvalidJacobi(String),

    #[error("{stage}: {msg}")]
    Numerical { stage: &'static str, msg: String },

    #[error("internal consistency: {0}")]
    InternalConsistency(String),

    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("degenerate peak: fidelity curve is identically zero")]
    DegeneratePeak,
}

impl Error {
    pub(crate) fn numerical(stage: &'static str, msg: impl Into<String>) -> Self {
        Error::Numerical { stage, msg: msg.into() }
    }

    /// Name of the pipeline stage that produced the error.
    pub fn stage(&self) -> &'static str {
        match self {
            Error::InvalidOrder(_) | Error::InvalidGraph(_) | Error::Parse { .. } => "graph",
            Error::InvalidArgument(_) => "arguments",
            Error::Truncation(_) => "propagate",
            Error::InvalidJacobi(_) | Error::InternalConsistency(_) => "jost",
            Error::Numerical { stage, .. } => stage,
            Error::SizeMismatch { .. } => "reduction",
            Error::DegeneratePeak => "peak",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
