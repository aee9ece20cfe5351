use thiserror::Error;

/// Errors raised across the decomposition pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },

    #[error("operator is not Hermitian: {0}")]
    NonHermitian(String),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("invalid target: {0}")]
    InvalidTarget(String),

    #[error("({0}, {1}) is not an edge of the hardware graph")]
    NotAnEdge(usize, usize),

    #[error("hardware graph is not connected")]
    Disconnected,

    #[error("node {node} out of range for a graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("support mismatch: {0}")]
    SupportMismatch(String),

    #[error("split index {m} out of range 1..={max}")]
    SplitOutOfRange { m: usize, max: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{what} supports at most {cap} qubits, got {n}")]
    SizeCap { what: &'static str, cap: usize, n: usize },

    #[error("circuit is not in nested conjugation form: {0}")]
    Shape(String),

    #[error("circuit has no layer assignment")]
    Unscheduled,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
