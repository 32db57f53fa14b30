use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error(
        "clique enumeration exceeded the budget of {budget} steps; \
         raise it with PHCURV_BUDGET or --budget"
    )]
    BudgetExceeded { budget: u64 },

    #[error("complex was truncated at dimension {max_dim}; its Euler characteristic is undefined")]
    Truncated { max_dim: usize },

    #[error("orientation has a cyclic triangle ({0}, {1}, {2}); the index is undefined")]
    CyclicTriangle(usize, usize, usize),

    #[error("invalid orientation: {0}")]
    InvalidOrientation(String),

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("sample count must be positive")]
    ZeroSamples,

    #[error("vertex {vertex} has a unit sphere that is not a cycle of length >= 4")]
    NotTwoGraph { vertex: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("point cloud and graph disagree: {0}")]
    Mismatch(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
