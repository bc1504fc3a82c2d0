use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what}: size {actual} exceeds the configured cap of {limit}")]
    SizeLimitExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("unknown vertex name `{0}`")]
    UnknownVertex(String),

    #[error("polyhedron is unbounded")]
    Unbounded,

    #[error("polyhedron is not full-dimensional")]
    NotFullDimensional,

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("search budget of {budget} nodes exceeded")]
    SearchBudgetExceeded { budget: u64 },

    #[error("polytope has non-integral vertex {0}")]
    NotLatticePolytope(String),

    #[error("Ehrhart interpolation check failed: {0}")]
    ValidationFailed(String),

    #[error("negative delta-vector entry {value} at index {index}")]
    NegativeDelta { index: usize, value: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
