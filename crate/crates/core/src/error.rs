use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("coordinate {index} is negative ({value})")]
    NegativeCoordinate { index: usize, value: f64 },

    #[error("coordinate {index} is not finite")]
    NonFinite { index: usize },

    #[error("dimension {dim} exceeds the supported maximum of {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("tail copula value {value} falls outside [0, {upper}] beyond round-off")]
    TailCopulaOutOfRange { value: f64, upper: f64 },

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("vertex {0} is a leaf; an internal vertex is required")]
    LeafVertex(usize),

    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(String),

    #[error("grid of {points} points exceeds the limit of {limit}")]
    GridTooLarge { points: u64, limit: u64 },

    #[error("{path}: {message}")]
    Schema { path: String, message: String },

    #[error("unknown sea-level model label `{0}`")]
    UnknownLabel(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name: name.into(),
            reason: reason.into(),
        }
    }
}
