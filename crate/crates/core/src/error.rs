use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("k = {k} out of range for n = {n}")]
    KOutOfRange { k: usize, n: usize },

    #[error("invalid block composition: {0}")]
    InvalidComposition(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("instance too large for {what}: size {size} exceeds limit {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("unsupported problem for this operation: {0}")]
    UnsupportedProblem(String),

    #[error("infeasible candidate: {0}")]
    InfeasibleCandidate(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("matrix entry must be strictly positive (found {0})")]
    NonPositiveEntry(f64),

    #[error("certificate schema violation: {0}")]
    Schema(String),

    #[error("instance digest mismatch: certificate has {expected}, instance hashes to {got}")]
    DigestMismatch { expected: String, got: String },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
