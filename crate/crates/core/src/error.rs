use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("enumeration exceeded the cap of {cap} {what}")]
    ResourceLimit { what: &'static str, cap: u64 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("value outside its domain: {0}")]
    Domain(String),

    #[error("unknown catalog entry `{name}`; available: {available}")]
    NotFound { name: String, available: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error(
        "Frank-Wolfe did not converge after {iterations} iterations \
         (best value {best_value:e} nats, gap {gap:e})"
    )]
    NonConvergence { iterations: usize, best_value: f64, gap: f64 },

    #[error("no seed realization available for `{0}`")]
    NoSeedRealization(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
