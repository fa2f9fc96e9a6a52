use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("invalid matrix entry at ({row}, {col}): {value}")]
    InvalidEntry { row: usize, col: usize, value: f64 },

    #[error("ragged matrix: row {row} has {found} columns, expected {expected}")]
    RaggedMatrix { row: usize, expected: usize, found: usize },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}, line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("no rows carry the label `{0}`")]
    UnknownLabel(String),

    #[error("X and Y selections must be disjoint labels (both are `{0}`)")]
    SameLabels(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),

    #[error("resource guard: {what} would reach {count}, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        count: u128,
        cap: u128,
    },

    #[error("instance too large for brute force: {n} vertices (limit {limit})")]
    InstanceTooLarge { n: usize, limit: usize },
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceLimit { .. } => 3,
            _ => 2,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
