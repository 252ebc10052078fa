use std::path::PathBuf;

use thiserror::Error;

use crate::datum::IndexId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown index {0}")]
    UnknownIndex(IndexId),

    #[error("charge for level {0} is not defined")]
    MissingCharge(i64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A predicate was called on data outside its hypotheses, e.g. the
    /// all-imaginary test on a datum with a real index.
    #[error("misuse: {0}")]
    Misuse(String),

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("positivity assumption fails in window: {0} violation(s)")]
    Positivity(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
