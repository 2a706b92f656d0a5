//! Harness error type.

use std::path::PathBuf;

use streamboost_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: u64,
        message: String,
    },

    #[error("{path}:{line}: label {token:?} is not one of -1, 0, +1")]
    Label {
        path: String,
        line: u64,
        token: String,
    },

    #[error("dataset {0} contains no examples")]
    EmptyDataset(PathBuf),

    #[error("the test split is empty; nothing to evaluate")]
    EmptyTestSet,

    #[error("failed to access {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] CoreError),
}
