use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex count {0} outside supported range 1..=64")]
    VertexCount(usize),

    #[error("edge probability {0} outside [0, 1]")]
    Probability(f64),

    #[error("graph has {n} vertices but the encoding holds at most {n_max}")]
    TooLarge { n: usize, n_max: usize },

    #[error("line {line}: invalid {field}: {reason}")]
    Parse {
        line: usize,
        field: &'static str,
        reason: String,
    },

    #[error("dimension mismatch in {what}: expected {expected}, got {got}")]
    Dimension {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("training diverged at epoch {epoch}: non-finite loss")]
    Diverged { epoch: usize },

    #[error("{0}")]
    Checkpoint(String),

    #[error("solver budget exhausted on all {records} records")]
    BudgetExhausted { records: usize },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit status: 1 for bad arguments, 3 when no record could be
    /// solved, 2 for everything else (unreadable or inconsistent data).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::VertexCount(_) | Error::Probability(_) | Error::InvalidArgument(_) => 1,
            Error::BudgetExhausted { .. } => 3,
            _ => 2,
        }
    }

    pub(crate) fn parse(line: usize, field: &'static str, reason: impl Into<String>) -> Self {
        Error::Parse {
            line,
            field,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
