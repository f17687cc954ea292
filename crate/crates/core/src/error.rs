use thiserror::Error;

use crate::scalars::ScalarError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cross-section is empty: no point has the requested inner products")]
    EmptySection,
    #[error("configuration is not antipodal")]
    NotAntipodal,
    #[error("repeated point: off-diagonal entry equal to 1 at ({0}, {1})")]
    RepeatedPoint(usize, usize),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("empty inner-product set")]
    EmptyIpSet,
    #[error("integer overflow while {0}")]
    Overflow(&'static str),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// True for failures caused by bad input files or the filesystem.
    pub fn is_io_or_parse(&self) -> bool {
        matches!(
            self,
            Error::Io(_) | Error::Parse { .. } | Error::Csv(_) | Error::Json(_)
        )
    }
}
