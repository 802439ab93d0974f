use thiserror::Error;

use crate::spaces::SpaceKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied value is outside the accepted domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The decision space does not have the structure an operation needs
    /// (disconnected graph, missing or ambiguous median, ...).
    #[error("structural error: {0}")]
    Structural(String),

    #[error("{op} is not defined on {kind:?} spaces")]
    UnsupportedSpace { op: &'static str, kind: SpaceKind },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("every run produced an infinite distortion; nothing to aggregate")]
    DegenerateReport,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }
}
