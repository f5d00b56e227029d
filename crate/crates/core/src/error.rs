use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid ground spec: {0}")]
    InvalidSpec(String),
    #[error("invalid subset mask {mask:#b} for n={n}, k={k}")]
    InvalidSubset { mask: u64, n: u32, k: u32 },
    #[error("rank {rank} out of range (layer has {size} elements)")]
    RankOutOfRange { rank: u64, size: String },
    #[error("objects belong to different ground specs")]
    SpecMismatch,
    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: String,
        limit: String,
    },
    #[error("family is not independent (intersecting)")]
    NotIndependent,
    #[error("family must be nonempty: {0}")]
    EmptyFamily(&'static str),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("no imprimitive shape exists for these parameters")]
    NoImprimitiveShape,
    #[error("assertion failed: {0}")]
    AssertionFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn budget(what: &'static str, needed: impl ToString, limit: impl ToString) -> Self {
        Error::BudgetExceeded {
            what,
            needed: needed.to_string(),
            limit: limit.to_string(),
        }
    }

    pub(crate) fn assertion(msg: impl Into<String>) -> Self {
        Error::AssertionFailed(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::PreconditionFailed(msg.into())
    }
}
