use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification used by front ends to pick exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input: unknown ids, schema violations, structural defects.
    Input,
    /// The input is well formed but violates a precondition of the operation.
    Precondition,
    /// An enumeration budget was exceeded.
    Budget,
    /// A self-check failed; indicates a bug rather than bad input.
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("not a semilattice: {0}")]
    NotASemilattice(String),

    #[error("inconsistent input: {0}")]
    InconsistentInput(String),

    #[error("not (meet, join)-closed: {0}")]
    NotClosed(String),

    #[error("input not submodular-like: minimizer set is not (meet, join)-closed: {0}")]
    NotSubmodular(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    Budget {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::UnknownElement(_) | Error::Input(_) | Error::NotClosed(_) | Error::Io(_) | Error::Json(_) => {
                ErrorKind::Input
            }
            Error::NotASemilattice(_)
            | Error::InconsistentInput(_)
            | Error::NotSubmodular(_)
            | Error::Precondition(_) => ErrorKind::Precondition,
            Error::Budget { .. } => ErrorKind::Budget,
            Error::Internal(_) => ErrorKind::Internal,
        }
    }

    pub(crate) fn budget(what: &'static str, needed: u128, limit: u128) -> Self {
        Error::Budget { what, needed, limit }
    }
}
