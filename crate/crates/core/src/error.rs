use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation (e.g. `k > n`).
    #[error("domain error: {0}")]
    Domain(String),

    /// The instance itself violates an invariant (bad id, non-uniform graph, ...).
    #[error("input error: {0}")]
    Input(String),

    /// Instance or spec file could not be parsed.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// An exact oracle refused because enumeration would exceed its budget.
    #[error("oracle refused: {0}")]
    OracleRefused(String),

    /// Generator spec cannot be satisfied.
    #[error("spec error: {0}")]
    Spec(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
