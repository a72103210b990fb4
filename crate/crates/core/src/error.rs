use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A construction exceeded a configured size cap.
    #[error("resource limit exceeded: {what} (limit {limit})")]
    Resource { what: String, limit: usize },

    /// Input data violates a structural requirement; the message names a witness.
    #[error("validation failed: {0}")]
    Validation(String),

    /// Two objects that must belong to the same group (or table) do not.
    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("eigenspaces could not be separated after {retries} attempts (min gap {min_gap:.3e}); retry with a different seed")]
    NumericDegeneracy { retries: usize, min_gap: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn mismatch(msg: impl Into<String>) -> Self {
        Error::Mismatch(msg.into())
    }
}
