use thiserror::Error;

/// Errors raised by the computational modules.
///
/// Every variant that concerns user input carries the name of the offending
/// field so front ends can report it verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{field}: dimension mismatch (expected {expected}, found {found})")]
    DimensionMismatch {
        field: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{field}: {reason}")]
    InvalidInput { field: &'static str, reason: String },
    #[error("inconsistent topological input: {0}")]
    InconsistentTopology(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidInput {
            field,
            reason: reason.into(),
        }
    }
}
