use monopole_core::Error as CoreError;
use serde::Serialize;
use thiserror::Error;

/// Conditions that end a run; each maps to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input: exit code 2, with the offending field.
    #[error("invalid input at `{field}`: {message}")]
    Validation { field: String, message: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }

    /// Core errors that carry their own field keep it.
    pub fn from_core(e: CoreError) -> Self {
        Self::from_core_at(e, "<input>")
    }

    /// Like [`CliError::from_core`], naming `field` for errors that do not
    /// carry one.
    pub fn from_core_at(e: CoreError, field: &str) -> Self {
        let message = e.to_string();
        let field = match e {
            CoreError::DimensionMismatch { field, .. } | CoreError::InvalidInput { field, .. } => field.to_string(),
            CoreError::InconsistentTopology(_) | CoreError::Precondition(_) => field.to_string(),
        };
        CliError::Validation { field, message }
    }

    pub fn record(&self) -> ErrorRecord {
        match self {
            CliError::Validation { field, message } => ErrorRecord {
                kind: "validation",
                field: Some(field.clone()),
                message: message.clone(),
            },
            CliError::Io { path, message } => ErrorRecord {
                kind: "io",
                field: Some("--input".into()),
                message: format!("{path}: {message}"),
            },
            CliError::Usage(message) => ErrorRecord { kind: "usage", field: None, message: message.clone() },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ErrorRecord {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub message: String,
}
