use thiserror::Error;

/// Failures are split by exit code: parse errors (exit 2) mean the input
/// bytes or document fields are unusable; domain errors (exit 1) mean the
/// documents were well formed but the requested computation rejects them.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn parse(msg: impl Into<String>) -> CliError {
        CliError::Parse(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> CliError {
        CliError::Domain(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

// Core errors surface while operating on already-parsed documents, so they
// default to the domain class; the document layer wraps shape problems into
// `Parse` itself, with field context.
impl From<sublat_core::Error> for CliError {
    fn from(e: sublat_core::Error) -> CliError {
        CliError::Domain(e.to_string())
    }
}
