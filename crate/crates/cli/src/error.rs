use ramify_core::galois::GaloisError;
use ramify_core::herbrand::HerbrandError;
use ramify_core::local_field::LocalFieldError;
use ramify_core::numeric::{ParseExtRatError, PiecewiseError};
use ramify_core::ramification::RamificationError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    /// Malformed JSON, unknown or missing fields, bad literals.
    #[error("schema error: {0}")]
    Schema(String),
    /// A value could not be certified at the working precision.
    #[error("{0}")]
    Precision(String),
    /// Well-formed input that violates a mathematical precondition.
    #[error("{0}")]
    Semantic(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) => 1,
            CliError::Precision(_) => 2,
            CliError::Semantic(_) => 3,
        }
    }

    pub fn schema(msg: impl Into<String>) -> Self {
        CliError::Schema(msg.into())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Schema(e.to_string())
    }
}

impl From<ParseExtRatError> for CliError {
    fn from(e: ParseExtRatError) -> Self {
        CliError::Schema(e.to_string())
    }
}

impl From<LocalFieldError> for CliError {
    fn from(e: LocalFieldError) -> Self {
        match e {
            LocalFieldError::PrecisionLimited { .. } => CliError::Precision(e.to_string()),
            _ => CliError::Semantic(e.to_string()),
        }
    }
}

impl From<HerbrandError> for CliError {
    fn from(e: HerbrandError) -> Self {
        CliError::Semantic(e.to_string())
    }
}

impl From<RamificationError> for CliError {
    fn from(e: RamificationError) -> Self {
        CliError::Semantic(e.to_string())
    }
}

impl From<GaloisError> for CliError {
    fn from(e: GaloisError) -> Self {
        CliError::Semantic(e.to_string())
    }
}

impl From<PiecewiseError> for CliError {
    fn from(e: PiecewiseError) -> Self {
        CliError::Semantic(e.to_string())
    }
}
