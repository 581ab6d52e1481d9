use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable contexts differ: {0}")]
    Context(String),

    #[error("series has constant term {0}, expected 1")]
    NonUnit(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("invalid fixed-point prefix: {0}")]
    InvalidPrefix(String),

    #[error("resource limit exceeded: {what} (limit {limit})")]
    ResourceLimit { what: String, limit: u64 },

    #[error("degenerate torus weights: {0}")]
    DegenerateWeights(String),

    #[error("denominator factor {0} has no z-dependence")]
    NotResidueIntegrable(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code for reporting.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Context(_) => "context_error",
            Error::NonUnit(_) => "non_unit",
            Error::Argument(_) => "argument_error",
            Error::InvalidPrefix(_) => "invalid_prefix",
            Error::ResourceLimit { .. } => "resource_limit",
            Error::DegenerateWeights(_) => "degenerate_weights",
            Error::NotResidueIntegrable(_) => "not_residue_integrable",
            Error::Internal(_) => "internal_error",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
