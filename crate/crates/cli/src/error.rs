use thiserror::Error;

use crate::parse::ParseError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] jetres_core::Error),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid job: {0}")]
    Job(String),
    #[error("{0}")]
    Io(String),
    #[error("truncation unstable: {0}")]
    Unstable(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Parse(e) => e.code(),
            CliError::Job(_) => "invalid_job",
            CliError::Io(_) => "io_error",
            CliError::Unstable(_) => "truncation_unstable",
        }
    }

    /// 2 for bad input, 3 for exceeded resource caps, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Job(_) => 2,
            CliError::Core(jetres_core::Error::ResourceLimit { .. }) => 3,
            CliError::Core(
                jetres_core::Error::Argument(_)
                | jetres_core::Error::InvalidPrefix(_)
                | jetres_core::Error::DegenerateWeights(_)
                | jetres_core::Error::NotResidueIntegrable(_)
                | jetres_core::Error::Context(_),
            ) => 2,
            _ => 1,
        }
    }
}
