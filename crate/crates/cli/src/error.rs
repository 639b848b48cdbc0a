use std::process::ExitCode;

use thiserror::Error;
use tvs_core::error::{ConstructionError, GeneratorError, LabelingError, SolverError};
use tvs_core::{ClassifyError, ParseError};

/// A failed command, carrying the exit status it maps to.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("construction infeasible: {0}")]
    Infeasible(String),
    #[error("limit exceeded: {0}")]
    Limit(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Input(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::Limit(_) => 4,
        })
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<LabelingError> for CliError {
    fn from(e: LabelingError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<GeneratorError> for CliError {
    fn from(e: GeneratorError) -> Self {
        match e {
            GeneratorError::RetryBudget(_) => CliError::Limit(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::OutOfScope(_) => CliError::Input(e.to_string()),
            ConstructionError::Infeasible { .. } => CliError::Infeasible(e.to_string()),
        }
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        CliError::Limit(e.to_string())
    }
}
