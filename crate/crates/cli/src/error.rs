//! Command errors mapped to process exit codes.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("insufficient horizon: {0}")]
    Horizon(String),
    #[error("oracle instability: {0}")]
    Oracle(String),
    #[error("threshold failure: {0}")]
    Threshold(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::Horizon(_) => 3,
            CliError::Oracle(_) => 4,
            CliError::Threshold(_) => 5,
        }
    }
}

impl From<pointwave::signal::SignalError> for CliError {
    fn from(e: pointwave::signal::SignalError) -> Self {
        CliError::Horizon(e.to_string())
    }
}

impl From<pointwave::models::ModelError> for CliError {
    fn from(e: pointwave::models::ModelError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<pointwave::fdtd::OracleError> for CliError {
    fn from(e: pointwave::fdtd::OracleError) -> Self {
        match e {
            pointwave::fdtd::OracleError::Unstable { .. } => CliError::Oracle(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<pointwave::compare::CompareError> for CliError {
    fn from(e: pointwave::compare::CompareError) -> Self {
        match e {
            pointwave::compare::CompareError::Oracle(o) => o.into(),
            pointwave::compare::CompareError::Horizon(h) => h.into(),
        }
    }
}
