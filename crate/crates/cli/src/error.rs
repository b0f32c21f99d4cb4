use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] apartment_core::Error),

    #[error("{path}:{line}: {message}")]
    Parse { path: String, line: usize, message: String },

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{0}")]
    Invalid(String),

    #[error("stage {stage}: {source}")]
    Stage { stage: &'static str, source: Box<CliError> },
}

impl CliError {
    pub fn parse(path: &str, line: usize, message: impl Into<String>) -> Self {
        CliError::Parse { path: path.to_string(), line, message: message.into() }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn in_stage(self, stage: &'static str) -> Self {
        CliError::Stage { stage, source: Box::new(self) }
    }

    /// 3 for resource-guard aborts, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_resource_guard() => 3,
            CliError::Stage { source, .. } => source.exit_code(),
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
