use serde_json::json;

/// Failure of a run, classified by exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Schema(String),
    #[error("{0}")]
    Numeric(String),
    #[error("{0}")]
    Cap(String),
    #[error("{0}")]
    Io(String),
    /// Deliberate stop after checkpointing, used to exercise resume.
    #[error("halted after {done} replicas")]
    Halted { done: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Cap(_) => 4,
            CliError::Io(_) => 5,
            CliError::Halted { .. } => 6,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Schema(_) => "schema",
            CliError::Numeric(_) => "numeric",
            CliError::Cap(_) => "resource-cap",
            CliError::Io(_) => "io",
            CliError::Halted { .. } => "halted",
        }
    }

    /// One-line JSON error record.
    pub fn record(&self) -> String {
        json!({
            "error": {
                "kind": self.kind(),
                "exit_code": self.exit_code(),
                "message": self.to_string(),
            }
        })
        .to_string()
    }
}

impl From<nipoly::Error> for CliError {
    fn from(e: nipoly::Error) -> Self {
        match e {
            nipoly::Error::CapExceeded { .. } => CliError::Cap(e.to_string()),
            other => CliError::Numeric(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
