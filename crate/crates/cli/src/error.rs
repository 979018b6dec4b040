use thiserror::Error;

/// CLI failures, each tied to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("unsupported model: {0}")]
    Unsupported(String),
    #[error("invariant check failed: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Io { .. } => 2,
            CliError::Validation(_) => 3,
            CliError::Unsupported(_) => 4,
            CliError::Invariant(_) => 1,
        }
    }

    pub fn in_motive(self, name: &str) -> Self {
        match self {
            CliError::Validation(m) => CliError::Validation(format!("motive `{name}`: {m}")),
            CliError::Unsupported(m) => CliError::Unsupported(format!("motive `{name}`: {m}")),
            other => other,
        }
    }
}

impl From<motcalc_core::Error> for CliError {
    fn from(e: motcalc_core::Error) -> Self {
        match e {
            motcalc_core::Error::Unsupported(m) => CliError::Unsupported(m),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
