use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}, column {column}{}: {message}", key.as_ref().map(|k| format!(" (key `{k}`)")).unwrap_or_default())]
    Syntax { line: usize, column: usize, key: Option<String>, message: String },
    #[error("{context}: {source}")]
    Semantic { context: String, source: brauer_core::Error },
    #[error("{0}")]
    Core(#[from] brauer_core::Error),
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}, line {line}: {message}", path.display())]
    File { path: PathBuf, line: usize, message: String },
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
}

impl CliError {
    /// Stable code for machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Syntax { .. } => "syntax",
            CliError::Semantic { source, .. } => source.code(),
            CliError::Core(e) => e.code(),
            CliError::Io { .. } => "io",
            CliError::File { .. } => "file-format",
            CliError::OracleMismatch(_) => "oracle-mismatch",
        }
    }
}
