use std::path::PathBuf;

use sst_core::json::JsonError;
use sst_core::notation::Diagnostic;
use sst_core::ParseError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {} parse error(s)", path.display(), errors.len())]
    Parse { path: PathBuf, errors: Vec<ParseError> },
    #[error("{}: {} invalid statement(s)", path.display(), diagnostics.len())]
    Invalid { path: PathBuf, diagnostics: Vec<Diagnostic> },
    #[error("{}: {source}", path.display())]
    Json { path: PathBuf, source: JsonError },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid { .. } => 1,
            CliError::Parse { .. } => 2,
            CliError::Json { source, .. } => match source {
                JsonError::Link { .. } => 1,
                _ => 2,
            },
            CliError::Io { .. } => 3,
            CliError::Usage(_) => 4,
        }
    }

    /// One line per problem, `file:line:column: message` where a location
    /// is known.
    pub fn lines(&self) -> Vec<String> {
        match self {
            CliError::Parse { path, errors } => errors
                .iter()
                .map(|e| format!("{}:{}:{}: parse error: {}", path.display(), e.line, e.column, e.message))
                .collect(),
            CliError::Invalid { path, diagnostics } => diagnostics
                .iter()
                .map(|d| format!("{}:{}:{}: error: {}", path.display(), d.line, d.column, d.message))
                .collect(),
            other => vec![format!("error: {other}")],
        }
    }
}
