//! Library behind the `obsent` binary: JSON problem ingestion, analysis
//! output assembly, randomized theorem sweeps, and the scenario catalog.

pub mod problem;
pub mod report;
pub mod scenarios;
pub mod sweep;

use serde::Serialize;

/// Process exit codes: validation failures exit 2, sweeps that found a
/// counterexample exit 3.
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_COUNTEREXAMPLE: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Core(obsent::Error),
    Parse(String),
    Io(String),
    UnknownScenario(String),
    Validation(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Parse(e) => write!(f, "invalid input JSON: {e}"),
            CliError::Io(e) => write!(f, "I/O error: {e}"),
            CliError::UnknownScenario(name) => write!(f, "unknown scenario: {name}"),
            CliError::Validation(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<obsent::Error> for CliError {
    fn from(e: obsent::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(_) => "core",
            CliError::Parse(_) => "parse",
            CliError::Io(_) => "io",
            CliError::UnknownScenario(_) => "unknown-scenario",
            CliError::Validation(_) => "validation",
        }
    }
}

/// Machine-readable error document written to stderr.
#[derive(Serialize)]
pub struct ErrorDocument<'a> {
    pub error: String,
    pub kind: &'a str,
}

impl CliError {
    pub fn to_document(&self) -> ErrorDocument<'_> {
        ErrorDocument {
            error: self.to_string(),
            kind: self.kind(),
        }
    }
}
