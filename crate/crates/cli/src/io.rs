//! Exit codes, error plumbing and file helpers.

use std::fmt;
use std::fs;
use std::path::Path;

use sfvs_core::{ModelError, ParseError, ReductionError, SolveError};

pub const EXIT_FORMAT: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub error: anyhow::Error,
}

impl CliError {
    pub fn invalid(msg: impl fmt::Display) -> Self {
        CliError { code: EXIT_INVALID, error: anyhow::anyhow!("{msg}") }
    }

    pub fn format(msg: impl fmt::Display) -> Self {
        CliError { code: EXIT_FORMAT, error: anyhow::anyhow!("{msg}") }
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError { code: EXIT_FORMAT, error: e.into() }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        CliError { code: EXIT_INVALID, error: e.into() }
    }
}

impl From<ReductionError> for CliError {
    fn from(e: ReductionError) -> Self {
        CliError { code: EXIT_INVALID, error: e.into() }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        let code = match e {
            SolveError::Resource { .. } | SolveError::OracleTimeout(_) => EXIT_RESOURCE,
            SolveError::Internal(_) => EXIT_FORMAT,
            _ => EXIT_INVALID,
        };
        CliError { code, error: e.into() }
    }
}

/// Read a file, with the path in the error.
pub fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::format(format!("cannot read {}: {e}", path.display())))
}

/// Parse with the path in the error.
pub fn parse_file<T, E: Into<CliError>>(path: &Path, parse: impl FnOnce(&str) -> Result<T, E>) -> CliResult<T> {
    let text = read(path)?;
    parse(&text).map_err(|e| {
        let mut e = e.into();
        e.error = e.error.context(path.display().to_string());
        e
    })
}

pub fn write(path: &Path, text: &str) -> CliResult {
    fs::write(path, text).map_err(|e| CliError::format(format!("cannot write {}: {e}", path.display())))
}

/// Comma-separated list; the empty string is the empty list.
pub fn parse_list<T: std::str::FromStr>(s: &str) -> CliResult<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::format(format!("bad list entry '{t}'"))))
        .collect()
}
