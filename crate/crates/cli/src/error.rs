use std::fmt;

use dicelab_core::clt::CltError;
use dicelab_core::dsl::{EvalError, ParseError};
use dicelab_core::space::{DieError, SpaceError};
use dicelab_core::stats::StatsError;

/// Failure of one command, carrying the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, expressions or die specs. Exit code 2.
    Usage(String),
    /// An enumeration or listing cap refused the request. Exit code 3.
    Cap(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Cap(_) => 3,
        }
    }

    /// Syntax error with the offending source and a caret under the position.
    pub fn parse(flag: &str, src: &str, err: &ParseError) -> Self {
        let pad: String = " ".repeat(err.position);
        CliError::Usage(format!("{flag}: {err}\n  {src}\n  {pad}^"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Cap(m) => f.write_str(m),
        }
    }
}

impl From<StatsError> for CliError {
    fn from(e: StatsError) -> Self {
        match e {
            StatsError::Space(s) => s.into(),
            StatsError::ListingCap { .. } => CliError::Cap(e.to_string()),
            StatsError::Eval(e) => e.into(),
        }
    }
}

impl From<SpaceError> for CliError {
    fn from(e: SpaceError) -> Self {
        match e {
            SpaceError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            SpaceError::NoDice => CliError::Usage(e.to_string()),
        }
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<DieError> for CliError {
    fn from(e: DieError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<CltError> for CliError {
    fn from(e: CltError) -> Self {
        CliError::Usage(e.to_string())
    }
}
