use std::fmt;

use qvariety::Error as CoreError;

/// A syntax or name error, located at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
    /// Tokens that would have been accepted at this point.
    pub expected: Vec<String>,
}

impl ParseError {
    pub fn new(line: usize, col: usize, message: impl Into<String>) -> ParseError {
        ParseError { line, col, message: message.into(), expected: Vec::new() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

/// Exit code classes of a failed script.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ErrorClass {
    Parse = 1,
    Capability = 2,
    Domain = 3,
    Internal = 4,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("line {line}, column {col}: {source}")]
    Core {
        line: usize,
        col: usize,
        #[source]
        source: CoreError,
    },
    #[error("line {line}, column {col}: {message}")]
    Domain { line: usize, col: usize, message: String },
}

impl CliError {
    pub fn class(&self) -> ErrorClass {
        match self {
            CliError::Parse(_) => ErrorClass::Parse,
            CliError::Domain { .. } => ErrorClass::Domain,
            CliError::Core { source, .. } => match source {
                CoreError::Capability(_) | CoreError::NoSplittingFound(_) | CoreError::InsufficientPrimes(_) => {
                    ErrorClass::Capability
                }
                CoreError::Invariant(_) => ErrorClass::Internal,
                _ => ErrorClass::Domain,
            },
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.class() as i32
    }

    pub fn kind(&self) -> &'static str {
        match self.class() {
            ErrorClass::Parse => "ParseError",
            ErrorClass::Capability => "CapabilityError",
            ErrorClass::Domain => "DomainError",
            ErrorClass::Internal => "InvariantViolation",
        }
    }
}
