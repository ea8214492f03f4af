use thiserror::Error;

/// Exit status for a passing run.
pub const EXIT_OK: i32 = 0;
/// Exit status when a verification check fails.
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
/// Exit status for unreadable, malformed or invalid input.
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("ParseError at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("ValidationError in {object}: {}: {source}", source.kind())]
    Validation {
        object: String,
        source: sepmm_core::Error,
    },

    #[error("UnresolvedReference in {object}: no {section} named {name:?}")]
    UnresolvedReference {
        object: String,
        section: &'static str,
        name: String,
    },

    #[error("ValidationError in {object}: reference cycle")]
    Cycle { object: String },

    #[error("{}: {source}", source.kind())]
    Domain {
        #[from]
        source: sepmm_core::Error,
    },

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_INPUT_ERROR
    }

    pub(crate) fn validation(object: impl Into<String>, source: sepmm_core::Error) -> Self {
        CliError::Validation {
            object: object.into(),
            source,
        }
    }
}
