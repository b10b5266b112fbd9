use std::io;

use thiserror::Error;

/// Errors produced anywhere in the simulator.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configuration field failed validation.
    #[error("invalid `{field}`: {message}")]
    Validation { field: String, message: String },

    /// A configuration document could not be parsed.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// The collective decay matrix is not positive semidefinite.
    #[error("unphysical decay matrix: {0}")]
    Unphysical(String),

    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Validation { .. } | Error::Parse { .. } => 1,
            Error::Io(_) => 2,
            Error::Unphysical(_) => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
