//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by group, vector, action, and classification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An element does not belong to the group it was used with.
    #[error("invalid element {element} for {group}: {detail}")]
    InvalidElement {
        group: String,
        element: String,
        detail: String,
    },

    /// An argument lies outside an operation's documented domain.
    #[error("{op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// No curve with the requested discrete data exists.
    #[error("not realizable: {reason}")]
    NotRealizable { reason: String },

    /// Structurally valid input that fails a required precondition.
    #[error("rejected: {reason}")]
    Rejected { reason: String },

    /// An internal consistency check failed; this is a bug, not bad input.
    #[error("internal invariant violation: {detail}")]
    InvariantViolation { detail: String },

    /// Invalid run configuration.
    #[error("configuration error: {detail}")]
    Config { detail: String },

    /// Malformed textual input.
    #[error("cannot parse {input:?}: {detail}")]
    Parse { input: String, detail: String },
}

impl Error {
    /// Process exit code used by the command-line front end.
    ///
    /// Internal invariant violations map to 3; every other error is an
    /// input or environment problem and maps to 2. (Exit code 1 is reserved
    /// for verification diffs, which are reported as data, not as errors.)
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvariantViolation { .. } => 3,
            _ => 2,
        }
    }

    /// Shorthand for [`Error::InvariantViolation`].
    pub fn invariant(detail: impl Into<String>) -> Self {
        Error::InvariantViolation {
            detail: detail.into(),
        }
    }

    /// Shorthand for [`Error::Rejected`].
    pub fn rejected(reason: impl Into<String>) -> Self {
        Error::Rejected {
            reason: reason.into(),
        }
    }

    /// Shorthand for [`Error::Domain`].
    pub fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }
}
