//! Error taxonomy.
//!
//! Three failure classes matter to callers and map onto distinct CLI exit
//! codes: input that could not be parsed, a computation we *refuse* to run
//! because a hypothesis of the underlying theorem fails, and internal
//! cross-check disagreements (which indicate a bug and are never silently
//! swallowed).

use thiserror::Error;

/// All errors produced by this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input file. `line` is 1-based.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Structurally invalid arguments (dimension mismatch, non-finite
    /// entries, ids out of range, ...).
    #[error("invalid input: {0}")]
    Input(String),

    /// A precondition of the requested bound/certificate does not hold.
    /// The message states the violated hypothesis.
    #[error("refused {what}: {hypothesis}")]
    Refusal {
        /// Operation that was refused.
        what: String,
        /// The hypothesis that failed, stated mathematically.
        hypothesis: String,
    },

    /// Instance exceeds a hard resource cap of an exact routine.
    #[error("{what} exceeds cap of {cap} (instance needs {needed})")]
    CapExceeded {
        what: String,
        cap: usize,
        needed: usize,
    },

    /// Two routes that must agree disagreed beyond tolerance. Always a bug.
    #[error("internal cross-check failed: {0}")]
    Inconsistency(String),
}

impl Error {
    pub(crate) fn refusal(what: impl Into<String>, hypothesis: impl Into<String>) -> Self {
        Error::Refusal {
            what: what.into(),
            hypothesis: hypothesis.into(),
        }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
