use thiserror::Error;

/// Errors shared across the crate.
///
/// Mathematical *outcomes* (a failed linear-quotients run, an unsortable
/// set, a failing S-pair) are not errors; operations report those through
/// dedicated result enums. `Error` covers malformed input, violated
/// preconditions, and tripped resource guards.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("could not parse {0}")]
    Parse(String),

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("dual hypothesis violated: variables {missing:?} divide no generator")]
    HypothesisViolation { missing: Vec<usize> },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what} guard exceeded: needed more than {limit}")]
    GuardExceeded { what: &'static str, limit: usize },

    #[error("rewriting pass bound exceeded: result inconclusive")]
    Inconclusive,

    /// A statement the construction guarantees failed to verify.
    /// Reaching this variant means a bug, not bad input.
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
