use thiserror::Error;

/// Errors raised by the group calculus.
///
/// Consistency failures and lemma failures are report outcomes, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed arguments: wrong vector length, out-of-range exponent,
    /// subgroups of different groups, violated operation hypotheses.
    #[error("invalid input: {0}")]
    Input(String),

    /// Presentation text that does not follow the `pcgroup` grammar.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// The presented object is not a group of order p^n.
    #[error("inconsistent presentation: {0}")]
    Inconsistent(String),

    /// The requested enumeration exceeds the configured size guard.
    #[error("size guard exceeded: {what} has {order} elements, limit is {limit}")]
    SizeGuard {
        what: String,
        order: u128,
        limit: u64,
    },

    /// A construction was requested on a group outside its hypotheses.
    #[error("precondition not met: {0}")]
    Precondition(String),

    /// An internal postcondition failed. Always an implementation bug.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
