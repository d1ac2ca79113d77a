use thiserror::Error;

/// Errors reported by the engine.
///
/// Variants split into two classes. Most describe rejected input or violated
/// preconditions. `Internal` is reserved for failures of identities that are
/// guaranteed to hold; hitting one always indicates a bug in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid segment [{begin},{end}]: begin may exceed end by at most 1")]
    InvalidSegment { begin: i32, end: i32 },

    #[error("not in Q(lambda,mu): lambda[{index}] = {lambda} exceeds mu[x({index})] + 1 = {mu_plus_one}")]
    QMembership {
        index: usize,
        lambda: i32,
        mu_plus_one: i32,
    },

    #[error("not a ladder: {0}")]
    NotALadder(String),

    #[error("not a regular pair: {0}")]
    NotRegularPair(String),

    #[error("oracle hypothesis violated: {0}")]
    OracleHypothesis(String),

    #[error("argument error: {0}")]
    Argument(String),

    #[error("size {n} exceeds the enumeration bound {bound}")]
    ResourceLimit { n: usize, bound: usize },

    #[error("word letter {0} out of range: letters must be positive")]
    LetterOutOfRange(i32),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("internal consistency failure (please report): {0}")]
    Internal(String),
}

impl Error {
    /// True for failures of identities the underlying theory guarantees.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }

    /// Exit code used by the command line interface: 2 for rejected input,
    /// 3 for internal consistency failures.
    pub fn exit_code(&self) -> i32 {
        if self.is_internal() {
            3
        } else {
            2
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
