//! Crate-wide error type.

/// Errors reported by the library.
///
/// Budget exhaustion during a search is deliberately *not* an `Error`: searches
/// return [`crate::search::Search::Exhausted`] so that "ran out of nodes" can
/// never be confused with a proved negative.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not square-free")]
    NotSquareFree(u64),

    #[error("modulus {n} out of range (need 2 <= N <= {bound})")]
    ModulusOutOfRange { n: u64, bound: u64 },

    #[error("{d} does not divide {n}")]
    InvalidDivisor { d: u64, n: u64 },

    #[error("operation requires a nonempty multiset")]
    EmptyMultiSet,

    #[error("multiplicity at element {element} exceeds the cap {cap}")]
    MultiplicityOverflow { element: u64, cap: u64 },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: u64, right: u64 },

    #[error("expected distinct primes, got {0}, {1}, {2}")]
    InvalidPrimes(u64, u64, u64),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Shorthand used at precondition checks.
    pub(crate) fn pre(msg: impl Into<String>) -> Error {
        Error::PreconditionViolated(msg.into())
    }
}
