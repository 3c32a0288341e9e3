use thiserror::Error;

/// Errors raised by the verification library.
#[derive(Debug, Error)]
pub enum Error {
    /// An enclosure argument left the domain of the operation
    /// (zero in a divisor, negative radicand, non-positive logarithm argument).
    #[error("domain error: {0}")]
    Domain(String),

    /// A certified comparison stayed indeterminate up to the precision cap.
    #[error("precision exhausted: still indeterminate at {cap} bits ({what})")]
    PrecisionExhausted { cap: u32, what: String },

    /// Invalid argument to an exact routine (gcd condition, lemma domain, ...).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// Table index outside the computed range.
    #[error("index {index} out of range for table limit {limit}")]
    Index { index: usize, limit: usize },

    /// Bessel order other than 1 requested from the eta-quotient evaluator.
    #[error("unsupported Bessel order: {0}")]
    UnsupportedOrder(String),

    /// Substituting an odd power of a shifted argument.
    #[error("odd power {0} of a shifted argument cannot be substituted")]
    OddPower(i32),

    /// A symbolic expansion produced something other than what its construction guarantees.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("cache file: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
