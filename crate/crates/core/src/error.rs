use thiserror::Error;

/// Everything that can go wrong while evaluating or certifying a bound.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the range where the formula or lemma applies.
    #[error("domain error: {0}")]
    Domain(String),

    /// A query past the end of a precomputed table.
    #[error("range error: {0}")]
    Range(String),

    /// Requested allocation exceeds the configured budget.
    #[error("resource error: {0}")]
    Resource(String),

    /// An iterative method failed to converge.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// An internal consistency check (bracket, sign change) did not hold.
    #[error("consistency error: {0}")]
    Consistency(String),

    /// A bound could not be certified, so no constants are emitted.
    #[error("certification failed: {0}")]
    Certification(String),

    /// The density table file is malformed or violates its invariants.
    #[error("density table: {0}")]
    Table(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
