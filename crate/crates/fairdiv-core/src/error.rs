use thiserror::Error;

/// Crate-wide error type.
///
/// The CLI maps these onto its exit-code contract: `Parse` -> 2,
/// `CapExceeded` -> 3, `Precondition`/`Unsupported` -> 4, `Internal` -> 5.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid value: {0}")]
    InvalidValue(String),

    #[error("invalid valuation: {0}")]
    InvalidValuation(String),

    #[error("invalid allocation: {0}")]
    InvalidAllocation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{what} exceeds cap: requested {requested}, limit {limit}")]
    CapExceeded {
        what: &'static str,
        requested: u64,
        limit: u64,
    },

    #[error("empty domain: {0}")]
    EmptyDomain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal invariant breached: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
