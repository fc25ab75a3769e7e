use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index vector is empty")]
    EmptyIndex,
    #[error("entry {value} at position {position} is not larger than the previous entry")]
    NotIncreasing { position: usize, value: i64 },
    #[error("entry {value} at position {position} lies outside [1, {n}]")]
    OutOfRange {
        position: usize,
        value: i64,
        n: usize,
    },
    #[error("shape mismatch: expected length {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("cell not contained in variety: j is not <= i componentwise")]
    NotContained,
    #[error("{0}")]
    Domain(String),
    #[error("route {route} is not applicable: {reason}")]
    RouteInapplicable { route: &'static str, reason: String },
    #[error("matrix order {order} exceeds the limit {limit}")]
    OrderGuard { order: usize, limit: usize },
    #[error("n = {n} exceeds the guard {limit}; pass --force to override")]
    SizeGuard { n: usize, limit: usize },
    /// An exact division left a remainder. On valid inputs this never
    /// happens, so it always indicates an arithmetic bug.
    #[error("internal error: inexact division in {context}")]
    InexactDivision { context: &'static str },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
