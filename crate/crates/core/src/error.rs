use alloc::string::String;

/// Errors reported by the core library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("point set is empty")]
    EmptySet,
    #[error("enumeration budget exceeded: {needed} items requested, limit is {limit}")]
    BudgetExceeded { needed: usize, limit: usize },
    #[error("order is not total: elements {0} and {1} are incomparable")]
    NotTotal(usize, usize),
    #[error("invalid partial order: {0}")]
    InvalidOrder(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("point does not belong to the ordered space")]
    NotInSpace,
    #[error("interpolation function does not reproduce its endpoints (error {0})")]
    EndpointMismatch(f64),
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("path jumps at t = {0}")]
    HasJumps(f64),
    #[error("time {0} is outside the path domain")]
    OutsideDomain(f64),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("paths do not share the required domain")]
    DomainMismatch,
    #[error("cannot parse split time {0:?}")]
    ParseSplitTime(String),
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
}

pub type Result<T> = core::result::Result<T, Error>;
