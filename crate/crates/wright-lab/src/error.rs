//! Crate-wide error type.

/// Errors produced by series evaluation, operator construction and the
/// audit machinery.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Input outside a function's domain (negative argument, β out of range, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The successive-term ratio never fell below 1/2 within the iteration cap.
    #[error("series did not converge: {0}")]
    NonConvergence(String),

    /// The function value exceeds the f64 range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// A computed quantity contradicts its own truncation certificate.
    #[error("numeric integrity: {0}")]
    Integrity(String),

    /// Moment order outside the supported 0..=4 range.
    #[error("unsupported order {0}: supported orders are 0..=4")]
    UnsupportedOrder(usize),

    /// A claim id that is not in the registered set.
    #[error("unknown claim id: {0}")]
    UnknownClaim(String),

    /// A function label that is not in the registered corpus.
    #[error("unknown function label: {0}")]
    UnknownFunction(String),

    /// Invalid grid or schedule (empty list, non-increasing schedule, ...).
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// Declared horizon too small for a built-in matrix row.
    #[error("insufficient horizon: {0}")]
    InsufficientHorizon(String),
}

pub type Result<T> = std::result::Result<T, Error>;
