use thiserror::Error;

/// Errors produced by the circle, sequence and analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("points coincide: chord distance is zero")]
    CoincidentPoints,
    #[error("kernel is infinite at coincident points")]
    InfiniteKernel,
    #[error("potential is infinite: evaluation point coincides with configuration point {index}")]
    InfinitePotential { index: usize },
    #[error("energy is infinite: points {first} and {second} coincide")]
    InfiniteEnergy { first: usize, second: usize },
    #[error("log-product is -inf: evaluation point coincides with configuration point {index}")]
    NegativeInfiniteLog { index: usize },
    #[error("configuration contains duplicate point at index {index}")]
    DuplicatePoint { index: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("degenerate case: {0}")]
    Degenerate(String),
    #[error("regime mismatch: {0}")]
    RegimeMismatch(String),
    #[error("compute budget exceeded: {requested} > {limit}")]
    Budget { requested: u64, limit: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
