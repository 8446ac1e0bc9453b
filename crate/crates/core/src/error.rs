use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("free group rank must be at least 2, got {0}")]
    InvalidRank(usize),

    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("resource cap exceeded: {what} needs {needed}, cap is {cap}")]
    ResourceCap {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("invalid beta vector: {0}")]
    InvalidBeta(String),

    #[error("element is not homogeneous of length 1")]
    NotLengthOne,

    #[error("point {t} lies outside the spectrum [-{a}, {a}]")]
    OutsideSpectrum { t: f64, a: f64 },

    #[error(
        "quadrature did not converge: last two estimates differ by {delta:e} at order {order}"
    )]
    NoConvergence { order: usize, delta: f64 },

    #[error("truncation order {order} leaves tail bound {tail_bound:e} above tolerance {tol:e}")]
    TruncationTooShort {
        order: usize,
        tail_bound: f64,
        tol: f64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Failures that mean "the machine gave up" rather than "an identity failed".
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::ResourceCap { .. }
                | Error::NoConvergence { .. }
                | Error::TruncationTooShort { .. }
        )
    }
}
