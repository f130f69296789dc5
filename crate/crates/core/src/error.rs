// SPDX-License-Identifier: MIT OR Apache-2.0

use thiserror::Error;

/// Errors raised by the estimators, generators and theory checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series must contain at least 2 observations, got {0}")]
    TooShort(usize),
    #[error("series is too long for exact doubled-integer scans: n = {0} exceeds 2^31")]
    TooLong(usize),
    #[error("non-finite value {value} at position {index}")]
    NonFinite { index: usize, value: f64 },
    #[error("empty input")]
    Empty,
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("outlier positions collide at index {index}")]
    OutlierCollision { index: usize },
    #[error("quadrature did not converge: error estimate {estimate:e} after {intervals} intervals")]
    QuadratureFailed { estimate: f64, intervals: usize },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
