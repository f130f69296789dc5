// SPDX-License-Identifier: MIT OR Apache-2.0

//! Change-point location estimation for a single mean shift in a dependent
//! time series.
//!
//! Two estimators are provided over the split points `k = 1..n-1`:
//!
//! * the Wilcoxon-type estimator, the first maximiser of `|W_n(k)|` where
//!   `W_n(k) = sum_{i<=k} sum_{j>k} (1{x_i <= x_j} - 1/2)`;
//! * the CUSUM-type estimator, the first maximiser of
//!   `|sum_{j<=k} x_j - (k/n) sum_j x_j|`.
//!
//! Around them sit a seeded generator for AR(1) series with a mean shift and
//! optional outliers ([`datagen`]), a parallel Monte Carlo harness
//! ([`montecarlo`]), numerical checks of the Hoeffding decomposition of the
//! Wilcoxon statistic ([`theory`]) and the `cpwx` command-line front end
//! ([`cli`]).

#![forbid(unsafe_code)]
// Published coefficient tables are kept digit for digit, and `!(x > 0.0)`
// style guards are there to reject NaN.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod datagen;
mod error;
pub mod montecarlo;
pub mod scan;
pub mod series;
pub mod theory;

pub use error::{Error, Result};
pub use scan::{estimate_changepoint, EstimateResult, Method, ScanProfile, ScanValues};
pub use series::{ChangePointConfig, InnovationLaw, OutlierPlan, Series};
