// SPDX-License-Identifier: MIT OR Apache-2.0

//! Numerical checks of the analytic structure behind the Wilcoxon estimator:
//! Hoeffding components and `Theta_D`, the exact integer decomposition of
//! the shifted Wilcoxon profile, and NED constants with the summability
//! condition on them.

mod decompose;
mod dist;
mod hoeffding;
mod ned;
pub mod quadrature;

pub use decompose::{decompose_wilcoxon, shift_counts, DecompositionReport};
pub use dist::DistModel;
pub use hoeffding::{
    degenerate_g, hoeffding_h1, hoeffding_h1n, hoeffding_h2, hoeffding_h2n, mean_against,
    theta_delta, ShiftKernel, THETA,
};
pub use ned::{
    check_summability, ned_constants, Convergence, GeometricTail, LinearProcessSpec,
    SummabilityReport, SummabilityTail,
};
