// SPDX-License-Identifier: MIT OR Apache-2.0

//! Hoeffding components of the kernels `h(x, y) = 1{x <= y}` and
//! `h_D(x, y) = 1{y < x <= y + D}` under a continuous marginal `F`.

use super::dist::DistModel;
use super::quadrature::{integrate_pieces, Tolerance};
use crate::error::{Error, Result};

/// `E h(Y', Y'')` for independent copies of a continuous variable.
pub const THETA: f64 = 0.5;

/// `h_1(x) = 1/2 - F(x)`.
pub fn hoeffding_h1(x: f64, model: DistModel) -> f64 {
    0.5 - model.cdf(x)
}

/// `h_2(y) = F(y) - 1/2`.
pub fn hoeffding_h2(y: f64, model: DistModel) -> f64 {
    model.cdf(y) - 0.5
}

/// Degenerate remainder `g(x, y) = h(x, y) - h_1(x) - h_2(y) - 1/2`.
pub fn degenerate_g(x: f64, y: f64, model: DistModel) -> f64 {
    let h = if x <= y { 1.0 } else { 0.0 };
    h - hoeffding_h1(x, model) - hoeffding_h2(y, model) - THETA
}

/// `E f(Y)` for `Y ~ model`, integrated over `u = F(y)` on (0, 1).
///
/// `breakpoints` are points in `y` where `f` jumps or kinks.
pub fn mean_against(model: DistModel, f: impl Fn(f64) -> f64, breakpoints: &[f64]) -> Result<f64> {
    let mut points: Vec<f64> = breakpoints
        .iter()
        .map(|&b| model.cdf(b))
        .filter(|&u| u > 0.0 && u < 1.0)
        .collect();
    points.push(0.0);
    points.push(1.0);
    points.sort_by(f64::total_cmp);
    points.dedup();
    let r = integrate_pieces(|u| f(model.quantile(u)), &points, Tolerance::default())?;
    Ok(r.value)
}

/// `Theta_D = P(Y'' < Y' <= Y'' + D) = int (F(y + D) - F(y)) dF(y)`.
pub fn theta_delta(model: DistModel, delta: f64) -> Result<f64> {
    if !(delta >= 0.0) || !delta.is_finite() {
        return Err(Error::invalid("delta", format!("{delta} must be finite and >= 0")));
    }
    if delta == 0.0 {
        return Ok(0.0);
    }
    let kinks: Vec<f64> = model.kinks().iter().map(|k| k - delta).collect();
    mean_against(model, |y| model.cdf(y + delta) - model.cdf(y), &kinks)
}

/// Hoeffding components of the shifted kernel for a fixed `delta`, with
/// `Theta_D` evaluated once.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShiftKernel {
    pub model: DistModel,
    pub delta: f64,
    pub theta: f64,
}

impl ShiftKernel {
    pub fn new(model: DistModel, delta: f64) -> Result<Self> {
        Ok(ShiftKernel {
            model,
            delta,
            theta: theta_delta(model, delta)?,
        })
    }

    /// `h_D(x, y) = 1{y < x <= y + D}`.
    pub fn h(&self, x: f64, y: f64) -> f64 {
        if y < x && x <= y + self.delta {
            1.0
        } else {
            0.0
        }
    }

    /// `h_{1,D}(x) = F(x) - F(x - D) - Theta_D`.
    pub fn h1(&self, x: f64) -> f64 {
        self.model.cdf(x) - self.model.cdf(x - self.delta) - self.theta
    }

    /// `h_{2,D}(y) = F(y + D) - F(y) - Theta_D`.
    pub fn h2(&self, y: f64) -> f64 {
        self.model.cdf(y + self.delta) - self.model.cdf(y) - self.theta
    }

    pub fn g(&self, x: f64, y: f64) -> f64 {
        self.h(x, y) - self.h1(x) - self.h2(y) - self.theta
    }

    /// Points in `x` where `h1`, or `g(., y)` for the given `y`, is not smooth.
    pub fn x_breakpoints(&self, y: Option<f64>) -> Vec<f64> {
        let mut b: Vec<f64> = self
            .model
            .kinks()
            .iter()
            .flat_map(|&k| [k, k + self.delta])
            .collect();
        if let Some(y) = y {
            b.extend([y, y + self.delta]);
        }
        b
    }

    /// Points in `y` where `h2`, or `g(x, .)` for the given `x`, is not smooth.
    pub fn y_breakpoints(&self, x: Option<f64>) -> Vec<f64> {
        let mut b: Vec<f64> = self
            .model
            .kinks()
            .iter()
            .flat_map(|&k| [k, k - self.delta])
            .collect();
        if let Some(x) = x {
            b.extend([x - self.delta, x]);
        }
        b
    }
}

/// `h_{1,D}(x)`; builds the kernel (and its quadrature) on every call.
pub fn hoeffding_h1n(x: f64, model: DistModel, delta: f64) -> Result<f64> {
    Ok(ShiftKernel::new(model, delta)?.h1(x))
}

/// `h_{2,D}(y)`; builds the kernel (and its quadrature) on every call.
pub fn hoeffding_h2n(y: f64, model: DistModel, delta: f64) -> Result<f64> {
    Ok(ShiftKernel::new(model, delta)?.h2(y))
}
