// SPDX-License-Identifier: MIT OR Apache-2.0

//! Shared domain types: observation series and the generative configuration
//! of the mean-shift model.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An ordered sequence of at least two finite observations.
#[derive(Clone, Debug, PartialEq)]
pub struct Series(Vec<f64>);

impl Series {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::TooShort(values.len()));
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Series(values))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Applies `f` element-wise and revalidates the result.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Series> {
        Series::new(self.0.iter().map(|&v| f(v)).collect())
    }
}

impl TryFrom<Vec<f64>> for Series {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Series::new(values)
    }
}

impl AsRef<[f64]> for Series {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Innovation distribution of the AR(1) driver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InnovationLaw {
    /// Standard normal.
    Normal01,
    /// Student's t with one degree of freedom (standard Cauchy).
    StudentT1,
}

impl InnovationLaw {
    pub fn name(self) -> &'static str {
        match self {
            InnovationLaw::Normal01 => "normal",
            InnovationLaw::StudentT1 => "t1",
        }
    }
}

impl fmt::Display for InnovationLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InnovationLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "normal" | "normal01" => Ok(InnovationLaw::Normal01),
            "t1" | "studentt1" | "cauchy" => Ok(InnovationLaw::StudentT1),
            other => Err(Error::invalid(
                "innovation",
                format!("unknown law `{other}` (expected `normal` or `t1`)"),
            )),
        }
    }
}

/// Integer part `[n * fraction]` for `fraction` in (0, 1).
///
/// A product that lands within a few ulps of an integer is snapped to it, so
/// that decimal fractions such as `0.29 * 100` give 29 rather than 28.
pub fn floor_fraction(n: usize, fraction: f64) -> usize {
    let product = n as f64 * fraction;
    let nearest = product.round();
    if (product - nearest).abs() <= 4.0 * f64::EPSILON * product.abs().max(1.0) {
        nearest as usize
    } else {
        product.floor() as usize
    }
}

/// Positions (as fractions of `n`) whose observations are multiplied by
/// `factor`.
#[derive(Clone, Debug, PartialEq)]
pub struct OutlierPlan {
    pub positions: Vec<f64>,
    pub factor: f64,
}

impl OutlierPlan {
    /// Positions 0.2, 0.3, 0.6 and 0.8 scaled by 50.
    pub fn standard() -> Self {
        OutlierPlan {
            positions: vec![0.2, 0.3, 0.6, 0.8],
            factor: 50.0,
        }
    }

    /// 1-based indices `[f * n]`, in plan order.
    pub fn indices(&self, n: usize) -> Result<Vec<usize>> {
        if !self.factor.is_finite() {
            return Err(Error::invalid("factor", "must be finite"));
        }
        let mut out = Vec::with_capacity(self.positions.len());
        for &f in &self.positions {
            if !(f > 0.0 && f < 1.0) {
                return Err(Error::invalid(
                    "positions",
                    format!("fraction {f} outside (0, 1)"),
                ));
            }
            let index = floor_fraction(n, f);
            if index < 1 || index > n {
                return Err(Error::invalid(
                    "positions",
                    format!("fraction {f} maps to index {index}, outside 1..={n}"),
                ));
            }
            if out.contains(&index) {
                return Err(Error::OutlierCollision { index });
            }
            out.push(index);
        }
        Ok(out)
    }
}

/// Generative parameters of one simulation cell.
#[derive(Clone, Debug, PartialEq)]
pub struct ChangePointConfig {
    pub n: usize,
    pub theta: f64,
    pub delta: f64,
    pub mu: f64,
    pub rho: f64,
    pub innovation: InnovationLaw,
    pub outliers: Option<OutlierPlan>,
    pub burn_in: usize,
}

pub const DEFAULT_BURN_IN: usize = 100;

impl ChangePointConfig {
    /// AR(1) with `rho = 0.4`, normal innovations, `mu = 0`, no outliers.
    pub fn new(n: usize, theta: f64, delta: f64) -> Self {
        ChangePointConfig {
            n,
            theta,
            delta,
            mu: 0.0,
            rho: 0.4,
            innovation: InnovationLaw::Normal01,
            outliers: None,
            burn_in: DEFAULT_BURN_IN,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::TooShort(self.n));
        }
        if !(self.theta > 0.0 && self.theta < 1.0) {
            return Err(Error::invalid("theta", format!("{} outside (0, 1)", self.theta)));
        }
        let k_star = floor_fraction(self.n, self.theta);
        if k_star < 1 || k_star >= self.n {
            return Err(Error::invalid(
                "theta",
                format!("k* = {k_star} outside 1..{} for n = {}", self.n, self.n),
            ));
        }
        if !self.delta.is_finite() {
            return Err(Error::invalid("delta", "must be finite"));
        }
        if !self.mu.is_finite() {
            return Err(Error::invalid("mu", "must be finite"));
        }
        if !(self.rho.abs() < 1.0) {
            return Err(Error::invalid("rho", format!("|{}| must be < 1", self.rho)));
        }
        if let Some(plan) = &self.outliers {
            plan.indices(self.n)?;
        }
        Ok(())
    }

    /// The change-point index `k* = [n * theta]`.
    pub fn k_star(&self) -> usize {
        config_kstar(self)
    }
}

/// `k* = [n * theta]`, read as the integer part.
pub fn config_kstar(cfg: &ChangePointConfig) -> usize {
    floor_fraction(cfg.n, cfg.theta)
}
