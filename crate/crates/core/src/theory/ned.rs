// SPDX-License-Identifier: MIT OR Apache-2.0

//! L1 near-epoch-dependence constants of linear processes and the
//! summability check `sum_k k^2 (beta_k + sqrt(a_k)) < infinity`.

use crate::error::{Error, Result};

/// `psi_j = scale * ratio^(j - start)` for `j >= start`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeometricTail {
    pub start: usize,
    pub scale: f64,
    pub ratio: f64,
}

impl GeometricTail {
    /// `sum_{j >= from} |psi_j|`, for `from >= start`.
    fn abs_sum_from(&self, from: usize) -> f64 {
        let r = self.ratio.abs();
        self.scale.abs() * r.powi((from - self.start) as i32) / (1.0 - r)
    }
}

/// Coefficients of `Y_t = sum_j psi_j Z_{t-j}`: an explicit prefix
/// `psi_0..psi_{m-1}` followed by an optional geometric tail starting at
/// `j >= m`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProcessSpec {
    pub psi: Vec<f64>,
    pub tail: Option<GeometricTail>,
    /// `E|Z_1|`.
    pub abs_mean_z: f64,
}

impl LinearProcessSpec {
    /// Causal AR(1): `psi_j = rho^j`.
    pub fn ar1(rho: f64, abs_mean_z: f64) -> Self {
        LinearProcessSpec {
            psi: Vec::new(),
            tail: Some(GeometricTail {
                start: 0,
                scale: 1.0,
                ratio: rho,
            }),
            abs_mean_z,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.abs_mean_z >= 0.0) || !self.abs_mean_z.is_finite() {
            return Err(Error::invalid("abs_mean_z", "must be finite and >= 0"));
        }
        if self.psi.iter().any(|p| !p.is_finite()) {
            return Err(Error::invalid("psi", "coefficients must be finite"));
        }
        if let Some(t) = &self.tail {
            if !(t.ratio.abs() < 1.0) || !t.scale.is_finite() {
                return Err(Error::invalid(
                    "tail",
                    format!("geometric ratio {} is not summable", t.ratio),
                ));
            }
            if t.start < self.psi.len() {
                return Err(Error::invalid("tail", "tail overlaps the explicit prefix"));
            }
        }
        Ok(())
    }

    /// `sum_{j > k} |psi_j|`.
    fn abs_tail_after(&self, k: usize) -> f64 {
        let from = k + 1;
        let prefix: f64 = self.psi.iter().skip(from).map(|p| p.abs()).sum();
        let tail = match &self.tail {
            Some(t) => t.abs_sum_from(from.max(t.start)),
            None => 0.0,
        };
        prefix + tail
    }
}

/// `a_k = 2 E|Z_1| sum_{j > k} |psi_j|` for `k = 0..=k_max`.
pub fn ned_constants(spec: &LinearProcessSpec, k_max: usize) -> Result<Vec<f64>> {
    spec.validate()?;
    Ok((0..=k_max)
        .map(|k| 2.0 * spec.abs_mean_z * spec.abs_tail_after(k))
        .collect())
}

/// Geometric envelopes `a_k <= a_scale a_ratio^k`, `beta_k <= beta_scale
/// beta_ratio^k` assumed for `k > k_max`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SummabilityTail {
    pub a_scale: f64,
    pub a_ratio: f64,
    pub beta_scale: f64,
    pub beta_ratio: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convergence {
    Converges,
    Diverges,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SummabilityReport {
    /// `sum_{k=1}^{k_max} k^2 (beta_k + sqrt(a_k))`.
    pub partial_sum: f64,
    /// Closed-form bound on the remainder, when a convergent envelope is given.
    pub tail_bound: Option<f64>,
    pub verdict: Convergence,
}

/// `sum_{k > m} k^2 r^k` for `0 <= r < 1`.
fn k2_geometric_tail(r: f64, m: usize) -> f64 {
    if r == 0.0 {
        return 0.0;
    }
    let s = (m + 1) as f64;
    let q = 1.0 - r;
    r.powi(m as i32 + 1) * (s * s / q + 2.0 * s * r / (q * q) + r * (1.0 + r) / (q * q * q))
}

/// Partial sum of `k^2 (beta_k + sqrt(a_k))` over `k = 1..=k_max` plus a
/// verdict.
///
/// `a` and `beta` are indexed from `k = 0`. A geometric envelope with ratios
/// below one certifies convergence. Without one, the series is declared
/// divergent when every term in the upper half of the range dominates the
/// harmonic minorant `1/k`; otherwise the verdict is unknown.
pub fn check_summability(
    a: &[f64],
    beta: &[f64],
    k_max: usize,
    tail: Option<SummabilityTail>,
) -> Result<SummabilityReport> {
    if a.len() <= k_max || beta.len() <= k_max {
        return Err(Error::invalid(
            "k_max",
            format!("sequences must hold indices 0..={k_max}"),
        ));
    }
    for (name, seq) in [("a", a), ("beta", beta)] {
        if let Some(v) = seq[..=k_max].iter().find(|v| !(**v >= 0.0) || !v.is_finite()) {
            return Err(Error::invalid(name, format!("entry {v} is not a finite nonnegative value")));
        }
    }
    let terms: Vec<f64> = (1..=k_max)
        .map(|k| (k * k) as f64 * (beta[k] + a[k].sqrt()))
        .collect();
    let partial_sum = terms.iter().sum();

    let tail_bound = tail.and_then(|t| {
        let valid = [t.a_scale, t.beta_scale].iter().all(|s| *s >= 0.0 && s.is_finite())
            && (0.0..1.0).contains(&t.a_ratio)
            && (0.0..1.0).contains(&t.beta_ratio);
        valid.then(|| {
            t.beta_scale * k2_geometric_tail(t.beta_ratio, k_max)
                + t.a_scale.sqrt() * k2_geometric_tail(t.a_ratio.sqrt(), k_max)
        })
    });

    let verdict = if tail_bound.is_some() {
        Convergence::Converges
    } else {
        let lower = k_max.div_ceil(2).max(1);
        let dominates = k_max >= 2
            && (lower..=k_max).all(|k| terms[k - 1] * k as f64 >= 1.0);
        if dominates {
            Convergence::Diverges
        } else {
            Convergence::Unknown
        }
    };
    Ok(SummabilityReport {
        partial_sum,
        tail_bound,
        verdict,
    })
}
