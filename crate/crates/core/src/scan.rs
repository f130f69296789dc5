// SPDX-License-Identifier: MIT OR Apache-2.0

//! Scan profiles over all split points and first-maximum change-point
//! estimators.
//!
//! The Wilcoxon profile is kept as exact doubled integers
//! `2 W_n(k) = 2 #{(i, j): i <= k < j, x_i <= x_j} - k (n - k)`, so the
//! argmax and its tie-break never depend on rounding.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::series::Series;

/// Largest supported series length; keeps `k (n - k)` well inside `i64`.
pub const MAX_LEN: usize = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Wilcoxon,
    Cusum,
}

impl Method {
    pub const ALL: [Method; 2] = [Method::Wilcoxon, Method::Cusum];

    pub fn name(self) -> &'static str {
        match self {
            Method::Wilcoxon => "wilcoxon",
            Method::Cusum => "cusum",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "wilcoxon" | "w" => Ok(Method::Wilcoxon),
            "cusum" | "c" => Ok(Method::Cusum),
            other => Err(Error::invalid(
                "method",
                format!("unknown method `{other}` (expected `wilcoxon` or `cusum`)"),
            )),
        }
    }
}

/// Per-split statistic values, `values[k - 1]` for `k = 1..n-1`.
#[derive(Clone, Debug, PartialEq)]
pub enum ScanValues {
    /// `2 W_n(k)` as exact integers.
    WilcoxonDoubled(Vec<i64>),
    /// `D_k = S_k - (k / n) S_n`.
    Cusum(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanProfile {
    pub n: usize,
    pub values: ScanValues,
}

impl ScanProfile {
    pub fn method(&self) -> Method {
        match self.values {
            ScanValues::WilcoxonDoubled(_) => Method::Wilcoxon,
            ScanValues::Cusum(_) => Method::Cusum,
        }
    }

    pub fn wilcoxon_doubled(&self) -> Option<&[i64]> {
        match &self.values {
            ScanValues::WilcoxonDoubled(v) => Some(v),
            ScanValues::Cusum(_) => None,
        }
    }

    pub fn cusum_values(&self) -> Option<&[f64]> {
        match &self.values {
            ScanValues::Cusum(v) => Some(v),
            ScanValues::WilcoxonDoubled(_) => None,
        }
    }

    /// Statistic at split `k` on the natural scale (`W_n(k)` or `D_k`).
    pub fn statistic(&self, k: usize) -> f64 {
        match &self.values {
            ScanValues::WilcoxonDoubled(v) => v[k - 1] as f64 / 2.0,
            ScanValues::Cusum(v) => v[k - 1],
        }
    }

    /// First maximiser of the absolute statistic (1-based split index).
    pub fn argmax(&self) -> usize {
        let k = match &self.values {
            ScanValues::WilcoxonDoubled(v) => argmax_first_abs(v),
            ScanValues::Cusum(v) => argmax_first_abs(v),
        };
        k.expect("profiles always hold n - 1 >= 1 values")
    }
}

/// Result of one change-point estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct EstimateResult {
    pub method: Method,
    pub n: usize,
    pub k_hat: usize,
    pub theta_hat: f64,
    pub max_abs_value: f64,
}

/// Values whose absolute magnitude can be compared for the argmax.
pub trait Magnitude: Copy {
    fn cmp_magnitude(&self, other: &Self) -> Ordering;
}

impl Magnitude for i64 {
    fn cmp_magnitude(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
}

impl Magnitude for f64 {
    fn cmp_magnitude(&self, other: &Self) -> Ordering {
        self.abs().total_cmp(&other.abs())
    }
}

/// Smallest 1-based index attaining the maximum of `|values|`.
pub fn argmax_first_abs<T: Magnitude>(values: &[T]) -> Result<usize> {
    let (first, rest) = values.split_first().ok_or(Error::Empty)?;
    let mut best = 0usize;
    let mut best_value = *first;
    for (offset, v) in rest.iter().enumerate() {
        // strictly greater only: ties stay with the earlier index
        if v.cmp_magnitude(&best_value) == Ordering::Greater {
            best = offset + 1;
            best_value = *v;
        }
    }
    Ok(best + 1)
}

fn check_len(n: usize) -> Result<()> {
    if n > MAX_LEN {
        return Err(Error::TooLong(n));
    }
    Ok(())
}

/// Converts the pair counts `P(k)` into `2 W_n(k) = 2 P(k) - k (n - k)`.
fn doubled_from_counts(n: usize, counts: impl Iterator<Item = i64>) -> Vec<i64> {
    let n = n as i64;
    counts
        .enumerate()
        .map(|(idx, p)| {
            let k = idx as i64 + 1;
            2 * p - k * (n - k)
        })
        .collect()
}

/// Wilcoxon scan in `O(n log n)` via rank counting in a Fenwick tree.
///
/// Bit-identical to [`wilcoxon_scan_quadratic`] and [`wilcoxon_scan_naive`].
pub fn wilcoxon_scan(x: &Series) -> Result<ScanProfile> {
    let xs = x.as_slice();
    let n = xs.len();
    check_len(n)?;

    // Dense ranks with ties sharing a rank; -0.0 and 0.0 compare equal.
    let mut sorted: Vec<f64> = xs.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("series values are finite"));
    sorted.dedup_by(|a, b| a == b);
    let rank = |v: f64| -> usize {
        sorted
            .binary_search_by(|probe| probe.partial_cmp(&v).expect("finite"))
            .expect("every value is present in the rank table")
    };
    let ranks: Vec<usize> = xs.iter().map(|&v| rank(v)).collect();
    let m = sorted.len();

    // at_least[r] = #{j: rank_j >= r} over the whole series.
    let mut at_least = vec![0i64; m + 1];
    for &r in &ranks {
        at_least[r] += 1;
    }
    for r in (0..m).rev() {
        at_least[r] += at_least[r + 1];
    }

    let mut left = Fenwick::new(m);
    let mut pairs = 0i64;
    let mut counts = Vec::with_capacity(n - 1);
    for (pos, &r) in ranks.iter().enumerate().take(n - 1) {
        // Move x_{pos+1} (1-based) from the right block to the left block.
        let left_le = left.prefix(r); // #{i <= k: x_i <= x_{k+1}}
        let left_ge = pos as i64 - left.prefix(r.wrapping_sub(1)); // #{i <= k: x_i >= x_{k+1}}
        let right_ge = at_least[r] - left_ge - 1; // #{j > k+1: x_j >= x_{k+1}}
        pairs += right_ge - left_le;
        left.add(r);
        counts.push(pairs);
    }
    Ok(ScanProfile {
        n,
        values: ScanValues::WilcoxonDoubled(doubled_from_counts(n, counts.into_iter())),
    })
}

/// Wilcoxon scan by the `O(n^2)` incremental update: moving `x_{k+1}` into
/// the left block adds `#{j > k+1: x_{k+1} <= x_j}` and removes
/// `#{i <= k: x_i <= x_{k+1}}`.
pub fn wilcoxon_scan_quadratic(x: &Series) -> Result<ScanProfile> {
    let xs = x.as_slice();
    let n = xs.len();
    check_len(n)?;
    let mut pairs = 0i64;
    let mut counts = Vec::with_capacity(n - 1);
    for k in 0..n - 1 {
        let v = xs[k];
        let gained = xs[k + 1..].iter().filter(|&&xj| v <= xj).count() as i64;
        let lost = xs[..k].iter().filter(|&&xi| xi <= v).count() as i64;
        pairs += gained - lost;
        counts.push(pairs);
    }
    Ok(ScanProfile {
        n,
        values: ScanValues::WilcoxonDoubled(doubled_from_counts(n, counts.into_iter())),
    })
}

/// Literal double sum for every split. `O(n^3)`; intended as a test oracle.
pub fn wilcoxon_scan_naive(x: &Series) -> Result<ScanProfile> {
    let xs = x.as_slice();
    let n = xs.len();
    check_len(n)?;
    let values = (1..n)
        .map(|k| {
            let mut doubled = 0i64;
            for xi in &xs[..k] {
                for xj in &xs[k..] {
                    doubled += if xi <= xj { 1 } else { -1 };
                }
            }
            doubled
        })
        .collect();
    Ok(ScanProfile {
        n,
        values: ScanValues::WilcoxonDoubled(values),
    })
}

/// CUSUM scan `D_k = (n S_k - k S_n) / n` from compensated prefix sums.
pub fn cusum_scan(x: &Series) -> Result<ScanProfile> {
    let xs = x.as_slice();
    let n = xs.len();
    let prefix = compensated_prefix_sums(xs);
    let total = prefix[n - 1];
    let nf = n as f64;
    let values = (1..n)
        .map(|k| {
            let d = (nf * prefix[k - 1] - k as f64 * total) / nf;
            d + 0.0 // normalise -0.0
        })
        .collect();
    Ok(ScanProfile {
        n,
        values: ScanValues::Cusum(values),
    })
}

/// Neumaier-compensated running sums `S_1..S_n`.
fn compensated_prefix_sums(xs: &[f64]) -> Vec<f64> {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    xs.iter()
        .map(|&v| {
            let t = sum + v;
            if sum.abs() >= v.abs() {
                comp += (sum - t) + v;
            } else {
                comp += (v - t) + sum;
            }
            sum = t;
            sum + comp
        })
        .collect()
}

pub fn scan(x: &Series, method: Method) -> Result<ScanProfile> {
    match method {
        Method::Wilcoxon => wilcoxon_scan(x),
        Method::Cusum => cusum_scan(x),
    }
}

/// Runs the scan for `method` and returns the first maximiser of the
/// absolute profile together with `theta_hat = k_hat / n`.
pub fn estimate_changepoint(x: &Series, method: Method) -> Result<EstimateResult> {
    let profile = scan(x, method)?;
    Ok(estimate_from_profile(&profile))
}

pub fn estimate_from_profile(profile: &ScanProfile) -> EstimateResult {
    let k_hat = profile.argmax();
    EstimateResult {
        method: profile.method(),
        n: profile.n,
        k_hat,
        theta_hat: k_hat as f64 / profile.n as f64,
        max_abs_value: profile.statistic(k_hat).abs(),
    }
}

/// Counting Fenwick tree over dense ranks `0..m`.
struct Fenwick {
    tree: Vec<i64>,
}

impl Fenwick {
    fn new(m: usize) -> Self {
        Fenwick {
            tree: vec![0; m + 1],
        }
    }

    fn add(&mut self, rank: usize) {
        let mut i = rank + 1;
        while i < self.tree.len() {
            self.tree[i] += 1;
            i += i & i.wrapping_neg();
        }
    }

    /// Count of inserted ranks `<= rank`; `usize::MAX` means "below 0".
    fn prefix(&self, rank: usize) -> i64 {
        let mut i = rank.wrapping_add(1);
        let mut acc = 0;
        while i > 0 {
            acc += self.tree[i];
            i &= i - 1;
        }
        acc
    }
}
