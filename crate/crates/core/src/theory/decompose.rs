// SPDX-License-Identifier: MIT OR Apache-2.0

//! Exact split of the Wilcoxon profile of a shifted series into the profile
//! of the latent series plus a shift count:
//!
//! ```text
//! W_n(k) = U_n(k) + U_n(k, k*)   for k <= k*
//! W_n(k) = U_n(k) + U_n(k*, k)   for k >  k*
//! ```
//!
//! where the shift counts tally pairs with `Y_j < Y_i <= Y_j + D` across the
//! change. Both sides are compared as integers (`2W = 2U + 2 * count`).

use crate::datagen::apply_change;
use crate::error::{Error, Result};
use crate::scan::wilcoxon_scan;
use crate::series::Series;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub k: usize,
    /// `2 W_n(k)` on the shifted series.
    pub w2: i64,
    /// `2 U_n(k)` on the latent series.
    pub u_n_2: i64,
    /// `U_n(k, k*)` when `k <= k*`, otherwise `U_n(k*, k)`.
    pub u_shift: i64,
    pub identity_holds: bool,
}

fn in_window(yi: f64, yj: f64, delta: f64) -> bool {
    yj < yi && yi <= yj + delta
}

/// Shift counts for `k = 1..n-1` in `O(n^2)`.
pub fn shift_counts(y: &[f64], k_star: usize, delta: f64) -> Vec<i64> {
    let n = y.len();
    // row[i] = #{j > k*: window(y_i, y_j)} for i <= k*
    let row: Vec<i64> = y[..k_star]
        .iter()
        .map(|&yi| y[k_star..].iter().filter(|&&yj| in_window(yi, yj, delta)).count() as i64)
        .collect();
    // col[j] = #{i <= k*: window(y_i, y_j)} for j > k*
    let col: Vec<i64> = y[k_star..]
        .iter()
        .map(|&yj| y[..k_star].iter().filter(|&&yi| in_window(yi, yj, delta)).count() as i64)
        .collect();

    let mut out = Vec::with_capacity(n - 1);
    let mut acc = 0i64;
    for r in &row {
        acc += r;
        out.push(acc);
    }
    // k > k*: sum of col[j] over j > k
    let mut suffix = vec![0i64; col.len() + 1];
    for j in (0..col.len()).rev() {
        suffix[j] = suffix[j + 1] + col[j];
    }
    for k in k_star + 1..n {
        out.push(suffix[k - k_star]);
    }
    out
}

/// Builds `X = apply_change(y, mu, delta, k_star)` and checks the
/// decomposition at every split `k = 1..n-1`.
pub fn decompose_wilcoxon(
    y: &Series,
    k_star: usize,
    delta: f64,
    mu: f64,
) -> Result<Vec<DecompositionReport>> {
    if !(delta >= 0.0) || !delta.is_finite() {
        return Err(Error::invalid("delta", format!("{delta} must be finite and >= 0")));
    }
    let x = apply_change(y.as_slice(), mu, delta, k_star)?;
    let w2 = wilcoxon_scan(&x)?;
    let u2 = wilcoxon_scan(y)?;
    let shifts = shift_counts(y.as_slice(), k_star, delta);
    let reports = w2
        .wilcoxon_doubled()
        .expect("wilcoxon profile")
        .iter()
        .zip(u2.wilcoxon_doubled().expect("wilcoxon profile"))
        .zip(shifts)
        .enumerate()
        .map(|(idx, ((&w2, &u_n_2), u_shift))| DecompositionReport {
            k: idx + 1,
            w2,
            u_n_2,
            u_shift,
            identity_holds: w2 == u_n_2 + 2 * u_shift,
        })
        .collect();
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datagen::RngStream;

    /// Literal double loops over the defining ranges.
    fn oracle_shift(y: &[f64], k: usize, k_star: usize, delta: f64) -> i64 {
        let n = y.len();
        let (i_max, j_min) = if k <= k_star { (k, k_star) } else { (k_star, k) };
        let mut c = 0;
        for i in 0..i_max {
            for j in j_min..n {
                if in_window(y[i], y[j], delta) {
                    c += 1;
                }
            }
        }
        let _ = n;
        c
    }

    #[test]
    fn zero_shift_reduces_to_latent_profile() {
        let y = Series::new(vec![0.5, -1.0, 2.0, 0.25, 0.25, -3.0, 1.0]).unwrap();
        for r in decompose_wilcoxon(&y, 3, 0.0, 4.0).unwrap() {
            assert_eq!(r.u_shift, 0);
            assert_eq!(r.w2, r.u_n_2);
            assert!(r.identity_holds);
        }
    }

    #[test]
    fn huge_shift_counts_every_ordered_pair() {
        let y = Series::new(vec![0.3, -0.7, 1.1, 0.0, 2.2, -1.4]).unwrap();
        let ys = y.as_slice();
        let k_star = 3;
        let delta = (2.2 - (-1.4)) + 1.0 + 0.5;
        let reports = decompose_wilcoxon(&y, k_star, delta, 0.0).unwrap();
        let at_kstar = reports[k_star - 1];
        let descending = (0..k_star)
            .flat_map(|i| (k_star..6).map(move |j| (i, j)))
            .filter(|&(i, j)| ys[j] < ys[i])
            .count() as i64;
        assert_eq!(at_kstar.u_shift, descending);
        // every cross pair now satisfies X_i <= X_j
        assert_eq!(at_kstar.w2, (k_star * (6 - k_star)) as i64);
        assert!(reports.iter().all(|r| r.identity_holds));
    }

    #[test]
    fn random_normal_instance() {
        let mut rng = RngStream::new(30);
        let y = Series::new((0..30).map(|_| rng.standard_normal()).collect()).unwrap();
        let reports = decompose_wilcoxon(&y, 10, 0.7, 0.0).unwrap();
        assert_eq!(reports.len(), 29);
        for r in &reports {
            assert!(r.identity_holds, "k = {}", r.k);
            assert_eq!(r.u_shift, oracle_shift(y.as_slice(), r.k, 10, 0.7));
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let y = Series::new(vec![0.0, 1.0, 2.0]).unwrap();
        assert!(decompose_wilcoxon(&y, 0, 1.0, 0.0).is_err());
        assert!(decompose_wilcoxon(&y, 3, 1.0, 0.0).is_err());
        assert!(decompose_wilcoxon(&y, 1, -1.0, 0.0).is_err());
    }
}
