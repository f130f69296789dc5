// SPDX-License-Identifier: MIT OR Apache-2.0

//! Seeded generation of the simulation model: i.i.d. innovations, AR(1)
//! filtering with burn-in, mean-shift injection and multiplicative outliers.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Open01, StandardNormal};

use crate::error::{Error, Result};
use crate::series::{ChangePointConfig, InnovationLaw, OutlierPlan, Series};

/// SplitMix64 finaliser.
fn avalanche(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives an independent stream seed from a master seed and a replication
/// index: `avalanche(master ^ avalanche(index + GOLDEN))`.
pub fn mix64(master_seed: u64, index: u64) -> u64 {
    const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;
    avalanche(master_seed ^ avalanche(index.wrapping_add(GOLDEN)))
}

/// Single-owner random stream. ChaCha8 output is platform independent.
#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn for_replication(master_seed: u64, rep_index: u64) -> Self {
        RngStream::new(mix64(master_seed, rep_index))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform draw on the open interval (0, 1).
    pub fn open01(&mut self) -> f64 {
        self.rng.sample(Open01)
    }

    pub fn standard_normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Standard Cauchy (t with one degree of freedom) by the quantile
    /// transform `tan(pi (u - 1/2))`.
    pub fn standard_cauchy(&mut self) -> f64 {
        let u = self.open01();
        (PI * (u - 0.5)).tan()
    }

    pub fn innovation(&mut self, law: InnovationLaw) -> f64 {
        match law {
            InnovationLaw::Normal01 => self.standard_normal(),
            InnovationLaw::StudentT1 => self.standard_cauchy(),
        }
    }
}

/// `count` i.i.d. draws from `law`.
pub fn gen_innovations(law: InnovationLaw, count: usize, rng: &mut RngStream) -> Vec<f64> {
    (0..count).map(|_| rng.innovation(law)).collect()
}

/// `Y_i = rho Y_{i-1} + eps_i` from `Y_0 = 0`; the first `burn_in` outputs
/// are discarded.
pub fn ar1_filter(eps: &[f64], rho: f64, burn_in: usize) -> Result<Vec<f64>> {
    if !(rho.abs() < 1.0) {
        return Err(Error::invalid("rho", format!("|{rho}| must be < 1")));
    }
    if eps.len() < burn_in {
        return Err(Error::invalid(
            "burn_in",
            format!("{burn_in} exceeds the {} supplied innovations", eps.len()),
        ));
    }
    let mut y = 0.0;
    let mut out = Vec::with_capacity(eps.len() - burn_in);
    for (i, &e) in eps.iter().enumerate() {
        y = rho * y + e;
        if i >= burn_in {
            out.push(y);
        }
    }
    Ok(out)
}

/// Draws `n + burn_in` innovations and returns the last `n` AR(1) values.
pub fn ar1_series(
    law: InnovationLaw,
    n: usize,
    rho: f64,
    burn_in: usize,
    rng: &mut RngStream,
) -> Result<Vec<f64>> {
    let eps = gen_innovations(law, n + burn_in, rng);
    ar1_filter(&eps, rho, burn_in)
}

/// `X_i = y_i + mu` for `i <= k_star`, `X_i = y_i + mu + delta` afterwards.
pub fn apply_change(y: &[f64], mu: f64, delta: f64, k_star: usize) -> Result<Series> {
    let n = y.len();
    if k_star < 1 || k_star >= n {
        return Err(Error::invalid(
            "k_star",
            format!("{k_star} outside 1..{n}"),
        ));
    }
    let x = y
        .iter()
        .enumerate()
        .map(|(i, &v)| if i < k_star { v + mu } else { v + mu + delta })
        .collect();
    Series::new(x)
}

/// Multiplies `X_{[f n]}` by the plan factor for every planned fraction `f`.
pub fn inject_outliers(x: &Series, plan: &OutlierPlan) -> Result<Series> {
    let mut values = x.as_slice().to_vec();
    for index in plan.indices(values.len())? {
        values[index - 1] *= plan.factor;
    }
    Series::new(values)
}

/// Full generative pipeline for one series of the configured cell.
pub fn generate_series(cfg: &ChangePointConfig, rng: &mut RngStream) -> Result<Series> {
    cfg.validate()?;
    let y = ar1_series(cfg.innovation, cfg.n, cfg.rho, cfg.burn_in, rng)?;
    let x = apply_change(&y, cfg.mu, cfg.delta, cfg.k_star())?;
    match &cfg.outliers {
        Some(plan) => inject_outliers(&x, plan),
        None => Ok(x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mean(v: &[f64]) -> f64 {
        v.iter().sum::<f64>() / v.len() as f64
    }

    #[test]
    fn innovations_are_deterministic() {
        for law in [InnovationLaw::Normal01, InnovationLaw::StudentT1] {
            let a = gen_innovations(law, 1000, &mut RngStream::new(17));
            let b = gen_innovations(law, 1000, &mut RngStream::new(17));
            let c = gen_innovations(law, 1000, &mut RngStream::new(18));
            assert_eq!(a, b);
            assert_ne!(a, c);
        }
    }

    #[test]
    fn normal_sample_mean() {
        let e = gen_innovations(InnovationLaw::Normal01, 100_000, &mut RngStream::new(1));
        assert!(mean(&e).abs() <= 0.02, "mean {}", mean(&e));
    }

    #[test]
    fn cauchy_sample_median() {
        let mut e = gen_innovations(InnovationLaw::StudentT1, 100_000, &mut RngStream::new(2));
        e.sort_by(f64::total_cmp);
        let median = 0.5 * (e[49_999] + e[50_000]);
        assert!(median.abs() <= 0.02, "median {median}");
        // quartiles of the standard Cauchy are -1 and 1
        assert!((e[25_000] + 1.0).abs() < 0.05);
        assert!((e[75_000] - 1.0).abs() < 0.05);
    }

    #[test]
    fn ar1_recursion() {
        assert_eq!(ar1_filter(&[1.0, 0.0, 0.0], 0.5, 0).unwrap(), vec![1.0, 0.5, 0.25]);
        let eps = [0.3, -1.2, 2.0, 0.7];
        assert_eq!(ar1_filter(&eps, 0.0, 1).unwrap(), eps[1..].to_vec());
        assert!(ar1_filter(&eps, 1.0, 0).is_err());
        assert!(ar1_filter(&eps, -1.5, 0).is_err());
        assert!(ar1_filter(&eps, 0.2, 5).is_err());
    }

    #[test]
    fn ar1_moments() {
        let y = ar1_series(InnovationLaw::Normal01, 100_000, 0.4, 100, &mut RngStream::new(3)).unwrap();
        let m = mean(&y);
        let var = y.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (y.len() - 1) as f64;
        let target = 1.0 / (1.0 - 0.16);
        assert!((var / target - 1.0).abs() <= 0.05, "variance {var}");
        let cov1 = y.windows(2).map(|w| (w[0] - m) * (w[1] - m)).sum::<f64>() / (y.len() - 1) as f64;
        let acf1 = cov1 / var;
        assert!((acf1 - 0.4).abs() <= 0.02, "lag-1 autocorrelation {acf1}");
    }

    #[test]
    fn apply_change_examples() {
        let y = [0.3, -0.1, 2.0];
        assert_eq!(
            apply_change(&y, 1.5, 0.0, 1).unwrap().as_slice(),
            &[1.8, 1.4, 3.5]
        );
        assert_eq!(
            apply_change(&[0.0; 4], 0.0, 1.0, 2).unwrap().as_slice(),
            &[0.0, 0.0, 1.0, 1.0]
        );
        assert_eq!(apply_change(&[0.0, 0.0], 5.0, 2.0, 1).unwrap().as_slice(), &[5.0, 7.0]);
        assert_eq!(apply_change(&y, 0.0, 0.0, 2).unwrap().as_slice(), &y);
        assert!(apply_change(&y, 0.0, 1.0, 0).is_err());
        assert!(apply_change(&y, 0.0, 1.0, 3).is_err());
    }

    #[test]
    fn outliers_touch_exactly_planned_entries() {
        let x = Series::new((0..200).map(|i| 0.5 + i as f64 * 1e-3).collect()).unwrap();
        let out = inject_outliers(&x, &OutlierPlan::standard()).unwrap();
        let changed: Vec<usize> = x
            .as_slice()
            .iter()
            .zip(out.as_slice())
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(i, _)| i + 1)
            .collect();
        assert_eq!(changed, vec![40, 60, 120, 160]);
        assert_eq!(out.as_slice()[39], x.as_slice()[39] * 50.0);

        let mut y = vec![1.0; 200];
        y[39] = 0.5;
        let out = inject_outliers(&Series::new(y).unwrap(), &OutlierPlan::standard()).unwrap();
        assert_eq!(out.as_slice()[39], 25.0);

        let identity = OutlierPlan { factor: 1.0, ..OutlierPlan::standard() };
        assert_eq!(inject_outliers(&x, &identity).unwrap(), x);
    }

    #[test]
    fn generate_is_pure_function_of_seed() {
        let mut cfg = ChangePointConfig::new(120, 0.25, 1.0);
        cfg.innovation = InnovationLaw::StudentT1;
        cfg.outliers = Some(OutlierPlan::standard());
        let a = generate_series(&cfg, &mut RngStream::for_replication(9, 4)).unwrap();
        let b = generate_series(&cfg, &mut RngStream::for_replication(9, 4)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 120);
    }

    #[test]
    fn mix64_separates_streams() {
        let seeds: std::collections::HashSet<u64> = (0..10_000).map(|i| mix64(42, i)).collect();
        assert_eq!(seeds.len(), 10_000);
        assert_ne!(mix64(1, 0), mix64(0, 1));
    }
}
