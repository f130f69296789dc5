// SPDX-License-Identifier: MIT OR Apache-2.0

//! Replicated simulation experiments.
//!
//! Every replication owns an RNG stream derived from `(master_seed,
//! rep_index)`, so outcomes do not depend on how replications are scheduled
//! across worker threads. Aggregation folds over outcomes in `rep_index`
//! order.

use rayon::prelude::*;

use crate::datagen::{generate_series, RngStream};
use crate::error::{Error, Result};
use crate::scan::{estimate_changepoint, EstimateResult, Method};
use crate::series::ChangePointConfig;

pub const DEFAULT_HISTOGRAM_BINS: usize = 50;

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub config: ChangePointConfig,
    pub replications: usize,
    pub master_seed: u64,
    pub methods: Vec<Method>,
    pub histogram_bins: usize,
}

impl ExperimentSpec {
    /// Both methods, 50 histogram bins.
    pub fn new(config: ChangePointConfig, replications: usize, master_seed: u64) -> Self {
        ExperimentSpec {
            config,
            replications,
            master_seed,
            methods: Method::ALL.to_vec(),
            histogram_bins: DEFAULT_HISTOGRAM_BINS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.config.validate()?;
        if self.replications < 1 {
            return Err(Error::invalid("replications", "must be at least 1"));
        }
        if self.histogram_bins < 2 {
            return Err(Error::invalid("histogram_bins", "must be at least 2"));
        }
        if self.methods.is_empty() {
            return Err(Error::invalid("methods", "at least one method is required"));
        }
        for (i, m) in self.methods.iter().enumerate() {
            if self.methods[..i].contains(m) {
                return Err(Error::invalid("methods", format!("`{m}` listed twice")));
            }
        }
        Ok(())
    }
}

/// Estimates of every requested method on one generated series.
#[derive(Clone, Debug, PartialEq)]
pub struct ReplicationOutcome {
    pub rep_index: usize,
    pub estimates: Vec<EstimateResult>,
}

impl ReplicationOutcome {
    pub fn estimate(&self, method: Method) -> Option<&EstimateResult> {
        self.estimates.iter().find(|e| e.method == method)
    }
}

/// Uniform bins on [0, 1]; every bin right-open except the last.
#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn edges(&self) -> Vec<f64> {
        let b = self.bins();
        (0..=b).map(|i| i as f64 / b as f64).collect()
    }

    /// Bin of `k / n`, computed in integers so that values on an edge land in
    /// the bin to their right.
    pub fn bin_of(bins: usize, k: usize, n: usize) -> usize {
        let idx = (k as u128 * bins as u128 / n as u128) as usize;
        idx.min(bins - 1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct McSummary {
    pub method: Method,
    pub replications: usize,
    pub mean_theta_hat: f64,
    /// Sample standard deviation with denominator `R - 1`; 0 when `R = 1`.
    pub sd_theta_hat: f64,
    /// Set when `R = 1` and the standard deviation is undefined.
    pub sd_degenerate: bool,
    pub histogram: Histogram,
}

/// Generates the series for `rep_index` and estimates it with every method.
pub fn run_replication(spec: &ExperimentSpec, rep_index: usize) -> Result<ReplicationOutcome> {
    if rep_index >= spec.replications {
        return Err(Error::invalid(
            "rep_index",
            format!("{rep_index} out of range for {} replications", spec.replications),
        ));
    }
    let mut rng = RngStream::for_replication(spec.master_seed, rep_index as u64);
    let x = generate_series(&spec.config, &mut rng)?;
    let estimates = spec
        .methods
        .iter()
        .map(|&m| estimate_changepoint(&x, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(ReplicationOutcome {
        rep_index,
        estimates,
    })
}

/// Runs all replications, in parallel when `workers` is not 1.
///
/// `workers = None` uses rayon's global pool. Any failing replication aborts
/// the whole run.
pub fn run_replications(
    spec: &ExperimentSpec,
    workers: Option<usize>,
) -> Result<Vec<ReplicationOutcome>> {
    spec.validate()?;
    let run = || -> Result<Vec<ReplicationOutcome>> {
        (0..spec.replications)
            .into_par_iter()
            .map(|rep| run_replication(spec, rep))
            .collect()
    };
    match workers {
        Some(1) => (0..spec.replications)
            .map(|rep| run_replication(spec, rep))
            .collect(),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .map_err(|e| Error::invalid("workers", e.to_string()))?;
            pool.install(run)
        }
        None => run(),
    }
}

/// Outcomes plus per-method summaries of one experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct Experiment {
    pub outcomes: Vec<ReplicationOutcome>,
    pub summaries: Vec<McSummary>,
}

pub fn run_experiment(spec: &ExperimentSpec, workers: Option<usize>) -> Result<Experiment> {
    let outcomes = run_replications(spec, workers)?;
    let summaries = summarize(&outcomes, spec.histogram_bins)?;
    Ok(Experiment {
        outcomes,
        summaries,
    })
}

/// Per-method mean, sd and histogram of `theta_hat`, in the method order of
/// the first outcome.
pub fn summarize(outcomes: &[ReplicationOutcome], bins: usize) -> Result<Vec<McSummary>> {
    let first = outcomes.first().ok_or(Error::Empty)?;
    if bins < 2 {
        return Err(Error::invalid("bins", "must be at least 2"));
    }
    let mut ordered: Vec<&ReplicationOutcome> = outcomes.iter().collect();
    ordered.sort_by_key(|o| o.rep_index);

    first
        .estimates
        .iter()
        .map(|e| e.method)
        .map(|method| {
            let estimates = ordered
                .iter()
                .map(|o| {
                    o.estimate(method).ok_or_else(|| {
                        Error::invalid(
                            "outcomes",
                            format!("replication {} lacks method `{method}`", o.rep_index),
                        )
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(summarize_method(method, &estimates, bins))
        })
        .collect()
}

fn summarize_method(method: Method, estimates: &[&EstimateResult], bins: usize) -> McSummary {
    let r = estimates.len();
    let mean = estimates.iter().map(|e| e.theta_hat).sum::<f64>() / r as f64;
    let (sd, sd_degenerate) = if r > 1 {
        let ss: f64 = estimates.iter().map(|e| (e.theta_hat - mean).powi(2)).sum();
        ((ss / (r - 1) as f64).sqrt(), false)
    } else {
        (0.0, true)
    };
    let mut counts = vec![0u64; bins];
    for e in estimates {
        counts[Histogram::bin_of(bins, e.k_hat, e.n)] += 1;
    }
    McSummary {
        method,
        replications: r,
        mean_theta_hat: mean,
        sd_theta_hat: sd,
        sd_degenerate,
        histogram: Histogram { counts },
    }
}
