// SPDX-License-Identifier: MIT OR Apache-2.0

//! Number formatting, series input and CSV rendering.
//!
//! All CSVs use `.` as decimal separator, `\n` line endings and a header row.

use std::fmt::Write as _;

use crate::montecarlo::{ExperimentSpec, McSummary, ReplicationOutcome};
use crate::scan::{ScanProfile, ScanValues};
use crate::series::Series;

/// Fixed-point rendering of `x` with `sig` significant digits.
pub fn format_significant(x: f64, sig: usize) -> String {
    assert!(sig >= 1);
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let body = if exp >= 0 {
        let int_len = exp as usize + 1;
        if digits.len() <= int_len {
            format!("{digits}{}", "0".repeat(int_len - digits.len()))
        } else {
            format!("{}.{}", &digits[..int_len], &digits[int_len..])
        }
    } else {
        format!("0.{}{digits}", "0".repeat((-exp - 1) as usize))
    };
    format!("{sign}{body}")
}

/// `theta_hat` and summary statistics in CSV output.
pub fn format_theta(x: f64) -> String {
    format_significant(x, 10)
}

/// Half-integer `W_n(k)` from its doubled value, exactly.
pub fn format_half(doubled: i64) -> String {
    if doubled % 2 == 0 {
        (doubled / 2).to_string()
    } else {
        let sign = if doubled < 0 { "-" } else { "" };
        format!("{sign}{}.5", doubled.unsigned_abs() / 2)
    }
}

/// Parses a one-value-per-line series. A first line reading `value` is a
/// header; blank lines are skipped. Errors carry the 1-based line number.
pub fn parse_series(text: &str) -> Result<Series, String> {
    let mut values = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || (idx == 0 && line == "value") {
            continue;
        }
        let v: f64 = line
            .parse()
            .map_err(|_| format!("line {}: cannot parse `{line}` as a number", idx + 1))?;
        if !v.is_finite() {
            return Err(format!("line {}: non-finite value `{line}`", idx + 1));
        }
        values.push(v);
    }
    Series::new(values).map_err(|e| e.to_string())
}

pub fn render_profile(profile: &ScanProfile) -> String {
    let mut out = String::from("k,statistic\n");
    match &profile.values {
        ScanValues::WilcoxonDoubled(v) => {
            for (i, d) in v.iter().enumerate() {
                let _ = writeln!(out, "{},{}", i + 1, format_half(*d));
            }
        }
        ScanValues::Cusum(v) => {
            for (i, d) in v.iter().enumerate() {
                let _ = writeln!(out, "{},{}", i + 1, d);
            }
        }
    }
    out
}

fn outlier_label(spec: &ExperimentSpec) -> String {
    match &spec.config.outliers {
        None => "none".to_string(),
        Some(plan) => {
            let positions: Vec<String> = plan.positions.iter().map(|p| p.to_string()).collect();
            format!("{}x@{}", plan.factor, positions.join(";"))
        }
    }
}

pub fn render_summary(spec: &ExperimentSpec, summaries: &[McSummary]) -> String {
    let mut out = String::from("method,n,theta,delta,rho,innovation,outliers,R,mean,sd\n");
    let c = &spec.config;
    for s in summaries {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            s.method,
            c.n,
            c.theta,
            c.delta,
            c.rho,
            c.innovation,
            outlier_label(spec),
            s.replications,
            format_theta(s.mean_theta_hat),
            format_theta(s.sd_theta_hat),
        );
    }
    out
}

pub fn render_histogram(summaries: &[McSummary]) -> String {
    let mut out = String::from("method,bin_left,bin_right,count\n");
    for s in summaries {
        let edges = s.histogram.edges();
        for (i, count) in s.histogram.counts.iter().enumerate() {
            let _ = writeln!(out, "{},{},{},{}", s.method, edges[i], edges[i + 1], count);
        }
    }
    out
}

pub fn render_outcomes(outcomes: &[ReplicationOutcome]) -> String {
    let mut out = String::from("rep_index,method,k_hat,theta_hat\n");
    for o in outcomes {
        for e in &o.estimates {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                o.rep_index,
                e.method,
                e.k_hat,
                format_theta(e.theta_hat)
            );
        }
    }
    out
}
