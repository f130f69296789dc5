// SPDX-License-Identifier: MIT OR Apache-2.0

//! The `cpwx` command line.
//!
//! Exit codes: 0 on success, 2 for usage and validation errors, 3 for I/O
//! failures. Diagnostics go to standard error.

pub mod config;
pub mod output;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::montecarlo::run_experiment;
use crate::scan::{estimate_from_profile, scan, Method};
use crate::series::Series;
use crate::theory::{
    check_summability, decompose_wilcoxon, ned_constants, theta_delta, Convergence, DistModel,
    LinearProcessSpec, SummabilityTail,
};

use config::RunConfigFile;
use output::{parse_series, render_histogram, render_outcomes, render_profile, render_summary};

/// `E|Z|` for a standard normal `Z`.
const ABS_MEAN_STANDARD_NORMAL: f64 = 0.797_884_560_802_865_4;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) => m,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn read_series(path: &Path) -> Result<Series, CliError> {
    let text = read_text(path)?;
    parse_series(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

#[derive(Debug, Parser)]
#[command(name = "cpwx", version, about = "Wilcoxon- and CUSUM-type change-point location estimation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a Monte Carlo experiment from a TOML config and write CSV results.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads (default: all cores).
        #[arg(long, env = "CPWX_WORKERS")]
        workers: Option<usize>,
    },
    /// Write the scan profile of a series to CSV.
    Scan {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = parse_method)]
        method: Method,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the change-point estimate of a series.
    Estimate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = parse_method)]
        method: Method,
    },
    /// Evaluate theory quantities.
    #[command(subcommand)]
    Theory(TheoryCommand),
}

#[derive(Debug, Subcommand)]
pub enum TheoryCommand {
    /// Theta_D = P(Y'' < Y' <= Y'' + D) by quadrature.
    ThetaDelta {
        #[arg(long, value_parser = parse_dist)]
        dist: DistModel,
        #[arg(long, allow_hyphen_values = true)]
        delta: f64,
    },
    /// NED approximation constants a_0..a_k_max of a linear process.
    NedConstants {
        #[command(flatten)]
        process: ProcessArgs,
        #[arg(long)]
        k_max: usize,
    },
    /// Partial sum and convergence verdict for sum k^2 (beta_k + sqrt(a_k)).
    Summability {
        #[command(flatten)]
        process: ProcessArgs,
        /// File with a_0, a_1, ... one per line (instead of --rho/--psi).
        #[arg(long, conflicts_with_all = ["rho", "psi"])]
        a_file: Option<PathBuf>,
        /// File with beta_0, beta_1, ... one per line.
        #[arg(long, conflicts_with_all = ["beta_ratio"])]
        beta_file: Option<PathBuf>,
        /// beta_k = beta_scale * beta_ratio^k.
        #[arg(long)]
        beta_ratio: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        beta_scale: f64,
        #[arg(long)]
        k_max: usize,
    },
    /// Check 2W_n(k) = 2U_n(k) + 2 * shift count for every split.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k_star: usize,
        #[arg(long, allow_hyphen_values = true)]
        delta: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        mu: f64,
    },
}

#[derive(Debug, Args)]
pub struct ProcessArgs {
    /// AR(1) coefficient: psi_j = rho^j.
    #[arg(long, allow_hyphen_values = true)]
    rho: Option<f64>,
    /// Finite coefficient list psi_0,psi_1,...
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "rho")]
    psi: Option<Vec<f64>>,
    /// E|Z_1| of the driving noise (default: standard normal).
    #[arg(long, default_value_t = ABS_MEAN_STANDARD_NORMAL)]
    abs_mean_z: f64,
}

impl ProcessArgs {
    fn spec(&self) -> Option<LinearProcessSpec> {
        match (&self.rho, &self.psi) {
            (Some(rho), _) => Some(LinearProcessSpec::ar1(*rho, self.abs_mean_z)),
            (None, Some(psi)) => Some(LinearProcessSpec {
                psi: psi.clone(),
                tail: None,
                abs_mean_z: self.abs_mean_z,
            }),
            (None, None) => None,
        }
    }
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

fn parse_dist(s: &str) -> Result<DistModel, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn execute<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match run(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate { config, out: dir, workers } => cmd_simulate(&config, &dir, workers),
        Command::Scan { input, method, out: path } => cmd_scan(&input, method, &path),
        Command::Estimate { input, method } => cmd_estimate(&input, method, out, err),
        Command::Theory(sub) => cmd_theory(sub, out, err),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Io(format!("cannot write to standard output: {e}")))
}

/// Writes `summary.csv`, `histogram.csv` and `outcomes.csv` into `out_dir`.
pub fn cmd_simulate(config: &Path, out_dir: &Path, workers: Option<usize>) -> Result<(), CliError> {
    let text = read_text(config)?;
    let spec = RunConfigFile::parse(&text)
        .and_then(|c| c.to_spec())
        .map_err(|e| CliError::Usage(format!("{}: {e}", config.display())))?;
    if workers == Some(0) {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    let experiment = run_experiment(&spec, workers)?;
    fs::create_dir_all(out_dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", out_dir.display())))?;
    write_text(&out_dir.join("summary.csv"), &render_summary(&spec, &experiment.summaries))?;
    write_text(&out_dir.join("histogram.csv"), &render_histogram(&experiment.summaries))?;
    write_text(&out_dir.join("outcomes.csv"), &render_outcomes(&experiment.outcomes))?;
    Ok(())
}

pub fn cmd_scan(input: &Path, method: Method, out_path: &Path) -> Result<(), CliError> {
    let x = read_series(input)?;
    let profile = scan(&x, method)?;
    write_text(out_path, &render_profile(&profile))
}

pub fn cmd_estimate(
    input: &Path,
    method: Method,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let x = read_series(input)?;
    let values = x.as_slice();
    if values.iter().all(|v| *v == values[0]) {
        let _ = writeln!(
            err,
            "warning: degenerate profile: the input series is constant, the estimate carries no information"
        );
    }
    let est = estimate_from_profile(&scan(&x, method)?);
    emit(out, &format!("k_hat={} theta_hat={}\n", est.k_hat, est.theta_hat))
}

fn cmd_theory(sub: TheoryCommand, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match sub {
        TheoryCommand::ThetaDelta { dist, delta } => {
            let value = theta_delta(dist, delta)?;
            let mut text = format!("theta_delta={value}\n");
            if delta > 0.0 {
                let _ = writeln!(text, "ratio_to_leading_term={}", value / (delta * dist.density_energy()));
            }
            emit(out, &text)
        }
        TheoryCommand::NedConstants { process, k_max } => {
            let spec = process
                .spec()
                .ok_or_else(|| CliError::Usage("one of --rho or --psi is required".into()))?;
            let a = ned_constants(&spec, k_max)?;
            let mut text = String::from("k,a_k\n");
            for (k, v) in a.iter().enumerate() {
                let _ = writeln!(text, "{k},{v}");
            }
            emit(out, &text)
        }
        TheoryCommand::Summability {
            process,
            a_file,
            beta_file,
            beta_ratio,
            beta_scale,
            k_max,
        } => {
            let mut envelope_ok = true;
            let (a, a_env) = match (a_file, process.spec()) {
                (Some(path), _) => {
                    envelope_ok = false;
                    (read_sequence(&path)?, None)
                }
                (None, Some(spec)) => {
                    let a = ned_constants(&spec, k_max)?;
                    // a_k = a_0 |rho|^k for an AR(1); finite psi vanish beyond their length
                    let env = match (process.rho, spec.psi.len()) {
                        (Some(rho), _) => Some((a[0], rho.abs())),
                        (None, len) if len <= k_max + 1 => Some((0.0, 0.0)),
                        _ => None,
                    };
                    (a, env)
                }
                (None, None) => {
                    return Err(CliError::Usage("one of --a-file, --rho or --psi is required".into()))
                }
            };
            let (beta, beta_env) = match (beta_file, beta_ratio) {
                (Some(path), _) => {
                    envelope_ok = false;
                    (read_sequence(&path)?, None)
                }
                (None, Some(r)) => {
                    let b = (0..=k_max).map(|k| beta_scale * r.powi(k as i32)).collect();
                    (b, Some((beta_scale, r)))
                }
                (None, None) => (vec![0.0; k_max + 1], Some((0.0, 0.0))),
            };
            let tail = match (envelope_ok, a_env, beta_env) {
                (true, Some((a_scale, a_ratio)), Some((beta_scale, beta_ratio))) => Some(SummabilityTail {
                    a_scale,
                    a_ratio,
                    beta_scale,
                    beta_ratio,
                }),
                _ => None,
            };
            let report = check_summability(&a, &beta, k_max, tail)?;
            let verdict = match report.verdict {
                Convergence::Converges => "true",
                Convergence::Diverges => "false",
                Convergence::Unknown => "unknown",
            };
            let mut text = format!("partial_sum={}\n", report.partial_sum);
            if let Some(b) = report.tail_bound {
                let _ = writeln!(text, "tail_bound={b}");
            }
            let _ = writeln!(text, "converges={verdict}");
            emit(out, &text)
        }
        TheoryCommand::Decompose { input, k_star, delta, mu } => {
            let y = read_series(&input)?;
            let reports = decompose_wilcoxon(&y, k_star, delta, mu)?;
            let mut text = String::from("k,w2,u2,u_shift,identity\n");
            for r in &reports {
                let _ = writeln!(text, "{},{},{},{},{}", r.k, r.w2, r.u_n_2, r.u_shift, r.identity_holds);
            }
            emit(out, &text)?;
            let failures = reports.iter().filter(|r| !r.identity_holds).count();
            if failures > 0 {
                let _ = writeln!(
                    err,
                    "warning: identity fails at {failures} of {} splits (inexact arithmetic in the shifted series)",
                    reports.len()
                );
            }
            Ok(())
        }
    }
}

fn read_sequence(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = read_text(path)?;
    let mut values = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || (idx == 0 && line == "value") {
            continue;
        }
        let v: f64 = line.parse().map_err(|_| {
            CliError::Usage(format!("{}: line {}: cannot parse `{line}`", path.display(), idx + 1))
        })?;
        values.push(v);
    }
    Ok(values)
}
