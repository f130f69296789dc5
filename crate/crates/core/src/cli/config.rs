// SPDX-License-Identifier: MIT OR Apache-2.0

//! TOML run configuration for `cpwx simulate`.
//!
//! ```toml
//! schema_version = 1
//!
//! [experiment]
//! replications = 2000
//! master_seed = 42
//! methods = ["wilcoxon", "cusum"]   # optional, default both
//! histogram_bins = 50               # optional
//!
//! [model]
//! n = 200
//! theta = 0.5
//! delta = 1.0
//! rho = 0.4
//! innovation = "normal"             # or "t1"
//! mu = 0.0                          # optional
//! burn_in = 100                     # optional
//!
//! [outliers]                        # optional section
//! positions = [0.2, 0.3, 0.6, 0.8]
//! factor = 50.0
//! ```

use serde::Deserialize;

use crate::montecarlo::{ExperimentSpec, DEFAULT_HISTOGRAM_BINS};
use crate::scan::Method;
use crate::series::{ChangePointConfig, InnovationLaw, OutlierPlan, DEFAULT_BURN_IN};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfigFile {
    pub schema_version: u32,
    pub experiment: ExperimentSection,
    pub model: ModelSection,
    pub outliers: Option<OutlierSection>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSection {
    pub replications: usize,
    pub master_seed: u64,
    pub methods: Option<Vec<String>>,
    pub histogram_bins: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub n: usize,
    pub theta: f64,
    pub delta: f64,
    pub rho: f64,
    pub innovation: String,
    pub mu: Option<f64>,
    pub burn_in: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutlierSection {
    pub positions: Vec<f64>,
    pub factor: f64,
}

impl RunConfigFile {
    pub fn parse(text: &str) -> Result<Self, String> {
        let cfg: RunConfigFile = toml::from_str(text).map_err(|e| e.to_string())?;
        if cfg.schema_version != SCHEMA_VERSION {
            return Err(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                cfg.schema_version
            ));
        }
        Ok(cfg)
    }

    pub fn to_spec(&self) -> Result<ExperimentSpec, String> {
        let innovation: InnovationLaw = self.model.innovation.parse().map_err(|e: crate::Error| e.to_string())?;
        let methods = match &self.experiment.methods {
            Some(names) => names
                .iter()
                .map(|m| m.parse::<Method>().map_err(|e| e.to_string()))
                .collect::<Result<Vec<_>, _>>()?,
            None => Method::ALL.to_vec(),
        };
        let config = ChangePointConfig {
            n: self.model.n,
            theta: self.model.theta,
            delta: self.model.delta,
            mu: self.model.mu.unwrap_or(0.0),
            rho: self.model.rho,
            innovation,
            outliers: self.outliers.as_ref().map(|o| OutlierPlan {
                positions: o.positions.clone(),
                factor: o.factor,
            }),
            burn_in: self.model.burn_in.unwrap_or(DEFAULT_BURN_IN),
        };
        let spec = ExperimentSpec {
            config,
            replications: self.experiment.replications,
            master_seed: self.experiment.master_seed,
            methods,
            histogram_bins: self.experiment.histogram_bins.unwrap_or(DEFAULT_HISTOGRAM_BINS),
        };
        spec.validate().map_err(|e| e.to_string())?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FULL: &str = r#"
schema_version = 1

[experiment]
replications = 20
master_seed = 7
methods = ["cusum", "wilcoxon"]
histogram_bins = 10

[model]
n = 200
theta = 0.5
delta = 1.0
rho = 0.4
innovation = "t1"
mu = 2.0
burn_in = 50

[outliers]
positions = [0.2, 0.3, 0.6, 0.8]
factor = 50.0
"#;

    #[test]
    fn parses_full_config() {
        let spec = RunConfigFile::parse(FULL).unwrap().to_spec().unwrap();
        assert_eq!(spec.replications, 20);
        assert_eq!(spec.methods, vec![Method::Cusum, Method::Wilcoxon]);
        assert_eq!(spec.config.innovation, InnovationLaw::StudentT1);
        assert_eq!(spec.config.mu, 2.0);
        assert_eq!(spec.config.burn_in, 50);
        assert_eq!(spec.config.outliers, Some(OutlierPlan::standard()));
    }

    #[test]
    fn defaults_apply() {
        let text = r#"
schema_version = 1
[experiment]
replications = 5
master_seed = 1
[model]
n = 50
theta = 0.25
delta = 0.5
rho = 0.4
innovation = "normal"
"#;
        let spec = RunConfigFile::parse(text).unwrap().to_spec().unwrap();
        assert_eq!(spec.methods, Method::ALL.to_vec());
        assert_eq!(spec.histogram_bins, DEFAULT_HISTOGRAM_BINS);
        assert_eq!(spec.config.burn_in, DEFAULT_BURN_IN);
        assert_eq!(spec.config.outliers, None);
    }

    #[test]
    fn rejects_unknown_keys_missing_fields_and_versions() {
        assert!(RunConfigFile::parse(&FULL.replace("burn_in = 50", "burn_in = 50\nseed = 3")).is_err());
        assert!(RunConfigFile::parse(&FULL.replace("rho = 0.4\n", "")).is_err());
        assert!(RunConfigFile::parse(&FULL.replace("schema_version = 1", "schema_version = 2")).is_err());
        let bad_law = RunConfigFile::parse(&FULL.replace("\"t1\"", "\"gamma\"")).unwrap();
        assert!(bad_law.to_spec().is_err());
        let bad_theta = RunConfigFile::parse(&FULL.replace("theta = 0.5", "theta = 1.5")).unwrap();
        assert!(bad_theta.to_spec().is_err());
    }
}
