//! Sweep configuration files.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use qrmix_core::Family;

use crate::experiments::Thresholds;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    Degrees,
    Mixing,
    Recurrence,
    Vdc,
}

impl Experiment {
    pub const ALL: [Experiment; 4] = [Experiment::Degrees, Experiment::Mixing, Experiment::Recurrence, Experiment::Vdc];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Degrees => "degrees",
            Experiment::Mixing => "mixing",
            Experiment::Recurrence => "recurrence",
            Experiment::Vdc => "vdc",
        }
    }
}

fn default_experiments() -> Vec<Experiment> {
    Experiment::ALL.to_vec()
}

fn default_trials() -> u64 {
    10
}

fn default_exact_max_order() -> usize {
    Thresholds::default().exact_max_order
}

fn default_mc_samples() -> u64 {
    Thresholds::default().mc_samples
}

fn default_out() -> PathBuf {
    PathBuf::from("out")
}

/// Keys: `groups` (required), `experiments`, `trials`, `seed`,
/// `exact_max_order`, `mc_samples`, `out`. Unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub groups: Vec<String>,
    #[serde(default = "default_experiments")]
    pub experiments: Vec<Experiment>,
    #[serde(default = "default_trials")]
    pub trials: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_exact_max_order")]
    pub exact_max_order: usize,
    #[serde(default = "default_mc_samples")]
    pub mc_samples: u64,
    #[serde(default = "default_out")]
    pub out: PathBuf,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid config: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let config: Self = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.into(), source })?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let invalid = |m: String| Err(ConfigError::Invalid(m));
        if self.groups.is_empty() {
            return invalid("groups must not be empty".into());
        }
        if self.experiments.is_empty() {
            return invalid("experiments must not be empty".into());
        }
        if self.experiments.iter().collect::<BTreeSet<_>>().len() != self.experiments.len() {
            return invalid("experiments must not repeat".into());
        }
        if self.trials < 1 {
            return invalid("trials must be at least 1".into());
        }
        if self.exact_max_order < 1 {
            return invalid("exact_max_order must be at least 1".into());
        }
        if self.mc_samples < qrmix_core::mixing::MIN_MC_SAMPLES {
            return invalid(format!("mc_samples must be at least {}", qrmix_core::mixing::MIN_MC_SAMPLES));
        }
        for g in &self.groups {
            if let Err(e) = g.parse::<Family>().and_then(|f| f.validate()) {
                return invalid(format!("group {g:?}: {e}"));
            }
        }
        Ok(())
    }

    pub fn thresholds(&self) -> Thresholds {
        Thresholds { exact_max_order: self.exact_max_order, mc_samples: self.mc_samples }
    }
}
