//! JSON run configurations for `saf sweep` and `saf bench`.
//!
//! Unknown keys are rejected and every error names the offending key path.
//!
//! Sweep schema (`mode` selects the driver; omitted keys take the defaults shown):
//!
//! ```json
//! {
//!   "mode": "success",            // success | beta | convergence
//!   "n": 128,                     // required
//!   "field": "real",              // real | complex
//!   "m_over_n": [1, 2, 3, 4, 5],  // required for success and convergence
//!   "trials": 50,                 // required
//!   "solver": { "beta": 0.5, "step": 0.6, "max_iter": 2000, "grad_tol": 1e-14, "err_tol": null },
//!   "algorithms": ["saf"],        // saf | saf-spectral | wf | twf | taf
//!   "noise_level": 0.0,
//!   "base_seed": 0,
//!   "power_iters": 50,
//!   "betas": [0.1, 0.2],          // beta mode only
//!   "random_m_over_n": 4.0,       // beta mode only
//!   "spectral_m_over_n": 2.5,     // beta mode only
//!   "threads": null,
//!   "output": null                // directory for the CSV; stdout when null
//! }
//! ```
//!
//! Bench schema: `n`, `field`, `m_over_n` (a single number), `trials`,
//! `solver`, `algorithms`, `noise_level`, `base_seed`, `power_iters`,
//! `thresholds` (default `[1e-5, 1e-10]`), `record_time` (default `false`),
//! `threads` and `output`.

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::calculus::Beta;
use crate::error::{invalid, Error, Result};
use crate::experiments::{Algorithm, BetaSweep, ExperimentSpec};
use crate::field::FieldTag;
use crate::solvers::{GdConfig, InitStrategy};

/// Gradient-descent settings shared by both schemas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverSection {
    pub beta: f64,
    pub step: f64,
    pub max_iter: usize,
    pub grad_tol: f64,
    pub err_tol: Option<f64>,
}

impl Default for SolverSection {
    fn default() -> Self {
        let d = GdConfig::default();
        Self {
            beta: d.beta.get(),
            step: d.step,
            max_iter: d.max_iter,
            grad_tol: d.grad_tol,
            err_tol: d.err_tol,
        }
    }
}

impl SolverSection {
    pub fn to_config(&self) -> Result<GdConfig> {
        let config = GdConfig {
            beta: Beta::new(self.beta)?,
            step: self.step,
            max_iter: self.max_iter,
            grad_tol: self.grad_tol,
            err_tol: self.err_tol,
        };
        config.validate()?;
        Ok(config)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    #[default]
    Success,
    Beta,
    Convergence,
}

impl SweepMode {
    pub fn name(self) -> &'static str {
        match self {
            SweepMode::Success => "success",
            SweepMode::Beta => "beta",
            SweepMode::Convergence => "convergence",
        }
    }
}

fn default_field() -> FieldTag {
    FieldTag::Real
}

fn default_algorithms() -> Vec<Algorithm> {
    vec![Algorithm::Saf]
}

fn default_power_iters() -> usize {
    InitStrategy::DEFAULT_POWER_ITERS
}

fn default_thresholds() -> Vec<f64> {
    vec![1e-5, 1e-10]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default)]
    pub mode: SweepMode,
    pub n: usize,
    #[serde(default = "default_field")]
    pub field: FieldTag,
    #[serde(default)]
    pub m_over_n: Vec<f64>,
    pub trials: usize,
    #[serde(default)]
    pub solver: SolverSection,
    #[serde(default = "default_algorithms")]
    pub algorithms: Vec<Algorithm>,
    #[serde(default)]
    pub noise_level: f64,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default = "default_power_iters")]
    pub power_iters: usize,
    #[serde(default)]
    pub betas: Option<Vec<f64>>,
    #[serde(default)]
    pub random_m_over_n: Option<f64>,
    #[serde(default)]
    pub spectral_m_over_n: Option<f64>,
    #[serde(default)]
    pub threads: Option<usize>,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        parse(text)
    }

    pub fn load(path: &Path) -> Result<Self> {
        parse(&read(path)?)
    }

    pub fn spec(&self) -> Result<ExperimentSpec> {
        let beta_keys = self.betas.is_some()
            || self.random_m_over_n.is_some()
            || self.spectral_m_over_n.is_some();
        if beta_keys && self.mode != SweepMode::Beta {
            return Err(invalid(
                "betas, random_m_over_n and spectral_m_over_n are only valid in beta mode",
            ));
        }
        let mut m_over_n = self.m_over_n.clone();
        if self.mode == SweepMode::Beta {
            if !m_over_n.is_empty() {
                return Err(invalid("m_over_n: not used in beta mode"));
            }
            m_over_n = vec![self.beta_sweep().random_m_over_n];
        }
        let spec = ExperimentSpec {
            n: self.n,
            field: self.field,
            m_over_n,
            trials: self.trials,
            config: self.solver.to_config()?,
            algorithms: self.algorithms.clone(),
            noise_level: self.noise_level,
            base_seed: self.base_seed,
            power_iters: self.power_iters,
            threads: self.threads,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn beta_sweep(&self) -> BetaSweep {
        let d = BetaSweep::default();
        BetaSweep {
            betas: self.betas.clone().unwrap_or(d.betas),
            random_m_over_n: self.random_m_over_n.unwrap_or(d.random_m_over_n),
            spectral_m_over_n: self.spectral_m_over_n.unwrap_or(d.spectral_m_over_n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    pub n: usize,
    #[serde(default = "default_field")]
    pub field: FieldTag,
    pub m_over_n: f64,
    pub trials: usize,
    #[serde(default)]
    pub solver: SolverSection,
    #[serde(default = "default_algorithms")]
    pub algorithms: Vec<Algorithm>,
    #[serde(default)]
    pub noise_level: f64,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default = "default_power_iters")]
    pub power_iters: usize,
    #[serde(default = "default_thresholds")]
    pub thresholds: Vec<f64>,
    #[serde(default)]
    pub record_time: bool,
    #[serde(default)]
    pub threads: Option<usize>,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

impl BenchConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        parse(text)
    }

    pub fn load(path: &Path) -> Result<Self> {
        parse(&read(path)?)
    }

    pub fn spec(&self) -> Result<ExperimentSpec> {
        let spec = ExperimentSpec {
            n: self.n,
            field: self.field,
            m_over_n: vec![self.m_over_n],
            trials: self.trials,
            config: self.solver.to_config()?,
            algorithms: self.algorithms.clone(),
            noise_level: self.noise_level,
            base_seed: self.base_seed,
            power_iters: self.power_iters,
            threads: self.threads,
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

/// Deserializes `text`, reporting failures as `<key path>: <reason>`.
fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de)
        .map_err(|e| Error::Format(format!("{}: {}", e.path(), e.inner())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_sweep_uses_defaults() {
        let c = SweepConfig::from_json(r#"{"n": 16, "m_over_n": [4], "trials": 2}"#).unwrap();
        let spec = c.spec().unwrap();
        assert_eq!(spec.field, FieldTag::Real);
        assert_eq!(spec.config, GdConfig::default());
        assert_eq!(spec.algorithms, vec![Algorithm::Saf]);
        assert_eq!(spec.power_iters, 50);
    }

    #[test]
    fn unknown_key_reports_path() {
        let err = SweepConfig::from_json(r#"{"n": 16, "trials": 2, "solver": {"mu": 0.6}}"#)
            .unwrap_err()
            .to_string();
        assert!(err.contains("solver.mu"), "{err}");
    }

    #[test]
    fn wrong_type_reports_path() {
        let err = BenchConfig::from_json(r#"{"n": 16, "m_over_n": 8, "trials": "ten"}"#)
            .unwrap_err()
            .to_string();
        assert!(err.contains("trials"), "{err}");
    }

    #[test]
    fn unknown_algorithm_is_rejected() {
        let err = BenchConfig::from_json(r#"{"n": 16, "m_over_n": 8, "trials": 1, "algorithms": ["gd"]}"#)
            .unwrap_err()
            .to_string();
        assert!(err.contains("algorithms[0]"), "{err}");
    }

    #[test]
    fn empty_grid_is_invalid() {
        let c = SweepConfig::from_json(r#"{"n": 16, "m_over_n": [], "trials": 2}"#).unwrap();
        assert!(matches!(c.spec(), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn beta_keys_need_beta_mode() {
        let c = SweepConfig::from_json(r#"{"n": 16, "m_over_n": [4], "trials": 2, "betas": [0.5]}"#)
            .unwrap();
        assert!(c.spec().is_err());
        let c = SweepConfig::from_json(r#"{"mode": "beta", "n": 16, "trials": 2, "betas": [0.5]}"#)
            .unwrap();
        assert!(c.spec().is_ok());
        assert_eq!(c.beta_sweep().betas, vec![0.5]);
        assert_eq!(c.beta_sweep().random_m_over_n, 4.0);
    }

    #[test]
    fn bench_thresholds_default() {
        let c = BenchConfig::from_json(r#"{"n": 16, "m_over_n": 8, "trials": 1}"#).unwrap();
        assert_eq!(c.thresholds, vec![1e-5, 1e-10]);
        assert!(!c.record_time);
    }
}
