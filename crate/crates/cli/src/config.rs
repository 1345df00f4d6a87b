//! Scenario configuration: a single JSON document mirroring the field names
//! below in snake_case. CLI flags override file values.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use fiberqed::{Delta, SystemParams};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse config {path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error("unknown preset '{name}'; valid presets: {valid}")]
    UnknownPreset { name: String, valid: String },
    #[error("unknown initial state '{0}'; valid: ket00, ket01, ket10, ket11, S, T")]
    UnknownInitialState(String),
    #[error("cannot parse delta '{0}': expected a number or \"auto_T4\"")]
    BadDelta(String),
}

/// Zero-excitation photon-vacuum initial states.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InitialState {
    #[serde(rename = "ket00")]
    Ket00,
    #[serde(rename = "ket01")]
    Ket01,
    #[serde(rename = "ket10")]
    Ket10,
    #[serde(rename = "ket11")]
    Ket11,
    S,
    T,
}

impl InitialState {
    pub fn label(self) -> &'static str {
        match self {
            InitialState::Ket00 => "ket00",
            InitialState::Ket01 => "ket01",
            InitialState::Ket10 => "ket10",
            InitialState::Ket11 => "ket11",
            InitialState::S => "S",
            InitialState::T => "T",
        }
    }
}

impl FromStr for InitialState {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "ket00" => Ok(InitialState::Ket00),
            "ket01" => Ok(InitialState::Ket01),
            "ket10" => Ok(InitialState::Ket10),
            "ket11" => Ok(InitialState::Ket11),
            "S" => Ok(InitialState::S),
            "T" => Ok(InitialState::T),
            other => Err(ConfigError::UnknownInitialState(other.to_string())),
        }
    }
}

impl fmt::Display for InitialState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Sweepable parameters: rates and drive amplitudes only (never g, which is
/// the unit, and never the detuning).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamField {
    Nu,
    Omega,
    OmegaMw,
    Beta,
    Kappa,
    Gamma,
}

impl ParamField {
    pub fn name(self) -> &'static str {
        match self {
            ParamField::Nu => "nu",
            ParamField::Omega => "omega",
            ParamField::OmegaMw => "omega_mw",
            ParamField::Beta => "beta",
            ParamField::Kappa => "kappa",
            ParamField::Gamma => "gamma",
        }
    }

    pub fn base(self, params: &SystemParams) -> f64 {
        match self {
            ParamField::Nu => params.nu,
            ParamField::Omega => params.omega,
            ParamField::OmegaMw => params.omega_mw,
            ParamField::Beta => params.beta,
            ParamField::Kappa => params.kappa,
            ParamField::Gamma => params.gamma,
        }
    }

    pub fn set(self, params: &mut SystemParams, value: f64) {
        match self {
            ParamField::Nu => params.nu = value,
            ParamField::Omega => params.omega = value,
            ParamField::OmegaMw => params.omega_mw = value,
            ParamField::Beta => params.beta = value,
            ParamField::Kappa => params.kappa = value,
            ParamField::Gamma => params.gamma = value,
        }
    }
}

/// Grid of one sweep axis: either a uniform range or explicit values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AxisGrid {
    Range { lo: f64, hi: f64, points: usize },
    Explicit { values: Vec<f64> },
}

impl AxisGrid {
    pub fn values(&self) -> Vec<f64> {
        match self {
            AxisGrid::Range { lo, hi, points } => {
                let n = *points;
                (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1).max(1) as f64).collect()
            }
            AxisGrid::Explicit { values } => values.clone(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AxisGrid::Range { points, .. } => *points,
            AxisGrid::Explicit { values } => values.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// One sweep axis: applies the same grid value to every named field. In
/// `relative` mode a grid value x sets each field to `base·(1 + x)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepAxis {
    pub fields: Vec<ParamField>,
    #[serde(flatten)]
    pub grid: AxisGrid,
    #[serde(default)]
    pub relative: bool,
}

impl SweepAxis {
    /// CSV column name: field names joined by `_`, suffixed `_rel` for
    /// relative axes.
    pub fn column_name(&self) -> String {
        let mut name = self.fields.iter().map(|f| f.name()).collect::<Vec<_>>().join("_");
        if self.relative {
            name.push_str("_rel");
        }
        name
    }

    pub fn apply(&self, params: &mut SystemParams, grid_value: f64) {
        for field in &self.fields {
            let value = if self.relative { field.base(params) * (1.0 + grid_value) } else { grid_value };
            field.set(params, value);
        }
    }

    fn validate(&self) -> Result<(), ConfigError> {
        if self.fields.is_empty() {
            return Err(ConfigError::Invalid("sweep axis names no fields".into()));
        }
        match &self.grid {
            AxisGrid::Range { lo, hi, points } => {
                if *points < 2 {
                    return Err(ConfigError::Invalid(format!("sweep axis needs at least 2 points, got {points}")));
                }
                if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                    return Err(ConfigError::Invalid(format!("sweep range [{lo}, {hi}] is not an increasing interval")));
                }
            }
            AxisGrid::Explicit { values } => {
                if values.is_empty() {
                    return Err(ConfigError::Invalid("sweep axis has an empty value list".into()));
                }
                if values.iter().any(|v| !v.is_finite()) {
                    return Err(ConfigError::Invalid("sweep axis has a non-finite value".into()));
                }
            }
        }
        Ok(())
    }
}

/// A full scenario: parameters, initial state, time grid, optional sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub params: SystemParams,
    pub initial_state: InitialState,
    /// Horizon of time-series runs, in units of 1/g.
    pub t_max: f64,
    /// Grid points including t = 0; the default keeps the step at 10/g.
    pub n_records: usize,
    /// Up to two axes; empty means a plain time-series run.
    pub sweep: Vec<SweepAxis>,
    /// Evaluation time for sweep grids. Sweeps without it emit one full time
    /// series per grid point.
    pub record_time: Option<f64>,
    /// Also solve for the steady state and emit a summary next to the time
    /// series.
    pub evaluate_steady_state: bool,
    pub output: PathBuf,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            params: SystemParams::default(),
            initial_state: InitialState::Ket11,
            t_max: 1e4,
            n_records: 1001,
            sweep: Vec::new(),
            record_time: None,
            evaluate_steady_state: false,
            output: PathBuf::from("scenario.csv"),
        }
    }
}

impl ScenarioConfig {
    pub fn from_json_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read { path: path.into(), source })?;
        let config: ScenarioConfig =
            serde_json::from_str(&text).map_err(|source| ConfigError::Parse { path: path.into(), source })?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return Err(ConfigError::Invalid(format!("t_max must be positive, got {}", self.t_max)));
        }
        if self.n_records < 2 {
            return Err(ConfigError::Invalid(format!("n_records must be at least 2, got {}", self.n_records)));
        }
        if self.sweep.len() > 2 {
            return Err(ConfigError::Invalid(format!("at most 2 sweep axes are supported, got {}", self.sweep.len())));
        }
        for axis in &self.sweep {
            axis.validate()?;
        }
        if let Some(rt) = self.record_time {
            if !(rt.is_finite() && rt > 0.0) {
                return Err(ConfigError::Invalid(format!("record_time must be positive, got {rt}")));
            }
            if self.sweep.is_empty() {
                return Err(ConfigError::Invalid("record_time is only meaningful for sweep runs".into()));
            }
        }
        if self.evaluate_steady_state && !self.sweep.is_empty() {
            return Err(ConfigError::Invalid("steady-state evaluation applies to plain time-series runs only".into()));
        }
        Ok(())
    }

    /// Uniform record grid for time-series runs.
    pub fn time_grid(&self) -> Vec<f64> {
        uniform_grid(self.t_max, self.n_records)
    }

    /// Uniform grid up to the sweep evaluation time, keeping the configured
    /// step density.
    pub fn sweep_grid(&self) -> Option<Vec<f64>> {
        let rt = self.record_time?;
        let step = self.t_max / (self.n_records - 1) as f64;
        let n = (rt / step).round().max(1.0) as usize + 1;
        Some(uniform_grid(rt, n))
    }
}

pub fn uniform_grid(t_max: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| t_max * k as f64 / (n - 1).max(1) as f64).collect()
}

/// Parse a CLI `--delta` value: a number or the auto sentinel.
pub fn parse_delta(text: &str) -> Result<Delta, ConfigError> {
    if text.eq_ignore_ascii_case("auto_T4") {
        return Ok(Delta::AutoT4);
    }
    text.parse::<f64>().map(Delta::Value).map_err(|_| ConfigError::BadDelta(text.to_string()))
}
