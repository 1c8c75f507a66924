//! Scenario files.
//!
//! A scenario is a TOML document with one table per concern:
//!
//! ```toml
//! name = "observation1"              # optional
//!
//! [params]
//! d1 = 1.0
//! d2 = 1.0
//! d3 = 1.0
//! mu1 = 2.0
//! mu2 = 2.0
//! q1 = 0.2                           # or chi1 = 0.4, never both
//! q2 = 0.1                           # or chi2 = ...
//! a1 = 0.6
//! a2 = 0.4
//! alpha = 1.0
//! beta = 1.0
//! gamma = 1.0
//!
//! [grid]
//! length = 3.0
//! n_cells = 600
//!
//! [stepper]                          # every key optional
//! dt = 1e-5
//! flux_scheme = "central"            # or "upwind"
//! positivity_clip = false
//! cfl_safety = 0.9
//! allow_unstable_dt = false
//!
//! [initial]
//! u = "cosine-bump(2, 1.5, 0.6)"
//! v = "shifted-parabola(1)"
//! # w = ...                          # accepted and ignored: the signal is slaved to (u, v)
//!
//! [run]
//! t_end = 10.0
//! snapshot_times = [1e-5, 0.05, 1.0]
//! extrema_sample_stride = 100        # default 100
//! dense_sampling_until = 0.03        # optional: sample every dense_sample_stride steps before this time
//! dense_sample_stride = 1            # default 1
//! output_dir = "out/observation1"    # optional
//!
//! [diagnostics]                      # every key optional
//! tol_dist = 1e-2
//! tol_homog = 1e-3
//! tol_resid = 1e-2
//! window_fraction = 0.2
//! ```
//!
//! Snapshot times are rounded to the nearest multiple of `dt`.

use std::path::{Path, PathBuf};

use chemocomp_core::{Grid1D, InitialDataSpec, ModelParams, StepperConfig, Tolerances};
use serde::{Deserialize, Serialize};

use crate::builtins;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub params: ParamsSection,
    pub grid: Grid1D,
    #[serde(default)]
    pub stepper: StepperConfig,
    pub initial: InitialSection,
    pub run: RunSection,
    #[serde(default)]
    pub diagnostics: Tolerances,
}

/// Model coefficients as written in a scenario: each species gives its
/// chemotactic strength either directly (`chi`) or relative to its growth
/// rate (`q = chi / mu`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSection {
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
    pub mu1: f64,
    pub mu2: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q2: Option<f64>,
    pub a1: f64,
    pub a2: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

fn chemotaxis(species: &str, chi: Option<f64>, q: Option<f64>, mu: f64) -> Result<f64> {
    match (chi, q) {
        (Some(chi), None) => Ok(chi),
        (None, Some(q)) => Ok(q * mu),
        (Some(_), Some(_)) => Err(CliError::Config(format!(
            "params: give exactly one of chi{species} and q{species}, not both"
        ))),
        (None, None) => Err(CliError::Config(format!(
            "params: missing chi{species} (or q{species})"
        ))),
    }
}

impl ParamsSection {
    /// Coefficients in the form the solver uses, with `q` converted to `chi`.
    pub fn to_model(&self) -> Result<ModelParams> {
        let p = ModelParams {
            d1: self.d1,
            d2: self.d2,
            d3: self.d3,
            chi1: chemotaxis("1", self.chi1, self.q1, self.mu1)?,
            chi2: chemotaxis("2", self.chi2, self.q2, self.mu2)?,
            mu1: self.mu1,
            mu2: self.mu2,
            a1: self.a1,
            a2: self.a2,
            alpha: self.alpha,
            beta: self.beta,
            gamma: self.gamma,
        };
        p.validate()?;
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSection {
    #[serde(with = "profile")]
    pub u: InitialDataSpec,
    #[serde(with = "profile")]
    pub v: InitialDataSpec,
    /// Unused: the signal is recomputed from the densities.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<String>,
}

mod profile {
    use chemocomp_core::InitialDataSpec;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(spec: &InitialDataSpec, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(spec)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<InitialDataSpec, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

fn default_stride() -> u64 {
    100
}

fn one() -> u64 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub t_end: f64,
    #[serde(default)]
    pub snapshot_times: Vec<f64>,
    #[serde(default = "default_stride")]
    pub extrema_sample_stride: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dense_sampling_until: Option<f64>,
    #[serde(default = "one")]
    pub dense_sample_stride: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
}

/// A requested snapshot time mapped onto the step grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScheduledSnapshot {
    pub requested: f64,
    pub step: u64,
    pub time: f64,
}

impl ScheduledSnapshot {
    pub fn rounding(&self) -> f64 {
        self.time - self.requested
    }
}

impl ScenarioConfig {
    pub fn model_params(&self) -> Result<ModelParams> {
        self.params.to_model()
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.model_params()?;
        let grid = Grid1D::new(self.grid.length, self.grid.n_cells)?;
        self.stepper.validate(&grid, &p)?;
        self.initial.u.sample(&grid)?;
        self.initial.v.sample(&grid)?;
        let run = &self.run;
        if !(run.t_end.is_finite() && run.t_end > 0.0) {
            return Err(CliError::Config(format!(
                "run.t_end = {} must be > 0",
                run.t_end
            )));
        }
        if let Some(&t) = run
            .snapshot_times
            .iter()
            .find(|&&t| !(t >= 0.0 && t <= run.t_end))
        {
            return Err(CliError::Config(format!(
                "snapshot time {t} outside [0, {}]",
                run.t_end
            )));
        }
        if run.extrema_sample_stride == 0 || run.dense_sample_stride == 0 {
            return Err(CliError::Config("sample strides must be >= 1".into()));
        }
        let tol = &self.diagnostics;
        if !(tol.dist >= 0.0 && tol.homog >= 0.0 && tol.resid >= 0.0) {
            return Err(CliError::Config("tolerances must be >= 0".into()));
        }
        if !(tol.window_fraction > 0.0 && tol.window_fraction <= 1.0) {
            return Err(CliError::Config(format!(
                "window_fraction = {} must lie in (0, 1]",
                tol.window_fraction
            )));
        }
        Ok(())
    }

    pub fn total_steps(&self) -> u64 {
        (self.run.t_end / self.stepper.dt).round() as u64
    }

    /// Snapshots sorted by step, duplicates after rounding removed.
    pub fn schedule(&self) -> Vec<ScheduledSnapshot> {
        let dt = self.stepper.dt;
        let mut out: Vec<ScheduledSnapshot> = self
            .run
            .snapshot_times
            .iter()
            .map(|&requested| {
                let step = (requested / dt).round() as u64;
                ScheduledSnapshot {
                    requested,
                    step,
                    time: step as f64 * dt,
                }
            })
            .collect();
        out.sort_by_key(|s| s.step);
        out.dedup_by_key(|s| s.step);
        out
    }

    pub fn to_toml(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    fn to_table(&self) -> Result<toml::Table> {
        match toml::Value::try_from(self)? {
            toml::Value::Table(t) => Ok(t),
            _ => Err(CliError::Config(
                "scenario did not serialize to a table".into(),
            )),
        }
    }

    /// Applies `section.key=value` overrides. Values are read as TOML
    /// literals, falling back to plain strings. Setting `q1` drops `chi1`
    /// and vice versa.
    pub fn with_overrides<S: AsRef<str>>(&self, overrides: &[S]) -> Result<Self> {
        if overrides.is_empty() {
            return Ok(self.clone());
        }
        let mut table = self.to_table()?;
        for raw in overrides {
            apply_override(&mut table, raw.as_ref())?;
        }
        Ok(toml::Value::Table(table).try_into()?)
    }
}

fn parse_value(text: &str) -> toml::Value {
    toml::from_str::<toml::Table>(&format!("value = {text}"))
        .ok()
        .and_then(|mut t| t.remove("value"))
        .unwrap_or_else(|| toml::Value::String(text.to_string()))
}

fn apply_override(table: &mut toml::Table, raw: &str) -> Result<()> {
    let (path, value) = raw
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("override `{raw}` is not key=value")))?;
    let value = parse_value(value.trim());
    let keys: Vec<&str> = path.trim().split('.').map(str::trim).collect();
    let (last, parents) = keys
        .split_last()
        .ok_or_else(|| CliError::Config(format!("empty override key in `{raw}`")))?;
    let mut cursor = table;
    for key in parents {
        cursor = cursor
            .entry(key.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()))
            .as_table_mut()
            .ok_or_else(|| CliError::Config(format!("`{key}` is not a section")))?;
    }
    if parents == ["params"] {
        let twin = match *last {
            "q1" => Some("chi1"),
            "chi1" => Some("q1"),
            "q2" => Some("chi2"),
            "chi2" => Some("q2"),
            _ => None,
        };
        if let Some(twin) = twin {
            cursor.remove(twin);
        }
    }
    cursor.insert(last.to_string(), value);
    Ok(())
}

/// Resolves a built-in scenario name or a path to a scenario file.
pub fn load_scenario(source: &str) -> Result<ScenarioConfig> {
    if let Some(config) = builtins::builtin(source) {
        return Ok(config);
    }
    let path = Path::new(source);
    if !path.exists() {
        return Err(CliError::Config(format!(
            "`{source}` is neither a file nor a built-in scenario (see `list`)"
        )));
    }
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut config = ScenarioConfig::from_toml(&text)?;
    if config.name.is_none() {
        config.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
    }
    Ok(config)
}
