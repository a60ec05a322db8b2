//! Sweeps, figure presets and CSV output binding both engines.
//!
//! A config file is the model schema plus an `[experiment]` block:
//!
//! ```toml
//! [pico]
//! antennas = 32
//!
//! [experiment]
//! metric = "coverage"
//! tier = 2
//! axis = "tau_db"
//! values = [-10.0, 0.0, 10.0, 20.0]
//! engine = "both"
//! n_drops = 100000
//! seed = 7
//! output = "coverage.csv"
//! ```
//!
//! An `[experiment]` block with `preset = "<name>"` runs that preset on top
//! of the file's model instead.

mod presets;
mod table;

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;

pub use presets::{configure_preset, logspace, preset, preset_names, run_preset, PresetOptions, CARRIER_ROWS, PRESET_NAMES};
pub use table::{ResultTable, Row};

use crate::analytic::{AnalyticEngine, Scheme, Tier1Variant};
use crate::error::{Error, Result};
use crate::model::{ModelConfig, NetworkModel, Tier};
use crate::montecarlo::{simulate_curve, simulate_metric, Estimate, Metric, SimOptions};

/// Swept quantity, in boundary units.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisVariable {
    /// SINR threshold in dB.
    TauDb,
    /// Rate threshold in bits/s.
    RateThreshold,
    /// Pico density in multiples of `1/(250²π)` m⁻².
    Lambda2,
    /// Pico cache size.
    M2,
    /// Pico array size.
    N2,
    /// Pico carrier in GHz; the intercept follows free space.
    Carrier,
}

impl AxisVariable {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "tau_db" => Self::TauDb,
            "rate_threshold" => Self::RateThreshold,
            "lambda2" => Self::Lambda2,
            "M2" | "m2" => Self::M2,
            "N2" | "n2" => Self::N2,
            "carrier" => Self::Carrier,
            other => {
                return Err(Error::Config(format!(
                    "unknown axis {other:?}; expected tau_db, rate_threshold, lambda2, M2, N2 or carrier"
                )))
            }
        })
    }

    fn is_model_parameter(self) -> bool {
        !matches!(self, Self::TauDb | Self::RateThreshold)
    }

    /// Applies a model-parameter axis value to `cfg`.
    fn apply(self, cfg: &mut ModelConfig, value: f64) -> Result<()> {
        let integer = |v: f64| -> Result<u64> {
            if v >= 1.0 && v.fract() == 0.0 {
                Ok(v as u64)
            } else {
                Err(Error::Config(format!("axis value {v} must be a positive integer")))
            }
        };
        match self {
            Self::TauDb | Self::RateThreshold => {}
            Self::Lambda2 => cfg.pico.density = value,
            Self::M2 => cfg.cache.storage[1] = integer(value)? as usize,
            Self::N2 => cfg.pico.antennas = integer(value)? as u32,
            Self::Carrier => {
                cfg.pico.carrier_hz = value * 1e9;
                cfg.pico.intercept = None;
            }
        }
        Ok(())
    }
}

/// Which engines fill the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Engines {
    pub analytic: bool,
    pub montecarlo: bool,
}

impl Engines {
    pub const ANALYTIC: Self = Self { analytic: true, montecarlo: false };
    pub const MONTECARLO: Self = Self { analytic: false, montecarlo: true };
    pub const BOTH: Self = Self { analytic: true, montecarlo: true };

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(Self::ANALYTIC),
            "mc" | "montecarlo" => Ok(Self::MONTECARLO),
            "both" => Ok(Self::BOTH),
            other => Err(Error::Config(format!(
                "unknown engine {other:?}; expected analytic, mc or both"
            ))),
        }
    }
}

pub fn parse_scheme(s: &str) -> Result<Scheme> {
    Scheme::ALL
        .into_iter()
        .find(|scheme| scheme.name() == s)
        .ok_or_else(|| Error::Config(format!("unknown scheme {s:?}; expected max_rp or max_rate")))
}

/// One curve: a metric swept along one axis.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub name: String,
    pub model: ModelConfig,
    pub metric: Metric,
    pub scheme: Scheme,
    pub axis: AxisVariable,
    pub values: Vec<f64>,
    /// Coverage threshold (dB) when the axis is a model parameter.
    pub tau_db: f64,
    /// Rate threshold (bits/s) when the axis is a model parameter.
    pub rate_threshold: f64,
    pub engines: Engines,
    pub n_drops: u64,
    pub seed: Option<u64>,
    /// Thermal noise in both engines; the analytic macro tier then uses the
    /// exact integral.
    pub include_noise: bool,
    /// NLOS pico interferers, Monte Carlo only.
    pub include_nlos: bool,
    pub output: PathBuf,
}

impl ExperimentSpec {
    /// A sweep on the default model, analytic only, written to `<name>.csv`.
    pub fn new(name: &str, metric: Metric, scheme: Scheme, axis: AxisVariable, values: Vec<f64>) -> Self {
        Self {
            name: name.to_owned(),
            model: ModelConfig::default(),
            metric,
            scheme,
            axis,
            values,
            tau_db: 0.0,
            rate_threshold: 1e8,
            engines: Engines::ANALYTIC,
            n_drops: 10_000,
            seed: None,
            include_noise: false,
            include_nlos: false,
            output: PathBuf::from(format!("{name}.csv")),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let cfg = |msg: String| Err(Error::Config(format!("experiment {:?}: {msg}", self.name)));
        if self.values.is_empty() {
            return cfg("axis has no values".into());
        }
        if self.values.iter().any(|v| !v.is_finite()) || self.values.windows(2).any(|w| w[0] >= w[1]) {
            return cfg("axis values must be finite and strictly increasing".into());
        }
        if !self.engines.analytic && !self.engines.montecarlo {
            return cfg("no engine selected".into());
        }
        if self.engines.montecarlo {
            if self.seed.is_none() {
                return cfg("Monte Carlo requested without a seed".into());
            }
            if self.n_drops == 0 {
                return cfg("n_drops must be at least 1".into());
            }
        }
        match (self.metric, self.axis) {
            (Metric::Coverage { .. }, AxisVariable::RateThreshold) => {
                return cfg("coverage is swept over tau_db, not rate_threshold".into())
            }
            (Metric::Success | Metric::Ase, AxisVariable::TauDb) => {
                return cfg("success and ASE are swept over rate_threshold, not tau_db".into())
            }
            (Metric::Association { .. }, a) if !a.is_model_parameter() => {
                return cfg("association does not depend on a threshold; sweep a model parameter".into())
            }
            _ => {}
        }
        if self.rate_threshold <= 0.0 || !self.rate_threshold.is_finite() || !self.tau_db.is_finite() {
            return cfg("fixed thresholds must be finite (rate > 0)".into());
        }
        for &v in &self.values {
            self.model_at(v)?;
            if self.axis == AxisVariable::RateThreshold && v <= 0.0 {
                return cfg("rate thresholds must be > 0".into());
            }
        }
        Ok(())
    }

    fn model_at(&self, value: f64) -> Result<NetworkModel> {
        let mut cfg = self.model.clone();
        self.axis.apply(&mut cfg, value)?;
        cfg.build()
    }

    /// Metric argument at an axis value: linear τ or `R_th`.
    fn argument(&self, value: f64) -> f64 {
        let db = |d: f64| 10f64.powf(d / 10.0);
        match (self.axis, self.metric) {
            (AxisVariable::TauDb, _) => db(value),
            (AxisVariable::RateThreshold, _) => value,
            (_, Metric::Coverage { .. }) => db(self.tau_db),
            _ => self.rate_threshold,
        }
    }

    fn sim_options(&self) -> SimOptions {
        SimOptions {
            include_noise: self.include_noise,
            include_nlos: self.include_nlos,
            forced_file: None,
        }
    }
}

fn analytic_value(spec: &ExperimentSpec, engine: &AnalyticEngine, x: f64) -> Result<f64> {
    match spec.metric {
        Metric::Coverage { tier: Tier::Pico, file } => engine.coverage_tier2(file, x, spec.include_noise),
        Metric::Coverage { tier: Tier::Macro, file } => {
            let variant = if spec.include_noise { Tier1Variant::Exact } else { Tier1Variant::Sir };
            engine.coverage_tier1(file, x, variant)
        }
        Metric::Success => engine.success_probability(spec.scheme, x),
        Metric::Ase => engine.area_spectral_efficiency(spec.scheme, x),
        Metric::Association { tier } => engine.association_probability(spec.scheme, tier),
    }
}

fn analytic_column(spec: &ExperimentSpec) -> Result<Vec<f64>> {
    if spec.axis.is_model_parameter() {
        spec.values
            .par_iter()
            .map(|&v| {
                let engine = AnalyticEngine::new(spec.model_at(v)?)?;
                analytic_value(spec, &engine, spec.argument(v))
            })
            .collect()
    } else {
        let engine = AnalyticEngine::new(spec.model.build()?)?;
        spec.values
            .par_iter()
            .map(|&v| analytic_value(spec, &engine, spec.argument(v)))
            .collect()
    }
}

fn mc_column(spec: &ExperimentSpec, seed: u64) -> Result<Vec<Estimate>> {
    let options = spec.sim_options();
    if spec.axis.is_model_parameter() {
        spec.values
            .par_iter()
            .map(|&v| {
                let model = spec.model_at(v)?;
                simulate_metric(spec.metric, spec.scheme, spec.argument(v), &model, spec.n_drops, seed, &options)
            })
            .collect()
    } else {
        // threshold axes share one set of drops
        let model = spec.model.build()?;
        let args: Vec<f64> = spec.values.iter().map(|&v| spec.argument(v)).collect();
        simulate_curve(spec.metric, spec.scheme, &args, &model, spec.n_drops, seed, &options)
    }
}

/// Evaluates the sweep without writing anything.
pub fn evaluate(spec: &ExperimentSpec) -> Result<ResultTable> {
    spec.validate()?;
    let analytic = if spec.engines.analytic { Some(analytic_column(spec)?) } else { None };
    let mc = match (spec.engines.montecarlo, spec.seed) {
        (true, Some(seed)) => Some(mc_column(spec, seed)?),
        _ => None,
    };
    let rows = spec
        .values
        .iter()
        .enumerate()
        .map(|(i, &axis)| {
            let est = mc.as_ref().map(|m| m[i]);
            Row {
                axis,
                value_analytic: analytic.as_ref().map(|a| a[i]),
                value_mc: est.map(|e| e.mean),
                mc_half_width: est.map(|e| e.half_width_95),
                n_drops: est.map(|e| e.n_samples),
                seed: est.and(spec.seed),
            }
        })
        .collect();
    Ok(ResultTable { rows })
}

/// Evaluates the sweep and writes its CSV to `spec.output`.
pub fn run(spec: &ExperimentSpec) -> Result<ResultTable> {
    let table = evaluate(spec)?;
    table.write_csv(&spec.output)?;
    log::info!("wrote {} rows to {}", table.rows.len(), spec.output.display());
    Ok(table)
}

/// The `[experiment]` block of a config file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExperimentBlock {
    name: Option<String>,
    preset: Option<String>,
    metric: Option<String>,
    tier: Option<u8>,
    file: Option<usize>,
    scheme: Option<String>,
    axis: Option<String>,
    values: Option<Vec<f64>>,
    tau_db: Option<f64>,
    rate_threshold: Option<f64>,
    engine: Option<String>,
    n_drops: Option<u64>,
    seed: Option<u64>,
    output: Option<PathBuf>,
    noise: Option<bool>,
    nlos: Option<bool>,
}

/// What a config file asks for.
#[derive(Debug, Clone, PartialEq)]
pub enum ConfigRequest {
    Sweep(ExperimentSpec),
    Preset { name: String, model: ModelConfig, options: PresetOptions },
}

fn parse_metric(block: &ExperimentBlock) -> Result<Metric> {
    let tier = || -> Result<Tier> {
        let n = block
            .tier
            .ok_or_else(|| Error::Config("experiment.tier (1 or 2) is required for this metric".into()))?;
        Tier::from_number(n)
    };
    let name = block
        .metric
        .as_deref()
        .ok_or_else(|| Error::Config("experiment.metric is required".into()))?;
    Ok(match name {
        "coverage" => Metric::Coverage {
            tier: tier()?,
            file: block.file.unwrap_or(1),
        },
        "success" => Metric::Success,
        "ase" => Metric::Ase,
        "association" => Metric::Association { tier: tier()? },
        other => {
            return Err(Error::Config(format!(
                "unknown metric {other:?}; expected coverage, success, ase or association"
            )))
        }
    })
}

/// Parses a config file's text.
pub fn parse_config(text: &str) -> Result<ConfigRequest> {
    let mut table: toml::Table = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    let block: ExperimentBlock = match table.remove("experiment") {
        Some(value) => value.try_into().map_err(|e: toml::de::Error| Error::Config(e.to_string()))?,
        None => return Err(Error::Config("missing [experiment] block".into())),
    };
    let model = ModelConfig::from_table(table)?;
    let engines = Engines::parse(block.engine.as_deref().unwrap_or("analytic"))?;

    if let Some(name) = block.preset.clone() {
        let options = PresetOptions {
            engines,
            n_drops: block.n_drops,
            seed: block.seed,
            out_dir: block.output.clone().unwrap_or_else(|| PathBuf::from(&name)),
        };
        preset(&name, &model)?;
        return Ok(ConfigRequest::Preset { name, model, options });
    }

    let metric = parse_metric(&block)?;
    let axis = AxisVariable::parse(
        block
            .axis
            .as_deref()
            .ok_or_else(|| Error::Config("experiment.axis is required".into()))?,
    )?;
    let values = block
        .values
        .clone()
        .ok_or_else(|| Error::Config("experiment.values is required".into()))?;
    let name = block.name.clone().unwrap_or_else(|| "experiment".into());
    let mut spec = ExperimentSpec::new(&name, metric, parse_scheme(block.scheme.as_deref().unwrap_or("max_rp"))?, axis, values);
    spec.model = model;
    spec.engines = engines;
    spec.seed = block.seed;
    spec.n_drops = block.n_drops.unwrap_or(match metric {
        Metric::Coverage { .. } => 100_000,
        _ => 10_000,
    });
    spec.tau_db = block.tau_db.unwrap_or(spec.tau_db);
    spec.rate_threshold = block.rate_threshold.unwrap_or(spec.rate_threshold);
    spec.include_noise = block.noise.unwrap_or(false);
    spec.include_nlos = block.nlos.unwrap_or(false);
    if let Some(out) = block.output {
        spec.output = out;
    }
    spec.validate()?;
    Ok(ConfigRequest::Sweep(spec))
}

pub fn load_config(path: &Path) -> Result<ConfigRequest> {
    parse_config(&std::fs::read_to_string(path)?)
}

/// Loads and runs a config file; returns the paths written.
pub fn run_config(path: &Path) -> Result<Vec<PathBuf>> {
    match load_config(path)? {
        ConfigRequest::Sweep(spec) => {
            run(&spec)?;
            Ok(vec![spec.output])
        }
        ConfigRequest::Preset { name, model, options } => {
            Ok(run_preset(&name, &model, &options)?.into_iter().map(|(p, _)| p).collect())
        }
    }
}
