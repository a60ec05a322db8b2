//! Figure-reproduction presets. Each preset is a list of curves on top of a
//! base model; multi-curve presets write one CSV per curve.

use std::path::PathBuf;

use crate::analytic::Scheme;
use crate::error::{Error, Result};
use crate::model::{ModelConfig, Tier};
use crate::montecarlo::Metric;

use super::{run, AxisVariable, Engines, ExperimentSpec, ResultTable};

pub const PRESET_NAMES: [&str; 5] = ["fig_coverage", "fig_success", "fig_ase", "fig_carrier", "fig_policies"];

/// Pico carrier (GHz), path-loss exponent and array size per carrier row.
pub const CARRIER_ROWS: [(f64, f64, u32); 4] = [(28.0, 2.0, 10), (38.0, 2.0, 20), (60.0, 2.25, 40), (73.0, 2.0, 80)];

pub fn preset_names() -> &'static [&'static str] {
    &PRESET_NAMES
}

/// `n` log-spaced points from `10^a` to `10^b`, endpoints exact.
pub fn logspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![10f64.powf(a)];
    }
    (0..n)
        .map(|k| 10f64.powf(a + (b - a) * k as f64 / (n - 1) as f64))
        .collect()
}

fn rate_axis() -> Vec<f64> {
    logspace(6.0, 10.0, 17)
}

fn curve(name: String, base: &ModelConfig, metric: Metric, scheme: Scheme, axis: AxisVariable, values: Vec<f64>) -> ExperimentSpec {
    let mut spec = ExperimentSpec::new(&name, metric, scheme, axis, values);
    spec.model = base.clone();
    spec
}

fn success_curves(prefix: &str, cfg: &ModelConfig, metric: Metric, axis: Vec<f64>) -> Vec<ExperimentSpec> {
    Scheme::ALL
        .into_iter()
        .map(|s| {
            let name = if prefix.is_empty() { s.name().to_owned() } else { format!("{}_{prefix}", s.name()) };
            curve(name, cfg, metric, s, AxisVariable::RateThreshold, axis.clone())
        })
        .collect()
}

/// Curves of preset `name` on `base`, analytic only and without a seed.
pub fn preset(name: &str, base: &ModelConfig) -> Result<Vec<ExperimentSpec>> {
    let mut curves = Vec::new();
    match name {
        "fig_coverage" => {
            let taus: Vec<f64> = (0..13).map(|k| -10.0 + 2.5 * k as f64).collect();
            for (label, tier, nlos) in [("macro", Tier::Macro, false), ("pico", Tier::Pico, false), ("pico_nlos", Tier::Pico, true)] {
                let metric = Metric::Coverage { tier, file: 1 };
                let mut c = curve(label.into(), base, metric, Scheme::MaxRp, AxisVariable::TauDb, taus.clone());
                c.include_nlos = nlos;
                c.n_drops = 100_000;
                curves.push(c);
            }
        }
        "fig_success" => {
            let mut cfg = base.clone();
            cfg.cache.storage[1] = 10;
            cfg.macro_tier.bandwidth_hz = 200e6;
            curves.extend(success_curves("", &cfg, Metric::Success, rate_axis()));
        }
        "fig_ase" => {
            for lambda2 in [10.0, 20.0, 30.0] {
                let mut cfg = base.clone();
                cfg.cache.storage[0] = 10;
                cfg.macro_tier.bandwidth_hz = 200e6;
                cfg.pico.density = lambda2;
                let label = format!("lambda{lambda2}");
                curves.extend(success_curves(&label, &cfg, Metric::Ase, logspace(6.0, 10.0, 50)));
            }
        }
        "fig_carrier" => {
            for (ghz, alpha, antennas) in CARRIER_ROWS {
                let mut cfg = base.clone();
                cfg.cache.storage[1] = 20;
                cfg.network.backhaul_bps = 1e8;
                cfg.pico.carrier_hz = ghz * 1e9;
                cfg.pico.intercept = None;
                cfg.pico.pathloss_exp = alpha;
                cfg.pico.antennas = antennas;
                curves.extend(success_curves(&format!("{ghz}ghz"), &cfg, Metric::Success, rate_axis()));
            }
        }
        "fig_policies" => {
            for storage in [[2, 5], [5, 2]] {
                for policy in ["most_popular", "uniform"] {
                    let mut cfg = base.clone();
                    cfg.macro_tier.bandwidth_hz = 500e6;
                    cfg.network.backhaul_bps = 1e6;
                    cfg.cache.catalog = 10;
                    cfg.cache.head = 8;
                    cfg.cache.storage = storage;
                    cfg.cache.policy = policy.into();
                    cfg.cache.placement = None;
                    let label = format!("{policy}_m1_{}_m2_{}", storage[0], storage[1]);
                    curves.extend(success_curves(&label, &cfg, Metric::Success, rate_axis()));
                }
            }
        }
        other => {
            return Err(Error::Config(format!(
                "unknown preset {other:?}; expected one of {}",
                PRESET_NAMES.join(", ")
            )))
        }
    }
    for c in &mut curves {
        c.output = PathBuf::from(format!("{}.csv", c.name));
    }
    Ok(curves)
}

/// Command-line overrides of a preset.
#[derive(Debug, Clone, PartialEq)]
pub struct PresetOptions {
    pub engines: Engines,
    /// Defaults to 10⁵ for coverage curves and 10⁴ otherwise.
    pub n_drops: Option<u64>,
    pub seed: Option<u64>,
    pub out_dir: PathBuf,
}

/// Curves of a preset with the options applied and outputs under `out_dir`.
pub fn configure_preset(name: &str, base: &ModelConfig, options: &PresetOptions) -> Result<Vec<ExperimentSpec>> {
    let mut curves = preset(name, base)?;
    for c in &mut curves {
        c.engines = options.engines;
        c.seed = options.seed;
        if let Some(n) = options.n_drops {
            c.n_drops = n;
        }
        c.output = options.out_dir.join(&c.output);
        c.validate()?;
    }
    Ok(curves)
}

/// Runs every curve of a preset; all curves are validated before any runs.
pub fn run_preset(name: &str, base: &ModelConfig, options: &PresetOptions) -> Result<Vec<(PathBuf, ResultTable)>> {
    configure_preset(name, base, options)?
        .into_iter()
        .map(|c| Ok((c.output.clone(), run(&c)?)))
        .collect()
}
