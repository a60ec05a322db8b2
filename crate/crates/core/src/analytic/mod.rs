//! Closed-form and semi-closed-form performance expressions.
//!
//! Everything is evaluated through an [`AnalyticEngine`], which precomputes
//! the quadrature nodes and the beam-gain samples of a [`NetworkModel`].
//! The free functions at the bottom of this module build a throwaway engine
//! for one-off queries.
//!
//! Noise is dropped from every association-level formula (coverage under a
//! scheme, success probability, ASE); only the standalone per-tier coverage
//! functions accept a noise flag.

mod association;
mod laplace;
mod success;
mod tier1;

use crate::error::{invalid, Result};
use crate::model::{NetworkModel, Tier};
use crate::numerics::{eta_l, QuadratureRule};

pub use laplace::{interference_kernel, interference_kernel_slope};

/// User association rule among the BSs caching the requested file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Largest biased average received power.
    MaxRp,
    /// Largest biased instantaneous rate.
    MaxRate,
}

impl Scheme {
    pub const ALL: [Scheme; 2] = [Scheme::MaxRp, Scheme::MaxRate];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::MaxRp => "max_rp",
            Scheme::MaxRate => "max_rate",
        }
    }
}

/// Which macro-tier coverage expression to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tier1Variant {
    /// Numerical integration over the serving distance, with noise.
    Exact,
    /// Closed form through `erfc`, with noise; requires `α₁ = 4`.
    ClosedAlpha4,
    /// Interference-limited closed form.
    Sir,
}

/// Placement probabilities of one file, `(p_{1,f}, p_{2,f})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Placement {
    pub macro_prob: f64,
    pub pico_prob: f64,
}

impl Placement {
    pub fn new(macro_prob: f64, pico_prob: f64) -> Result<Self> {
        for p in [macro_prob, pico_prob] {
            if !(0.0..=1.0).contains(&p) {
                return invalid(format!("placement probability {p} outside [0, 1]"));
            }
        }
        Ok(Self {
            macro_prob,
            pico_prob,
        })
    }

    pub fn get(self, tier: Tier) -> f64 {
        match tier {
            Tier::Macro => self.macro_prob,
            Tier::Pico => self.pico_prob,
        }
    }
}

/// A single coverage evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageQuery {
    pub tier: Tier,
    pub file: usize,
    /// Linear SINR threshold.
    pub threshold: f64,
    pub include_noise: bool,
}

impl CoverageQuery {
    pub fn validate(&self, model: &NetworkModel) -> Result<()> {
        check_threshold(self.threshold)?;
        check_head_file(self.file, model)
    }
}

/// A curve over an increasing axis, optionally with 95% half-widths.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricCurve {
    pub axis: Vec<f64>,
    pub values: Vec<f64>,
    pub half_widths: Option<Vec<f64>>,
}

impl MetricCurve {
    pub fn new(axis: Vec<f64>, values: Vec<f64>, half_widths: Option<Vec<f64>>) -> Result<Self> {
        if axis.len() != values.len() || half_widths.as_ref().is_some_and(|h| h.len() != axis.len())
        {
            return invalid("curve columns have different lengths");
        }
        if axis.windows(2).any(|w| !(w[0] < w[1])) {
            return invalid("curve axis must be strictly increasing");
        }
        Ok(Self {
            axis,
            values,
            half_widths,
        })
    }

    /// Index of the largest value; first one on ties.
    pub fn argmax(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, v) in self.values.iter().enumerate() {
            if best.is_none_or(|b| *v > self.values[b]) {
                best = Some(i);
            }
        }
        best
    }
}

/// Accuracy knobs for the adaptive integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticOptions {
    /// Absolute tolerance of the adaptive integrals over `τ` and `r`.
    pub abs_tol: f64,
    /// Recompute every Max-Rate tail a second way and fail on disagreement.
    pub cross_check: bool,
    /// Allowed disagreement of the two tail computations.
    pub cross_check_tol: f64,
}

impl Default for AnalyticOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-8,
            cross_check: true,
            cross_check_tol: 1e-6,
        }
    }
}

/// Analytic evaluator bound to one network model.
#[derive(Debug, Clone)]
pub struct AnalyticEngine {
    model: NetworkModel,
    options: AnalyticOptions,
    /// Beam-offset rule over `x ∈ (−1, 1)`, `ω = x·d/λ`.
    beam_rule: QuadratureRule,
    /// `G₂(ω_k)` at every beam node.
    beam_gains: Vec<f64>,
    distance_rule: QuadratureRule,
    pdf_rule: QuadratureRule,
    eta: f64,
}

impl AnalyticEngine {
    pub fn new(model: NetworkModel) -> Result<Self> {
        Self::with_options(model, AnalyticOptions::default())
    }

    pub fn with_options(model: NetworkModel, options: AnalyticOptions) -> Result<Self> {
        model.validate()?;
        if !(options.abs_tol > 0.0) || !(options.cross_check_tol > 0.0) {
            return invalid("integration tolerances must be positive");
        }
        let q = model.quad_orders;
        let beam_rule = QuadratureRule::gauss_chebyshev(q.u1)?;
        let antennas = model.tier(Tier::Pico).antennas;
        let spacing = model.antenna_spacing_ratio;
        let beam_gains = beam_rule
            .nodes()
            .iter()
            .map(|&x| crate::model::array_gain(x * spacing, antennas))
            .collect();
        let eta = eta_l(model.tier(Tier::Pico).fading_order);
        Ok(Self {
            options,
            beam_rule,
            beam_gains,
            distance_rule: QuadratureRule::gauss_chebyshev(q.u2)?,
            pdf_rule: QuadratureRule::gauss_chebyshev(q.u3)?,
            eta,
            model,
        })
    }

    pub fn model(&self) -> &NetworkModel {
        &self.model
    }

    pub fn options(&self) -> AnalyticOptions {
        self.options
    }

    /// Placement probabilities of a head file.
    pub fn placement(&self, file: usize) -> Result<Placement> {
        check_head_file(file, &self.model)?;
        Ok(Placement {
            macro_prob: self.model.cache.placement_prob(Tier::Macro, file)?,
            pico_prob: self.model.cache.placement_prob(Tier::Pico, file)?,
        })
    }

    /// Head files grouped by identical placement, each with its summed
    /// request probability. Every file-summed metric depends on a file only
    /// through its placement, so sums run over these groups.
    pub fn placement_classes(&self) -> Vec<(Placement, f64)> {
        let cache = &self.model.cache;
        let mut classes: Vec<(Placement, f64)> = Vec::new();
        for f in 1..=cache.head() {
            let p = Placement {
                macro_prob: cache.placement(Tier::Macro)[f - 1],
                pico_prob: cache.placement(Tier::Pico)[f - 1],
            };
            let weight = cache.popularities()[f - 1];
            match classes.iter_mut().find(|(q, _)| *q == p) {
                Some((_, w)) => *w += weight,
                None => classes.push((p, weight)),
            }
        }
        classes
    }
}

fn check_threshold(tau: f64) -> Result<()> {
    if !(tau > 0.0) || tau.is_nan() {
        return invalid(format!("SINR threshold must be positive, got {tau}"));
    }
    Ok(())
}

fn check_rate(rate: f64) -> Result<()> {
    if !(rate > 0.0) || rate.is_nan() {
        return invalid(format!("rate threshold must be positive, got {rate}"));
    }
    Ok(())
}

fn check_head_file(file: usize, model: &NetworkModel) -> Result<()> {
    if file == 0 || file > model.cache.head() {
        return invalid(format!(
            "file {file} is outside the cached head 1..={}",
            model.cache.head()
        ));
    }
    Ok(())
}

/// SINR threshold that corresponds to `rate` over `bandwidth`, `2^{R/B} − 1`.
pub fn rate_to_sinr(rate: f64, bandwidth: f64) -> f64 {
    (rate / bandwidth * std::f64::consts::LN_2).exp_m1()
}

/// Laplace transform of pico interference; `s` already includes the
/// `nη r^α / G₀` scaling.
pub fn laplace_tier2(s: f64, tau: f64, r: f64, file: usize, model: &NetworkModel) -> Result<f64> {
    let engine = AnalyticEngine::new(model.clone())?;
    let p = engine.placement(file)?;
    engine.laplace_tier2(s, tau, r, p.pico_prob)
}

pub fn coverage_tier2(file: usize, tau: f64, model: &NetworkModel, include_noise: bool) -> Result<f64> {
    AnalyticEngine::new(model.clone())?.coverage_tier2(file, tau, include_noise)
}

pub fn coverage_tier2_pdf(file: usize, tau: f64, model: &NetworkModel) -> Result<f64> {
    AnalyticEngine::new(model.clone())?.coverage_tier2_pdf(file, tau)
}

pub fn coverage_tier1(file: usize, tau: f64, model: &NetworkModel, variant: Tier1Variant) -> Result<f64> {
    AnalyticEngine::new(model.clone())?.coverage_tier1(file, tau, variant)
}

pub fn coverage_tier1_pdf(file: usize, tau: f64, model: &NetworkModel) -> Result<f64> {
    AnalyticEngine::new(model.clone())?.coverage_tier1_pdf(file, tau)
}

pub fn maxrp_distance_pdf(tier: Tier, file: usize, r: f64, model: &NetworkModel) -> Result<f64> {
    AnalyticEngine::new(model.clone())?.maxrp_distance_pdf(tier, file, r)
}

pub fn maxrp_sinr_coverage(tier: Tier, file: usize, tau: f64, model: &NetworkModel) -> Result<f64> {
    AnalyticEngine::new(model.clone())?.maxrp_sinr_coverage(tier, file, tau)
}

pub fn maxrate_coverage_pdf(tier: Tier, file: usize, tau: f64, model: &NetworkModel) -> Result<f64> {
    AnalyticEngine::new(model.clone())?.maxrate_coverage_pdf(tier, file, tau)
}

pub fn association_probability(scheme: Scheme, tier: Tier, model: &NetworkModel) -> Result<f64> {
    AnalyticEngine::new(model.clone())?.association_probability(scheme, tier)
}

pub fn average_load(scheme: Scheme, tier: Tier, model: &NetworkModel) -> Result<f64> {
    AnalyticEngine::new(model.clone())?.average_load(scheme, tier)
}

pub fn server_success(rate_threshold: f64, model: &NetworkModel) -> Result<f64> {
    AnalyticEngine::new(model.clone())?.server_success(rate_threshold)
}

pub fn success_probability(scheme: Scheme, rate_threshold: f64, model: &NetworkModel) -> Result<f64> {
    AnalyticEngine::new(model.clone())?.success_probability(scheme, rate_threshold)
}

pub fn area_spectral_efficiency(scheme: Scheme, rate_threshold: f64, model: &NetworkModel) -> Result<f64> {
    AnalyticEngine::new(model.clone())?.area_spectral_efficiency(scheme, rate_threshold)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table1_classes_cover_the_head() {
        let engine = AnalyticEngine::new(NetworkModel::table1()).unwrap();
        let classes = engine.placement_classes();
        assert_eq!(classes.len(), 2);
        let head_mass: f64 = engine.model().cache.popularities()[..90].iter().sum();
        let total: f64 = classes.iter().map(|c| c.1).sum();
        assert!((total - head_mass).abs() < 1e-14);
    }

    #[test]
    fn rate_to_sinr_matches_definition() {
        assert!((rate_to_sinr(1e7, 20e6) - (2f64.sqrt() - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn curve_validation() {
        assert!(MetricCurve::new(vec![1.0, 1.0], vec![0.0, 0.0], None).is_err());
        let c = MetricCurve::new(vec![1.0, 2.0, 3.0], vec![0.1, 0.3, 0.3], None).unwrap();
        assert_eq!(c.argmax(), Some(1));
    }
}
