use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Gamma};

use crate::error::{invalid, Result};

use super::{CacheModel, NetworkModel, Tier};

/// The density unit used by every preset: one BS per disc of radius 250 m.
pub const DENSITY_UNIT: f64 = 1.0 / (250.0 * 250.0 * PI);

const SPEED_OF_LIGHT: f64 = 299_792_458.0;
const THERMAL_NOISE_DBM_PER_HZ: f64 = -174.0;

pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

pub fn watts_to_dbm(watts: f64) -> f64 {
    10.0 * watts.log10() + 30.0
}

/// Free-space path gain at 1 m, `(c / (4π f))²`.
pub fn free_space_intercept(carrier_hz: f64) -> f64 {
    (SPEED_OF_LIGHT / (4.0 * PI * carrier_hz)).powi(2)
}

/// Thermal noise power in watts over `bandwidth` Hz with the given noise figure.
pub fn thermal_noise(bandwidth: f64, noise_figure_db: f64) -> f64 {
    dbm_to_watts(THERMAL_NOISE_DBM_PER_HZ + 10.0 * bandwidth.log10() + noise_figure_db)
}

/// Zipf request probability `f^{−δ} / Σ n^{−δ}`.
pub fn zipf_probability(file: usize, cache: &CacheModel) -> Result<f64> {
    cache.popularity(file)
}

/// `C r^{−α}`, cut to zero beyond the LOS ball for the pico tier.
pub fn pathloss(tier: Tier, r: f64, model: &NetworkModel) -> Result<f64> {
    if !(r > 0.0) {
        return invalid(format!("path loss needs r > 0, got {r}"));
    }
    if tier == Tier::Pico && r > model.los_radius {
        return Ok(0.0);
    }
    let t = model.tier(tier);
    Ok(t.intercept * r.powf(-t.pathloss_exp))
}

/// Normalized ULA power pattern `sin²(πNω) / (N² sin²(πω))`.
///
/// Periodic in `ω` with period 1, even, equal to 1 at integer `ω` and exactly
/// 0 at the other multiples of `1/N`.
pub fn array_gain(omega: f64, antennas: u32) -> f64 {
    if antennas <= 1 {
        return 1.0;
    }
    let n = f64::from(antennas);
    // reduce to [−1/2, 1/2]
    let w = omega - omega.round();
    let nw = n * w;
    let m = nw.round();
    if (nw - m).abs() < 1e-12 {
        return if m == 0.0 { 1.0 } else { 0.0 };
    }
    if w.abs() < 1e-6 {
        // second-order expansion about the peak
        return 1.0 - (n * n - 1.0) * (PI * w).powi(2) / 3.0;
    }
    let num = (PI * (nw - m)).sin();
    let den = n * (PI * w).sin();
    ((num * num) / (den * den)).clamp(0.0, 1.0)
}

/// Distance density of the nearest BS of `tier` holding `file`,
/// `2π p λ r exp(−π p λ r²)`.
pub fn nearest_caching_pdf(tier: Tier, file: usize, r: f64, model: &NetworkModel) -> Result<f64> {
    if file == 0 || file > model.cache.head() {
        return invalid(format!(
            "file {file} is not cached (head size {})",
            model.cache.head()
        ));
    }
    if !(r >= 0.0) {
        return invalid(format!("distance must be >= 0, got {r}"));
    }
    let pl = model.cache.placement_prob(tier, file)? * model.tier(tier).density;
    Ok(2.0 * PI * pl * r * (-PI * pl * r * r).exp())
}

/// Unit-mean Gamma sampler for `|h|²`; order 1 is the exponential.
#[derive(Debug, Clone, Copy)]
pub struct FadingSampler {
    dist: Gamma<f64>,
}

impl FadingSampler {
    pub fn new(order: u32) -> Result<Self> {
        if order == 0 {
            return invalid("fading order must be at least 1");
        }
        let n = f64::from(order);
        let dist = Gamma::new(n, 1.0 / n).map_err(|e| crate::Error::InvalidParameter(e.to_string()))?;
        Ok(Self { dist })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.dist.sample(rng)
    }
}

/// One draw of `|h|²` for a link of `tier`.
pub fn sample_fading<R: Rng + ?Sized>(tier: Tier, model: &NetworkModel, rng: &mut R) -> f64 {
    let order = match tier {
        Tier::Macro => 1,
        Tier::Pico => model.tier(Tier::Pico).fading_order,
    };
    FadingSampler::new(order.max(1))
        .expect("order is positive")
        .sample(rng)
}
