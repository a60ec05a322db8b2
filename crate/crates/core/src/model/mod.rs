//! Network parameters and the elementary physical-layer functions shared by
//! the analytic and Monte Carlo engines.

mod cache;
mod config;
mod physics;

pub use cache::{CacheModel, PlacementPolicy};
pub use config::{ModelConfig, NetworkConfig, TierConfig, CacheConfig};
pub use physics::{
    array_gain, dbm_to_watts, free_space_intercept, nearest_caching_pdf, pathloss,
    sample_fading, thermal_noise, watts_to_dbm, zipf_probability, FadingSampler, DENSITY_UNIT,
};

use crate::error::{invalid, Result};

/// One of the two tiers. The macro tier uses sub-6 GHz with omnidirectional
/// antennas and Rayleigh fading; the pico tier uses mmWave with a ULA and
/// Nakagami fading inside the LOS ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tier {
    Macro,
    Pico,
}

impl Tier {
    pub const ALL: [Tier; 2] = [Tier::Macro, Tier::Pico];

    pub fn index(self) -> usize {
        match self {
            Tier::Macro => 0,
            Tier::Pico => 1,
        }
    }

    /// 1 for macro, 2 for pico.
    pub fn number(self) -> u8 {
        self.index() as u8 + 1
    }

    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(Tier::Macro),
            2 => Ok(Tier::Pico),
            _ => invalid(format!("tier must be 1 or 2, got {n}")),
        }
    }

    pub fn other(self) -> Tier {
        match self {
            Tier::Macro => Tier::Pico,
            Tier::Pico => Tier::Macro,
        }
    }
}

/// Per-tier physical constants, all in linear SI units.
#[derive(Debug, Clone, PartialEq)]
pub struct TierParams {
    /// BSs per m².
    pub density: f64,
    /// Transmit power in watts.
    pub tx_power: f64,
    /// Path gain at 1 m.
    pub intercept: f64,
    pub pathloss_exp: f64,
    pub antennas: u32,
    /// Nakagami order of `|h|²`; 1 is Rayleigh.
    pub fading_order: u32,
    /// Hz per resource block.
    pub bandwidth: f64,
    pub bias_power: f64,
    pub bias_rate: f64,
    /// Watts.
    pub noise_power: f64,
}

impl TierParams {
    fn validate(&self, tier: Tier) -> Result<()> {
        let name = match tier {
            Tier::Macro => "macro",
            Tier::Pico => "pico",
        };
        let positive = [
            ("density", self.density),
            ("tx_power", self.tx_power),
            ("intercept", self.intercept),
            ("bandwidth", self.bandwidth),
            ("bias_power", self.bias_power),
            ("bias_rate", self.bias_rate),
        ];
        for (field, value) in positive {
            if !(value > 0.0) || !value.is_finite() {
                return invalid(format!("{name}.{field} must be positive and finite, got {value}"));
            }
        }
        if !(self.pathloss_exp >= 2.0) || !self.pathloss_exp.is_finite() {
            return invalid(format!("{name}.pathloss_exp must be >= 2, got {}", self.pathloss_exp));
        }
        if self.antennas == 0 {
            return invalid(format!("{name}.antennas must be at least 1"));
        }
        if self.fading_order == 0 {
            return invalid(format!("{name}.fading_order must be at least 1"));
        }
        if !(self.noise_power >= 0.0) || !self.noise_power.is_finite() {
            return invalid(format!("{name}.noise_power must be >= 0, got {}", self.noise_power));
        }
        if tier == Tier::Macro && self.fading_order != 1 {
            return invalid("the macro tier is Rayleigh: fading_order must be 1");
        }
        if tier == Tier::Macro && self.pathloss_exp == 2.0 {
            return invalid("the macro tier needs pathloss_exp > 2");
        }
        Ok(())
    }
}

/// Gauss-Chebyshev orders: `u1` for the beam-offset average inside the
/// Laplace transform, `u2` for distance integrals, `u3` for the distance
/// integral of the pico coverage PDF.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadOrders {
    pub u1: usize,
    pub u2: usize,
    pub u3: usize,
}

impl Default for QuadOrders {
    fn default() -> Self {
        Self {
            u1: 64,
            u2: 64,
            u3: 64,
        }
    }
}

/// NLOS pico interferers, only used by the simulator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NlosParams {
    pub pathloss_exp: f64,
    pub intercept: f64,
    pub fading_order: u32,
}

/// Full description of the two-tier network.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkModel {
    /// `[macro, pico]`.
    pub tiers: [TierParams; 2],
    pub cache: CacheModel,
    /// LOS ball radius in meters.
    pub los_radius: f64,
    /// Macro backhaul capacity in bits/s.
    pub backhaul: f64,
    /// UEs per m².
    pub user_density: f64,
    /// Antenna spacing over wavelength, `d/λ`.
    pub antenna_spacing_ratio: f64,
    pub quad_orders: QuadOrders,
    /// Boresight directivity `G₀` of the serving beam.
    pub beam_peak_gain: f64,
    pub nlos: NlosParams,
}

impl NetworkModel {
    /// The general settings table: `R_L = 200 m`, `λ = (1, 20, 30)/(250²π)`,
    /// 20 MHz / 1 GHz, `α = (4, 2)`, `N^p = (1, 3)`, `N = (1, 20)`,
    /// 2 / 28 GHz carriers, 80 / 30 dBm, 50 Mbps backhaul,
    /// `M₁ = M₂ = 80`, `H_c = 90`, `N_c = 100`, `δ = 0.6`, unit biases,
    /// most-popular placement.
    pub fn table1() -> Self {
        ModelConfig::default()
            .build()
            .expect("built-in settings are valid")
    }

    pub fn tier(&self, tier: Tier) -> &TierParams {
        &self.tiers[tier.index()]
    }

    pub fn tier_mut(&mut self, tier: Tier) -> &mut TierParams {
        &mut self.tiers[tier.index()]
    }

    /// Checks every hard invariant and returns soft warnings.
    pub fn validate(&self) -> Result<Vec<String>> {
        for tier in Tier::ALL {
            self.tier(tier).validate(tier)?;
        }
        if !(self.los_radius > 0.0) || !self.los_radius.is_finite() {
            return invalid(format!("los_radius must be positive, got {}", self.los_radius));
        }
        if !(self.backhaul >= 0.0) {
            return invalid(format!("backhaul must be >= 0, got {}", self.backhaul));
        }
        if !(self.user_density > 0.0) {
            return invalid(format!("user_density must be positive, got {}", self.user_density));
        }
        if !(self.antenna_spacing_ratio > 0.0 && self.antenna_spacing_ratio <= 1.0) {
            return invalid(format!(
                "antenna_spacing_ratio must lie in (0, 1], got {}",
                self.antenna_spacing_ratio
            ));
        }
        if !(self.beam_peak_gain > 0.0) {
            return invalid(format!("beam_peak_gain must be positive, got {}", self.beam_peak_gain));
        }
        let q = self.quad_orders;
        if q.u1 == 0 || q.u2 == 0 || q.u3 == 0 {
            return invalid("quadrature orders must be at least 1");
        }
        if !(self.nlos.pathloss_exp > 2.0) || self.nlos.fading_order == 0 || !(self.nlos.intercept > 0.0)
        {
            return invalid("NLOS parameters need pathloss_exp > 2, fading_order >= 1, intercept > 0");
        }

        let mut warnings = Vec::new();
        let (l1, l2) = (self.tiers[0].density, self.tiers[1].density);
        if !(self.user_density > l2 && l2 > l1) {
            warnings.push(format!(
                "densities do not satisfy user > pico > macro ({:.3e}, {:.3e}, {:.3e} per m²)",
                self.user_density, l2, l1
            ));
        }
        for tier in Tier::ALL {
            let dbm = watts_to_dbm(self.tier(tier).tx_power);
            if dbm > 60.0 {
                warnings.push(format!(
                    "tier {} transmit power {dbm:.1} dBm is physically implausible",
                    tier.number()
                ));
            }
        }
        Ok(warnings)
    }

    /// Validates and logs any warnings.
    pub fn checked(self) -> Result<Self> {
        for w in self.validate()? {
            log::warn!("{w}");
        }
        Ok(self)
    }

    /// `P_i C_i N_i G₀ b_i^P`, the biased mean received power at 1 m.
    pub fn biased_power_gain(&self, tier: Tier) -> f64 {
        let t = self.tier(tier);
        t.bias_power * t.tx_power * t.intercept * f64::from(t.antennas) * self.beam_peak_gain
    }
}
