//! Text configuration of the network.
//!
//! Keys mirror the general settings table. Powers are in dBm, rates and
//! bandwidths in bits/s and Hz, densities in multiples of `1/(250²π)` m⁻².
//! Any key left out keeps its default from that table, so a file only has to
//! list what it changes:
//!
//! ```toml
//! [pico]
//! density = 30.0
//! antennas = 40
//!
//! [cache]
//! storage = [80, 10]
//! policy = "uniform"
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::physics::{dbm_to_watts, free_space_intercept, thermal_noise, DENSITY_UNIT};
use super::{CacheModel, NetworkModel, NlosParams, PlacementPolicy, QuadOrders, TierParams};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TierConfig {
    /// Multiples of `1/(250²π)` m⁻².
    pub density: f64,
    pub tx_power_dbm: f64,
    pub carrier_hz: f64,
    /// Linear gain at 1 m; free space at the carrier when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intercept: Option<f64>,
    pub pathloss_exp: f64,
    pub antennas: u32,
    pub fading_order: u32,
    pub bandwidth_hz: f64,
    pub bias_power: f64,
    pub bias_rate: f64,
    pub noise_figure_db: f64,
    /// Overrides the thermal noise computed from bandwidth and noise figure.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise_dbm: Option<f64>,
}

impl TierConfig {
    fn params(&self) -> TierParams {
        let intercept = self
            .intercept
            .unwrap_or_else(|| free_space_intercept(self.carrier_hz));
        let noise_power = match self.noise_dbm {
            Some(dbm) => dbm_to_watts(dbm),
            None => thermal_noise(self.bandwidth_hz, self.noise_figure_db),
        };
        TierParams {
            density: self.density * DENSITY_UNIT,
            tx_power: dbm_to_watts(self.tx_power_dbm),
            intercept,
            pathloss_exp: self.pathloss_exp,
            antennas: self.antennas,
            fading_order: self.fading_order,
            bandwidth: self.bandwidth_hz,
            bias_power: self.bias_power,
            bias_rate: self.bias_rate,
            noise_power,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CacheConfig {
    pub catalog: usize,
    pub head: usize,
    /// `[M₁, M₂]`.
    pub storage: [usize; 2],
    pub skew: f64,
    /// `"most_popular"`, `"uniform"` or `"explicit"`.
    pub policy: String,
    /// Required for the explicit policy: two vectors of length `head`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub placement: Option<[Vec<f64>; 2]>,
}

impl CacheConfig {
    fn model(&self) -> Result<CacheModel> {
        let policy = match self.policy.as_str() {
            "most_popular" => PlacementPolicy::MostPopular,
            "uniform" => PlacementPolicy::Uniform,
            "explicit" => {
                let placement = self.placement.clone().ok_or_else(|| {
                    Error::Config("cache.policy = \"explicit\" needs cache.placement".into())
                })?;
                return CacheModel::new(self.catalog, self.head, self.storage, self.skew, placement);
            }
            other => {
                return Err(Error::Config(format!(
                    "unknown cache.policy {other:?}; expected most_popular, uniform or explicit"
                )))
            }
        };
        if self.placement.is_some() {
            return Err(Error::Config(
                "cache.placement is only allowed with policy = \"explicit\"".into(),
            ));
        }
        CacheModel::with_policy(self.catalog, self.head, self.storage, self.skew, policy)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkConfig {
    pub los_radius_m: f64,
    pub backhaul_bps: f64,
    /// Multiples of `1/(250²π)` m⁻².
    pub user_density: f64,
    pub antenna_spacing_ratio: f64,
    pub beam_peak_gain: f64,
    /// `[u₁, u₂, u₃]`.
    pub quad_orders: [usize; 3],
    pub nlos_pathloss_exp: f64,
    pub nlos_fading_order: u32,
    /// Defaults to the pico intercept.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nlos_intercept: Option<f64>,
}

/// Everything needed to build a [`NetworkModel`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    #[serde(rename = "macro")]
    pub macro_tier: TierConfig,
    pub pico: TierConfig,
    pub cache: CacheConfig,
    pub network: NetworkConfig,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            macro_tier: TierConfig {
                density: 1.0,
                tx_power_dbm: 80.0,
                carrier_hz: 2e9,
                intercept: None,
                pathloss_exp: 4.0,
                antennas: 1,
                fading_order: 1,
                bandwidth_hz: 20e6,
                bias_power: 1.0,
                bias_rate: 1.0,
                noise_figure_db: 10.0,
                noise_dbm: None,
            },
            pico: TierConfig {
                density: 20.0,
                tx_power_dbm: 30.0,
                carrier_hz: 28e9,
                intercept: None,
                pathloss_exp: 2.0,
                antennas: 20,
                fading_order: 3,
                bandwidth_hz: 1e9,
                bias_power: 1.0,
                bias_rate: 1.0,
                noise_figure_db: 10.0,
                noise_dbm: None,
            },
            cache: CacheConfig {
                catalog: 100,
                head: 90,
                storage: [80, 80],
                skew: 0.6,
                policy: "most_popular".into(),
                placement: None,
            },
            network: NetworkConfig {
                los_radius_m: 200.0,
                backhaul_bps: 50e6,
                user_density: 30.0,
                antenna_spacing_ratio: 0.5,
                beam_peak_gain: 1.0,
                quad_orders: [64, 64, 64],
                nlos_pathloss_exp: 4.0,
                nlos_fading_order: 2,
                nlos_intercept: None,
            },
        }
    }
}

fn merge(base: &mut toml::Table, overlay: toml::Table) {
    for (key, value) in overlay {
        match (base.get_mut(&key), value) {
            (Some(toml::Value::Table(b)), toml::Value::Table(o)) => merge(b, o),
            (_, value) => {
                base.insert(key, value);
            }
        }
    }
}

impl ModelConfig {
    /// Overlays `table` on the defaults. Unknown keys are rejected.
    pub fn from_table(table: toml::Table) -> Result<Self> {
        let mut base = toml::Table::try_from(Self::default())
            .map_err(|e| Error::Config(e.to_string()))?;
        merge(&mut base, table);
        toml::Value::Table(base)
            .try_into()
            .map_err(|e: toml::de::Error| Error::Config(e.to_string()))
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let table: toml::Table = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        Self::from_table(table)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    /// Converts to linear SI units and checks hard invariants.
    pub fn build(&self) -> Result<NetworkModel> {
        let macro_params = self.macro_tier.params();
        let pico_params = self.pico.params();
        let n = &self.network;
        let model = NetworkModel {
            nlos: NlosParams {
                pathloss_exp: n.nlos_pathloss_exp,
                intercept: n.nlos_intercept.unwrap_or(pico_params.intercept),
                fading_order: n.nlos_fading_order,
            },
            tiers: [macro_params, pico_params],
            cache: self.cache.model()?,
            los_radius: n.los_radius_m,
            backhaul: n.backhaul_bps,
            user_density: n.user_density * DENSITY_UNIT,
            antenna_spacing_ratio: n.antenna_spacing_ratio,
            quad_orders: QuadOrders {
                u1: n.quad_orders[0],
                u2: n.quad_orders[1],
                u3: n.quad_orders[2],
            },
            beam_peak_gain: n.beam_peak_gain,
        };
        model.validate()?;
        Ok(model)
    }
}

impl NetworkModel {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        ModelConfig::from_toml_str(text)?.build()
    }
}
