//! Success probability per mmWave carrier, built from a config overlay.

use hetcache::analytic::{AnalyticEngine, Scheme};
use hetcache::experiments::CARRIER_ROWS;
use hetcache::model::ModelConfig;

fn main() -> hetcache::Result<()> {
    for (ghz, alpha, antennas) in CARRIER_ROWS {
        let cfg = ModelConfig::from_toml_str(&format!(
            "[pico]\ncarrier_hz = {}\npathloss_exp = {alpha}\nantennas = {antennas}\n\
             [cache]\nstorage = [80, 20]\n[network]\nbackhaul_bps = 1e8\n",
            ghz * 1e9
        ))?;
        let engine = AnalyticEngine::new(cfg.build()?)?;
        println!(
            "{ghz:>4} GHz: Max-RP {:.4}, Max-Rate {:.4} at 1 Gbps",
            engine.success_probability(Scheme::MaxRp, 1e9)?,
            engine.success_probability(Scheme::MaxRate, 1e9)?
        );
    }
    Ok(())
}
