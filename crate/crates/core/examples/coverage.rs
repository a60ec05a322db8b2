//! Cache-related coverage of both tiers against the SINR threshold.

use hetcache::analytic::{AnalyticEngine, Tier1Variant};
use hetcache::model::NetworkModel;

fn main() -> hetcache::Result<()> {
    let engine = AnalyticEngine::new(NetworkModel::table1())?;
    println!("{:>6} {:>10} {:>10} {:>10} {:>10}", "τ(dB)", "macro", "macro+N", "pico", "pico+N");
    for db in (-10..=20).step_by(5) {
        let tau = 10f64.powf(f64::from(db) / 10.0);
        println!(
            "{db:>6} {:>10.4} {:>10.4} {:>10.4} {:>10.4}",
            engine.coverage_tier1(1, tau, Tier1Variant::Sir)?,
            engine.coverage_tier1(1, tau, Tier1Variant::Exact)?,
            engine.coverage_tier2(1, tau, false)?,
            engine.coverage_tier2(1, tau, true)?,
        );
    }
    Ok(())
}
