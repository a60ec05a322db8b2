//! Success probability and area spectral efficiency over the rate threshold.

use hetcache::analytic::{AnalyticEngine, Scheme};
use hetcache::experiments::logspace;
use hetcache::model::NetworkModel;

fn main() -> hetcache::Result<()> {
    let engine = AnalyticEngine::new(NetworkModel::table1())?;
    println!("{:>10} {:>10} {:>10} {:>12} {:>12}", "R_th", "P_RP", "P_Rate", "ASE_RP", "ASE_Rate");
    for r in logspace(6.0, 10.0, 9) {
        println!(
            "{r:>10.2e} {:>10.4} {:>10.4} {:>12.4e} {:>12.4e}",
            engine.success_probability(Scheme::MaxRp, r)?,
            engine.success_probability(Scheme::MaxRate, r)?,
            engine.area_spectral_efficiency(Scheme::MaxRp, r)?,
            engine.area_spectral_efficiency(Scheme::MaxRate, r)?,
        );
    }
    Ok(())
}
