//! Association probabilities and loads under both schemes.

use hetcache::analytic::{AnalyticEngine, Scheme};
use hetcache::model::{NetworkModel, Tier};

fn main() -> hetcache::Result<()> {
    let engine = AnalyticEngine::new(NetworkModel::table1())?;
    for scheme in Scheme::ALL {
        for tier in Tier::ALL {
            println!(
                "{:<8} tier {}: A = {:.4}, load = {:.2}",
                scheme.name(),
                tier.number(),
                engine.association_probability(scheme, tier)?,
                engine.average_load(scheme, tier)?
            );
        }
    }
    // serving-distance density of the pico tier for the most popular file
    for r in [10.0, 50.0, 100.0, 150.0, 199.0] {
        println!("f_pico({r} m) = {:.3e}", engine.maxrp_distance_pdf(Tier::Pico, 1, r)?);
    }
    Ok(())
}
