//! Most-popular against uniform placement with small caches.

use hetcache::analytic::{AnalyticEngine, Scheme};
use hetcache::model::{CacheModel, NetworkModel, PlacementPolicy};

fn main() -> hetcache::Result<()> {
    for policy in [PlacementPolicy::MostPopular, PlacementPolicy::Uniform] {
        for storage in [[2, 5], [5, 2]] {
            let mut model = NetworkModel::table1();
            model.cache = CacheModel::with_policy(10, 8, storage, 0.6, policy)?;
            model.backhaul = 1e6;
            let engine = AnalyticEngine::new(model)?;
            println!(
                "{policy:?} M = {storage:?}: Max-RP {:.4}, Max-Rate {:.4} at 10 Mbps",
                engine.success_probability(Scheme::MaxRp, 1e7)?,
                engine.success_probability(Scheme::MaxRate, 1e7)?
            );
        }
    }
    Ok(())
}
