//! Monte Carlo estimates next to the analytic values.

use hetcache::analytic::{AnalyticEngine, Scheme};
use hetcache::model::{NetworkModel, Tier};
use hetcache::montecarlo::{simulate_curve, Metric, SimOptions};

fn main() -> hetcache::Result<()> {
    let model = NetworkModel::table1();
    let engine = AnalyticEngine::new(model.clone())?;
    let sir = SimOptions {
        include_noise: false,
        ..SimOptions::default()
    };

    let taus: Vec<f64> = [-10.0, 0.0, 10.0, 20.0].iter().map(|d: &f64| 10f64.powf(d / 10.0)).collect();
    let metric = Metric::Coverage { tier: Tier::Pico, file: 1 };
    let mc = simulate_curve(metric, Scheme::MaxRp, &taus, &model, 20_000, 1, &sir)?;
    for (tau, est) in taus.iter().zip(&mc) {
        println!(
            "pico τ = {tau:>7.2}: analytic {:.4}, MC {:.4} ± {:.4}",
            engine.coverage_tier2(1, *tau, false)?,
            est.mean,
            est.half_width_95
        );
    }

    let rates = [1e7, 1e8, 1e9];
    for scheme in Scheme::ALL {
        let mc = simulate_curve(Metric::Success, scheme, &rates, &model, 10_000, 2, &sir)?;
        for (r, est) in rates.iter().zip(&mc) {
            println!(
                "{:<8} R_th = {r:.0e}: analytic {:.4}, MC {:.4} ± {:.4}",
                scheme.name(),
                engine.success_probability(scheme, *r)?,
                est.mean,
                est.half_width_95
            );
        }
    }
    Ok(())
}
