//! Max-RP association geometry and the per-tier coverage it induces.
//!
//! A BS of tier `j` beats the tier-`i` server at distance `r` when it lies
//! inside `ρ_j(r) = (P^r_{j,i})^{1/α_j} r^{α_i/α_j}`, where `P^r_{j,i}` is the
//! ratio of biased received powers at 1 m. Pico BSs beyond `R_L` carry no
//! power, so pico exclusion discs are clipped at `R_L`.

use std::f64::consts::PI;

use crate::error::{invalid, Result};
use crate::model::Tier;
use crate::numerics::integrate;

use super::{check_threshold, AnalyticEngine, Placement};

impl AnalyticEngine {
    /// `P^r_{j,i} = b_j P_j C_j N_j / (b_i P_i C_i N_i)`.
    pub fn power_ratio(&self, j: Tier, i: Tier) -> f64 {
        self.model.biased_power_gain(j) / self.model.biased_power_gain(i)
    }

    /// Macro serving distance beyond which no pico BS can win,
    /// `R_r = (P^r_{1,2} R_L^{α₂})^{1/α₁}`.
    pub fn macro_switch_radius(&self) -> f64 {
        let a1 = self.model.tier(Tier::Macro).pathloss_exp;
        let a2 = self.model.tier(Tier::Pico).pathloss_exp;
        (self.power_ratio(Tier::Macro, Tier::Pico) * self.model.los_radius.powf(a2)).powf(1.0 / a1)
    }

    /// Radius of the disc where a tier-`other` BS would out-power a tier-`serving` BS at `r`.
    fn exclusion_radius(&self, other: Tier, serving: Tier, r: f64) -> f64 {
        let a_other = self.model.tier(other).pathloss_exp;
        let a_serving = self.model.tier(serving).pathloss_exp;
        let rho = self.power_ratio(other, serving).powf(1.0 / a_other) * r.powf(a_serving / a_other);
        match other {
            Tier::Pico => rho.min(self.model.los_radius),
            Tier::Macro => rho,
        }
    }

    pub fn maxrp_distance_pdf_with(&self, tier: Tier, p: Placement, r: f64) -> Result<f64> {
        if !(r >= 0.0) {
            return invalid(format!("distance must be >= 0, got {r}"));
        }
        if tier == Tier::Pico && r > self.model.los_radius {
            return Ok(0.0);
        }
        let other = tier.other();
        let own = p.get(tier) * self.model.tier(tier).density;
        let rival = p.get(other) * self.model.tier(other).density;
        let rho = if rival > 0.0 { self.exclusion_radius(other, tier, r) } else { 0.0 };
        Ok(2.0 * PI * own * r * (-PI * own * r * r - PI * rival * rho * rho).exp())
    }

    /// Density of the serving distance to the tier-`tier` BS under Max-RP.
    pub fn maxrp_distance_pdf(&self, tier: Tier, file: usize, r: f64) -> Result<f64> {
        let p = self.placement(file)?;
        self.maxrp_distance_pdf_with(tier, p, r)
    }

    /// `P[no caching pico in the LOS ball]`, the factor of the macro pdf beyond `R_r`.
    fn empty_los_ball(&self, p: Placement) -> f64 {
        let pl = p.pico_prob * self.model.tier(Tier::Pico).density;
        (-PI * pl * self.model.los_radius.powi(2)).exp()
    }

    /// Max-RP association probability of one file class.
    pub fn maxrp_association_with(&self, tier: Tier, p: Placement) -> Result<f64> {
        if p.get(tier) == 0.0 {
            return Ok(0.0);
        }
        let pdf = |r: f64| self.maxrp_distance_pdf_with(tier, p, r).unwrap_or(0.0);
        let tol = 1e-3 * self.options.abs_tol;
        Ok(match tier {
            Tier::Macro => {
                let rr = self.macro_switch_radius();
                let l1 = p.macro_prob * self.model.tier(Tier::Macro).density;
                integrate(pdf, 0.0, rr, tol) + (-PI * l1 * rr * rr).exp() * self.empty_los_ball(p)
            }
            Tier::Pico => integrate(pdf, 0.0, self.model.los_radius, tol),
        })
    }

    /// `Θ_{i,f}(τ)`: probability of associating with tier `tier` under Max-RP
    /// and having SIR above `τ`.
    pub fn maxrp_sinr_coverage_with(&self, tier: Tier, p: Placement, tau: f64) -> Result<f64> {
        check_threshold(tau)?;
        if p.get(tier) == 0.0 || tau.is_infinite() {
            return Ok(0.0);
        }
        let value = match tier {
            Tier::Macro => {
                let t = self.model.tier(Tier::Macro);
                let p1 = p.macro_prob;
                let d = self.macro_exponent(p1, tau)?;
                let extra = PI * t.density * (d - p1);
                let pdf = |r: f64| {
                    (-extra * r * r).exp() * self.maxrp_distance_pdf_with(Tier::Macro, p, r).unwrap_or(0.0)
                };
                let rr = self.macro_switch_radius();
                let a = PI * t.density * d;
                let tail = PI * p1 * t.density / a * (-a * rr * rr).exp() * self.empty_los_ball(p);
                integrate(pdf, 0.0, rr, 1e-3 * self.options.abs_tol) + tail
            }
            Tier::Pico => {
                let pdf = |r: f64| self.maxrp_distance_pdf_with(Tier::Pico, p, r).unwrap_or(0.0);
                self.pico_radial_sum(tau, p.pico_prob, &self.distance_rule, pdf, false, false)?
            }
        };
        Ok(value.clamp(0.0, 1.0))
    }

    pub fn maxrp_sinr_coverage(&self, tier: Tier, file: usize, tau: f64) -> Result<f64> {
        let p = self.placement(file)?;
        self.maxrp_sinr_coverage_with(tier, p, tau)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::NetworkModel;

    #[test]
    fn table1_switch_radius() {
        let engine = AnalyticEngine::new(NetworkModel::table1()).unwrap();
        let rr = engine.macro_switch_radius();
        // P^r_{1,2} = 10⁵ (28/2)² / 20, R_r = (P^r R_L²)^{1/4}
        let expected = (1e5 * 196.0 / 20.0 * 200f64.powi(2)).powf(0.25);
        assert!((rr - expected).abs() < 1e-6 * expected, "{rr} vs {expected}");
    }

    #[test]
    fn association_is_complete() {
        let engine = AnalyticEngine::new(NetworkModel::table1()).unwrap();
        let p = Placement::new(1.0, 1.0).unwrap();
        let a1 = engine.maxrp_association_with(Tier::Macro, p).unwrap();
        let a2 = engine.maxrp_association_with(Tier::Pico, p).unwrap();
        assert!((a1 + a2 - 1.0).abs() < 1e-9, "{a1} + {a2}");
    }
}
