//! Macro-tier (Rayleigh) coverage.

use std::f64::consts::PI;

use crate::error::{invalid, Result};
use crate::model::Tier;
use crate::numerics::{cap_delta, cap_lambda, erfcx, hyp_s, integrate_to_infinity};

use super::{check_threshold, AnalyticEngine, Tier1Variant};

impl AnalyticEngine {
    /// `p S⁰(τ) + (1 − p) Δ(τ)`: interference exponent per unit `πλ₁r²`,
    /// including the void of caching BSs inside the serving distance.
    pub(crate) fn macro_exponent(&self, p1: f64, tau: f64) -> Result<f64> {
        let t = self.model.tier(Tier::Macro);
        let (alpha, np) = (t.pathloss_exp, t.fading_order);
        let cached = if p1 > 0.0 { p1 * hyp_s(0, alpha, np, tau)? } else { 0.0 };
        let uncached = if p1 < 1.0 { (1.0 - p1) * cap_delta(alpha, np, tau)? } else { 0.0 };
        Ok(cached + uncached)
    }

    /// `τσ₁²/(P₁C₁N₁G₀)`, the noise coefficient of `r^{α₁}`.
    fn macro_noise_coefficient(&self, tau: f64) -> f64 {
        let t = self.model.tier(Tier::Macro);
        tau * t.noise_power / (t.tx_power * t.intercept * f64::from(t.antennas) * self.model.beam_peak_gain)
    }

    /// Macro coverage for a file cached with probability `p1`.
    pub fn coverage_tier1_with(&self, p1: f64, tau: f64, variant: Tier1Variant) -> Result<f64> {
        check_threshold(tau)?;
        let t = self.model.tier(Tier::Macro);
        if variant == Tier1Variant::ClosedAlpha4 && t.pathloss_exp != 4.0 {
            return invalid(format!(
                "the erfc closed form needs a macro path-loss exponent of 4, got {}",
                t.pathloss_exp
            ));
        }
        if p1 == 0.0 {
            return Ok(0.0);
        }
        let d = self.macro_exponent(p1, tau)?;
        let b = self.macro_noise_coefficient(tau);
        if variant == Tier1Variant::Sir || b == 0.0 {
            return Ok(p1 / d);
        }
        let c = PI * t.density * d;
        let value = match variant {
            Tier1Variant::ClosedAlpha4 => {
                0.5 * PI * p1 * t.density * (PI / b).sqrt() * erfcx(c / (2.0 * b.sqrt()))
            }
            _ => {
                // v = r², then t = C v
                let half_alpha = 0.5 * t.pathloss_exp;
                let scale = b * c.powf(-half_alpha);
                let integral = integrate_to_infinity(
                    |x| (-scale * x.powf(half_alpha) - x).exp(),
                    0.0,
                    1e-14,
                );
                PI * p1 * t.density / c * integral
            }
        };
        Ok(value.clamp(0.0, 1.0))
    }

    /// Macro coverage, `P[SINR > τ]` from the nearest macro BS caching `file`.
    pub fn coverage_tier1(&self, file: usize, tau: f64, variant: Tier1Variant) -> Result<f64> {
        let p = self.placement(file)?;
        self.coverage_tier1_with(p.macro_prob, tau, variant)
    }

    /// Density of the macro SIR,
    /// `[2N p² S¹(τ) + (α − 2)(p − p²)Λ(τ)] / [(α − 2)(p S⁰ + (1 − p)Δ)²]`.
    pub fn coverage_tier1_pdf_with(&self, p1: f64, tau: f64) -> Result<f64> {
        check_threshold(tau)?;
        if p1 == 0.0 {
            return Ok(0.0);
        }
        let t = self.model.tier(Tier::Macro);
        let (alpha, np) = (t.pathloss_exp, t.fading_order);
        let d = self.macro_exponent(p1, tau)?;
        let mut num = 2.0 * f64::from(np) * p1 * p1 * hyp_s(1, alpha, np, tau)?;
        if p1 < 1.0 {
            num += (alpha - 2.0) * (p1 - p1 * p1) * cap_lambda(alpha, np, tau)?;
        }
        Ok(num / ((alpha - 2.0) * d * d))
    }

    pub fn coverage_tier1_pdf(&self, file: usize, tau: f64) -> Result<f64> {
        let p = self.placement(file)?;
        self.coverage_tier1_pdf_with(p.macro_prob, tau)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::NetworkModel;

    #[test]
    fn rayleigh_alpha4_anchor() {
        let engine = AnalyticEngine::new(NetworkModel::table1()).unwrap();
        let v = engine.coverage_tier1_with(1.0, 1.0, Tier1Variant::Sir).unwrap();
        assert!((v - 1.0 / (1.0 + PI / 4.0)).abs() < 1e-12);
    }

    #[test]
    fn closed_form_needs_alpha4() {
        let mut model = NetworkModel::table1();
        model.tier_mut(Tier::Macro).pathloss_exp = 3.5;
        let engine = AnalyticEngine::new(model).unwrap();
        assert!(engine.coverage_tier1_with(1.0, 1.0, Tier1Variant::ClosedAlpha4).is_err());
        assert!(engine.coverage_tier1_with(1.0, 1.0, Tier1Variant::Exact).is_ok());
    }
}
