//! Max-Rate coverage, association, load, success probability and ASE.

use std::cell::RefCell;

use crate::error::{Error, Result};
use crate::model::Tier;
use crate::numerics::{integrate, integrate_to_infinity};

use super::{check_rate, check_threshold, rate_to_sinr, AnalyticEngine, Placement, Scheme, Tier1Variant};

/// Slope of the UE-count approximation `1 + 1.28 λ_u A_i / λ_i`.
const LOAD_SLOPE: f64 = 1.28;

impl AnalyticEngine {
    /// Interference-limited coverage of `tier`; the `τ → 0` limit at `τ = 0`.
    fn sir_coverage(&self, tier: Tier, p: f64, tau: f64) -> Result<f64> {
        if tau.is_infinite() || p == 0.0 {
            return Ok(0.0);
        }
        let tau = tau.max(f64::MIN_POSITIVE);
        match tier {
            Tier::Macro => self.coverage_tier1_with(p, tau, Tier1Variant::Sir),
            Tier::Pico => self.coverage_tier2_with(p, tau, false),
        }
    }

    fn sir_pdf(&self, tier: Tier, p: f64, tau: f64) -> Result<f64> {
        if tau.is_infinite() || p == 0.0 {
            return Ok(0.0);
        }
        match tier {
            Tier::Macro => self.coverage_tier1_pdf_with(p, tau),
            Tier::Pico => self.coverage_tier2_pdf_with(p, tau),
        }
    }

    /// Exponent `b_i B_i / (b_j B_j)` mapping a tier-`i` SIR to the tier-`j`
    /// SIR of equal biased rate.
    fn rate_exponent(&self, tier: Tier) -> f64 {
        let own = self.model.tier(tier);
        let rival = self.model.tier(tier.other());
        own.bias_rate * own.bandwidth / (rival.bias_rate * rival.bandwidth)
    }

    /// `f^R_{i}(τ) = p_i(τ) (1 − P_j((1 + τ)^β − 1))`.
    pub fn maxrate_coverage_pdf_with(&self, tier: Tier, p: Placement, tau: f64) -> Result<f64> {
        check_threshold(tau)?;
        let own = self.sir_pdf(tier, p.get(tier), tau)?;
        if own == 0.0 {
            return Ok(0.0);
        }
        let rival_tau = (self.rate_exponent(tier) * tau.ln_1p()).exp_m1();
        let rival = self.sir_coverage(tier.other(), p.get(tier.other()), rival_tau)?;
        Ok(own * (1.0 - rival))
    }

    pub fn maxrate_coverage_pdf(&self, tier: Tier, file: usize, tau: f64) -> Result<f64> {
        let p = self.placement(file)?;
        self.maxrate_coverage_pdf_with(tier, p, tau)
    }

    /// Integrates the Max-Rate pdf over `(a, ∞)` or `(a, b)`, propagating the
    /// first error raised inside the integrand.
    fn integrate_maxrate(&self, tier: Tier, p: Placement, a: f64, b: Option<f64>) -> Result<f64> {
        let failure: RefCell<Option<Error>> = RefCell::new(None);
        let f = |t: f64| {
            if t <= 0.0 {
                return 0.0;
            }
            match self.maxrate_coverage_pdf_with(tier, p, t) {
                Ok(v) => v,
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    0.0
                }
            }
        };
        let value = match b {
            // τ = e^u − 1 on doubling panels: the mass sits at moderate τ while
            // b can reach 10^150 at the largest rate thresholds
            Some(b) => {
                let (ua, ub) = (a.ln_1p(), b.ln_1p());
                let g = |u: f64| f(u.exp_m1()) * u.exp();
                let mut edges = vec![ua];
                let mut e = 1.0;
                while e < ub {
                    if e > ua {
                        edges.push(e);
                    }
                    e *= 2.0;
                }
                edges.push(ub);
                edges.windows(2).map(|w| integrate(g, w[0], w[1], self.options.abs_tol)).sum()
            }
            None => integrate_to_infinity(f, a, self.options.abs_tol),
        };
        match failure.into_inner() {
            Some(e) => Err(e),
            None => Ok(value),
        }
    }

    /// `∫_{τ₀}^∞ f^R_i(τ) dτ`: probability of associating with `tier` under
    /// Max-Rate and having SIR above `τ₀`.
    pub fn maxrate_tail_with(&self, tier: Tier, p: Placement, tau0: f64) -> Result<f64> {
        if !(tau0 >= 0.0) {
            return Err(Error::InvalidParameter(format!("threshold must be >= 0, got {tau0}")));
        }
        if p.get(tier) == 0.0 || tau0.is_infinite() {
            return Ok(0.0);
        }
        let tail = self.integrate_maxrate(tier, p, tau0, None)?;
        if self.options.cross_check && tau0 > 0.0 {
            let total = self.integrate_maxrate(tier, p, 0.0, None)?;
            let head = self.integrate_maxrate(tier, p, 0.0, Some(tau0))?;
            let other = total - head;
            if (tail - other).abs() > self.options.cross_check_tol {
                return Err(Error::NumericalQuality(format!(
                    "Max-Rate tail of tier {} at τ = {tau0:e}: direct {tail:.9} vs complement {other:.9}",
                    tier.number()
                )));
            }
        }
        Ok(tail.clamp(0.0, 1.0))
    }

    /// Association probability of one file class.
    pub fn association_probability_with(&self, scheme: Scheme, tier: Tier, p: Placement) -> Result<f64> {
        match scheme {
            Scheme::MaxRp => self.maxrp_association_with(tier, p),
            Scheme::MaxRate => self.maxrate_tail_with(tier, p, 0.0),
        }
    }

    /// `A_i = Σ_{f ≤ H_c} P_f A_{i,f}`.
    pub fn association_probability(&self, scheme: Scheme, tier: Tier) -> Result<f64> {
        let mut total = 0.0;
        for (p, weight) in self.placement_classes() {
            total += weight * self.association_probability_with(scheme, tier, p)?;
        }
        Ok(total)
    }

    /// Mean number of UEs served by a tier-`tier` BS.
    pub fn average_load(&self, scheme: Scheme, tier: Tier) -> Result<f64> {
        let a = self.association_probability(scheme, tier)?;
        Ok(1.0 + LOAD_SLOPE * self.model.user_density * a / self.model.tier(tier).density)
    }

    /// Success probability of requests for files outside the cached head,
    /// relayed from the core network by the nearest macro BS.
    pub fn server_success(&self, rate_threshold: f64) -> Result<f64> {
        check_rate(rate_threshold)?;
        let cache = &self.model.cache;
        if self.model.backhaul < rate_threshold || cache.head() == cache.catalog() {
            return Ok(0.0);
        }
        let tail_mass: f64 = cache.popularities()[cache.head()..].iter().sum();
        let tau = rate_to_sinr(rate_threshold, self.model.tier(Tier::Macro).bandwidth);
        Ok(tail_mass * self.sir_coverage(Tier::Macro, 1.0, tau)?)
    }

    /// Probability of associating with `tier` and covering `τ`, by scheme.
    pub fn scheme_coverage_with(&self, scheme: Scheme, tier: Tier, p: Placement, tau: f64) -> Result<f64> {
        match scheme {
            Scheme::MaxRp => {
                if tau.is_infinite() {
                    return Ok(0.0);
                }
                self.maxrp_sinr_coverage_with(tier, p, tau)
            }
            Scheme::MaxRate => self.maxrate_tail_with(tier, p, tau),
        }
    }

    /// `P[rate > R_th]` including the server mode.
    pub fn success_probability(&self, scheme: Scheme, rate_threshold: f64) -> Result<f64> {
        check_rate(rate_threshold)?;
        let mut total = 0.0;
        for (p, weight) in self.placement_classes() {
            for tier in Tier::ALL {
                let tau = rate_to_sinr(rate_threshold, self.model.tier(tier).bandwidth);
                total += weight * self.scheme_coverage_with(scheme, tier, p, tau)?;
            }
        }
        Ok((total + self.server_success(rate_threshold)?).clamp(0.0, 1.0))
    }

    /// Area spectral efficiency in bps/Hz/m².
    pub fn area_spectral_efficiency(&self, scheme: Scheme, rate_threshold: f64) -> Result<f64> {
        check_rate(rate_threshold)?;
        let mut total = 0.0;
        for (p, weight) in self.placement_classes() {
            for tier in Tier::ALL {
                let t = self.model.tier(tier);
                let pi = p.get(tier);
                if pi == 0.0 {
                    continue;
                }
                let tau = rate_to_sinr(rate_threshold, t.bandwidth);
                let cov = self.scheme_coverage_with(scheme, tier, p, tau)?;
                total += weight * pi * t.density * rate_threshold / t.bandwidth * cov;
            }
        }
        let macro_tier = self.model.tier(Tier::Macro);
        total += macro_tier.density * rate_threshold / macro_tier.bandwidth
            * self.server_success(rate_threshold)?;
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::NetworkModel;

    #[test]
    fn server_mode_steps() {
        let mut model = NetworkModel::table1();
        model.backhaul = 1e6;
        let engine = AnalyticEngine::new(model).unwrap();
        assert_eq!(engine.server_success(1e7).unwrap(), 0.0);
        assert!(engine.server_success(1e5).unwrap() > 0.0);
    }
}
