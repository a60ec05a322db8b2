//! Pico-tier interference and the coverage expressions built on it.
//!
//! With `X = sG₂(ω)τ/N^p` the mean interference exponent of a PPP on a disc
//! of radius `ρ` is `πλ κ(X, ρ)`, `κ(X, ρ) = 2∫₀^ρ (1 − (1 + X v^{−α})^{−N}) v dv`,
//! and `κ(X, ρ) = ρ² K(X/ρ^α)` for the dimensionless kernel `K` below.
//! Caching interferers live on `(r, R_L)` and the others on `(0, R_L)`, so
//! the exponent is `πλ₂ E_ω[κ(X, R_L) − p κ(X, r)]`.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::model::Tier;
use crate::numerics::{
    binomial, compensated_sum, f_y, f_y_log_derivative, hyp_s_remainder, QuadratureRule,
};

use super::{check_threshold, AnalyticEngine};

/// `K(z) = 2∫₀¹ (1 − (1 + z t^{−α})^{−N}) t dt`.
///
/// For `α = 2` this is `1 + z F_y(z)`; for `α > 2` it is
/// `1 − (S⁰(z) − Δ(z))`. `K(0) = 0` and `K` increases without bound.
pub fn interference_kernel(alpha: f64, np: u32, z: f64) -> Result<f64> {
    if !(z >= 0.0) {
        return domain(format!("kernel argument must be >= 0, got {z}"));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    if alpha == 2.0 {
        Ok(1.0 + z * f_y(z, np)?)
    } else if alpha > 2.0 {
        Ok(1.0 - hyp_s_remainder(0, alpha, np, z)?)
    } else {
        domain(format!("path-loss exponent must be >= 2, got {alpha}"))
    }
}

/// `z K'(z)`, finite at `z = 0` where it vanishes.
pub fn interference_kernel_slope(alpha: f64, np: u32, z: f64) -> Result<f64> {
    if !(z >= 0.0) {
        return domain(format!("kernel argument must be >= 0, got {z}"));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    if alpha == 2.0 {
        Ok(z * f_y_log_derivative(z, np)?)
    } else if alpha > 2.0 {
        // K' = Λ − 2N S¹/(α − 2) = −(2N/(α − 2))(S¹ − (α − 2)Λ/(2N))
        let n = f64::from(np);
        Ok(-2.0 * n / (alpha - 2.0) * z * hyp_s_remainder(1, alpha, np, z)?)
    } else {
        domain(format!("path-loss exponent must be >= 2, got {alpha}"))
    }
}

/// Serving-distance term of one beam node.
struct InnerTerm {
    z: f64,
    kernel: f64,
    kernel_slope: f64,
}

impl AnalyticEngine {
    fn pico_kernel(&self, z: f64) -> Result<f64> {
        let t = self.model.tier(Tier::Pico);
        interference_kernel(t.pathloss_exp, t.fading_order, z)
    }

    fn pico_kernel_slope(&self, z: f64) -> Result<f64> {
        let t = self.model.tier(Tier::Pico);
        interference_kernel_slope(t.pathloss_exp, t.fading_order, z)
    }

    /// Kernel arguments `X/r^α` at every beam node for transform variable
    /// `s` at distance `r`, together with `K` (and `zK'` when `slope`) there.
    /// The serving-distance term depends on `r` only through these.
    fn inner_terms(&self, s: f64, tau: f64, r: f64, p2: f64, slope: bool) -> Result<Vec<InnerTerm>> {
        let pico = self.model.tier(Tier::Pico);
        let scale = s * tau / f64::from(pico.fading_order) * r.powf(-pico.pathloss_exp);
        self.beam_gains
            .iter()
            .map(|&g| {
                let z = scale * g;
                let kernel = if p2 > 0.0 { self.pico_kernel(z)? } else { 0.0 };
                let kernel_slope = if p2 > 0.0 && slope { self.pico_kernel_slope(z)? } else { 0.0 };
                Ok(InnerTerm { z, kernel, kernel_slope })
            })
            .collect()
    }

    /// `E_ω[κ(X, R_L) − p κ(X, r)]` and, when `slope`, its `τ` derivative.
    /// The expectation uses the beam rule.
    fn beam_average(&self, inner: &[InnerTerm], tau: f64, r: f64, p2: f64, slope: bool) -> Result<(f64, f64)> {
        let pico = self.model.tier(Tier::Pico);
        let big_r = self.model.los_radius;
        let to_outer = (r / big_r).powf(pico.pathloss_exp);
        let (r2, big_r2) = (r * r, big_r * big_r);
        let mut value = 0.0;
        let mut derivative = 0.0;
        for (t, &w) in inner.iter().zip(self.beam_rule.sqrt_weights()) {
            let z_outer = t.z * to_outer;
            value += w * (big_r2 * self.pico_kernel(z_outer)? - p2 * r2 * t.kernel);
            if slope {
                derivative += w * (big_r2 * self.pico_kernel_slope(z_outer)? - p2 * r2 * t.kernel_slope);
            }
        }
        // E_ω[h] = ½∫₋₁¹ h(x d/λ) dx
        let half_scale = 0.5 * self.beam_rule.scale();
        Ok((half_scale * value, half_scale * derivative / tau))
    }

    /// Laplace transform of the pico interference at the transform variable
    /// `s`, threshold `τ` and serving distance `r`, for a file cached with
    /// probability `p2`.
    pub fn laplace_tier2(&self, s: f64, tau: f64, r: f64, p2: f64) -> Result<f64> {
        if !(r > 0.0 && r <= self.model.los_radius) {
            return domain(format!(
                "serving distance must lie in (0, {}], got {r}",
                self.model.los_radius
            ));
        }
        if !(tau >= 0.0) || !(s >= 0.0) {
            return domain("s and τ must be >= 0");
        }
        let inner = self.inner_terms(s, tau, r, p2, false)?;
        let (mean, _) = self.beam_average(&inner, tau, r, p2, false)?;
        Ok((-PI * self.model.tier(Tier::Pico).density * mean).exp())
    }

    /// `Σ_n (−1)^{n+1} C(N, n) ∫₀^{R_L} L_n(r) [noise_n(r)] [ℓ_n(r)] w(r) dr`
    /// over the given distance rule, where `ℓ_n = −d ln L_n/dτ` when
    /// `derivative` is set.
    pub(crate) fn pico_radial_sum<W: Fn(f64) -> f64>(
        &self,
        tau: f64,
        p2: f64,
        rule: &QuadratureRule,
        weight: W,
        include_noise: bool,
        derivative: bool,
    ) -> Result<f64> {
        let pico = self.model.tier(Tier::Pico);
        let big_r = self.model.los_radius;
        let noise_scale = self.eta * tau * pico.noise_power
            / (pico.tx_power * pico.intercept * f64::from(pico.antennas) * self.model.beam_peak_gain);
        let alpha = pico.pathloss_exp;
        let mut terms = Vec::with_capacity(pico.fading_order as usize);
        for n in 1..=pico.fading_order {
            // with s = nη r^α/G₀ the serving-distance arguments do not depend on r
            let s_unit = f64::from(n) * self.eta / self.model.beam_peak_gain;
            let inner = self.inner_terms(s_unit, tau, 1.0, p2, derivative)?;
            let mut acc = Vec::with_capacity(rule.order());
            for (&x, &w) in rule.nodes().iter().zip(rule.sqrt_weights()) {
                let r = 0.5 * (x + 1.0) * big_r;
                let wr = weight(r);
                if wr == 0.0 {
                    continue;
                }
                let (mean, mean_slope) = self.beam_average(&inner, tau, r, p2, derivative)?;
                let mut v = w * wr * (-PI * pico.density * mean).exp();
                if include_noise {
                    v *= (-f64::from(n) * noise_scale * r.powf(alpha)).exp();
                }
                if derivative {
                    v *= PI * pico.density * mean_slope;
                }
                acc.push(v);
            }
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            terms.push(sign * binomial(pico.fading_order, n) * compensated_sum(acc));
        }
        Ok(0.5 * big_r * rule.scale() * compensated_sum(terms))
    }

    fn nearest_pico_pdf(&self, p2: f64) -> impl Fn(f64) -> f64 {
        let pl = p2 * self.model.tier(Tier::Pico).density;
        move |r| 2.0 * PI * pl * r * (-PI * pl * r * r).exp()
    }

    /// Pico coverage for a file cached with probability `p2`.
    pub fn coverage_tier2_with(&self, p2: f64, tau: f64, include_noise: bool) -> Result<f64> {
        check_threshold(tau)?;
        if p2 == 0.0 || tau.is_infinite() {
            return Ok(0.0);
        }
        let v = self.pico_radial_sum(tau, p2, &self.distance_rule, self.nearest_pico_pdf(p2), include_noise, false)?;
        Ok(v.clamp(0.0, 1.0))
    }

    /// Pico coverage, `P[SINR > τ]` from the nearest pico BS caching `file`.
    pub fn coverage_tier2(&self, file: usize, tau: f64, include_noise: bool) -> Result<f64> {
        let p = self.placement(file)?;
        self.coverage_tier2_with(p.pico_prob, tau, include_noise)
    }

    /// Density of the interference-limited pico SIR, `−dP/dτ`.
    pub fn coverage_tier2_pdf_with(&self, p2: f64, tau: f64) -> Result<f64> {
        check_threshold(tau)?;
        if p2 == 0.0 || tau.is_infinite() {
            return Ok(0.0);
        }
        let v = self.pico_radial_sum(tau, p2, &self.pdf_rule, self.nearest_pico_pdf(p2), false, true)?;
        Ok(v.max(0.0))
    }

    pub fn coverage_tier2_pdf(&self, file: usize, tau: f64) -> Result<f64> {
        let p = self.placement(file)?;
        self.coverage_tier2_pdf_with(p.pico_prob, tau)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_at_zero_and_growth() {
        for alpha in [2.0, 2.5, 4.0] {
            assert_eq!(interference_kernel(alpha, 3, 0.0).unwrap(), 0.0);
            let a = interference_kernel(alpha, 3, 0.5).unwrap();
            let b = interference_kernel(alpha, 3, 5.0).unwrap();
            assert!(a > 0.0 && b > a);
        }
        assert!(interference_kernel(1.5, 1, 1.0).is_err());
    }

    #[test]
    fn kernel_alpha4_rayleigh_closed_form() {
        // K = Δ − (S⁰ − 1) = (π/2)√z − √z·arctan√z
        for z in [0.01f64, 1.0, 30.0] {
            let q = z.sqrt();
            let expected = q * (std::f64::consts::FRAC_PI_2 - q.atan());
            let got = interference_kernel(4.0, 1, z).unwrap();
            assert!((got - expected).abs() < 1e-12 * expected.max(1e-3));
        }
    }

    #[test]
    fn slope_is_z_times_derivative() {
        for alpha in [2.0, 3.0] {
            for z in [0.2, 3.0, 40.0] {
                let h = 1e-5 * z;
                let fd = (interference_kernel(alpha, 2, z + h).unwrap()
                    - interference_kernel(alpha, 2, z - h).unwrap())
                    / (2.0 * h);
                let s = interference_kernel_slope(alpha, 2, z).unwrap();
                assert!((s - z * fd).abs() < 1e-7 * s.abs(), "α={alpha} z={z}");
            }
        }
    }
}
