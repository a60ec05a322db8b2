//! Gamma-function products, the `α = 2` log-sum helper, and error functions.

use std::f64::consts::PI;

use libm::tgamma as gamma;

use crate::error::{domain, Result};

/// Γ(1 − 2/α) Γ(N + 2/α) / Γ(N), the common prefactor of Δ and Λ.
fn gamma_product(alpha: f64, np: u32) -> f64 {
    let d = 2.0 / alpha;
    let n = f64::from(np);
    gamma(1.0 - d) * gamma(n + d) / gamma(n)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 2.0) || !alpha.is_finite() {
        return domain(format!("path-loss exponent must exceed 2, got {alpha}"));
    }
    Ok(())
}

/// `Δ(z) = Γ(1 − 2/α) Γ(N + 2/α) Γ(N)⁻¹ z^{2/α}`.
///
/// Interference functional of an unbounded PPP of interferers seen from the
/// origin; equals `lim_{r→0} r²(S⁰(z/r^α) − 1)`.
pub fn cap_delta(alpha: f64, np: u32, z: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if np == 0 {
        return domain("fading order must be at least 1");
    }
    if !(z >= 0.0) {
        return domain(format!("Δ needs z >= 0, got {z}"));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    Ok(gamma_product(alpha, np) * z.powf(2.0 / alpha))
}

/// `Λ(z) = dΔ/dz = (2/α) Γ(1 − 2/α) Γ(N + 2/α) Γ(N)⁻¹ z^{2/α − 1}`.
pub fn cap_lambda(alpha: f64, np: u32, z: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if np == 0 {
        return domain("fading order must be at least 1");
    }
    if !(z > 0.0) {
        return domain(format!("Λ needs z > 0, got {z}"));
    }
    if z.is_infinite() {
        return Ok(0.0);
    }
    Ok(2.0 / alpha * gamma_product(alpha, np) * z.powf(2.0 / alpha - 1.0))
}

/// Above this `y` the closed form of `F_y` loses relative precision and the
/// power series in `1/y` takes over.
const F_Y_SERIES_FROM: f64 = 2.0;

/// `F_y(y) = N ln(1 + 1/y) − 1/(y(1 + y)^{N−1}) − Σ_{m=1}^{N−1} N/((1 + y)^{N−m}(N − m))`.
///
/// Equivalently `F_y(y) = −∫₀^{1/y} (w/(1 + w))^N dw`, so `F_y < 0`,
/// increasing in `y`, and `F_y → 0` as `y → ∞`.
pub fn f_y(y: f64, np: u32) -> Result<f64> {
    if np == 0 {
        return domain("fading order must be at least 1");
    }
    if !(y > 0.0) {
        return domain(format!("F_y needs y > 0, got {y}"));
    }
    if y.is_infinite() {
        return Ok(0.0);
    }
    if y > F_Y_SERIES_FROM {
        return Ok(f_y_series(y, np));
    }
    Ok(f_y_closed(y, np))
}

/// The closed form, valid everywhere but cancelling badly for large `y`.
pub fn f_y_closed(y: f64, np: u32) -> f64 {
    let n = f64::from(np);
    let one_plus = 1.0 + y;
    let sum: f64 = (1..np)
        .map(|m| n / (one_plus.powi((np - m) as i32) * f64::from(np - m)))
        .sum();
    n * (1.0 / y).ln_1p() - 1.0 / (y * one_plus.powi(np as i32 - 1)) - sum
}

/// `−Σ_k (−1)^k C(N+k−1, k) U^{N+k+1}/(N+k+1)` with `U = 1/y < 1`.
fn f_y_series(y: f64, np: u32) -> f64 {
    let u = 1.0 / y;
    let n = f64::from(np);
    let mut coeff = u.powi(np as i32 + 1);
    let mut sum = 0.0;
    for k in 0..400 {
        let kf = f64::from(k);
        let term = coeff / (n + kf + 1.0);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
        coeff *= -(n + kf) / (kf + 1.0) * u;
    }
    -sum
}

/// `F_y(y) + 1/(y(1 + y)^N)`, the `y`-derivative of `y·F_y(y)`.
pub fn f_y_log_derivative(y: f64, np: u32) -> Result<f64> {
    let f = f_y(y, np)?;
    if y.is_infinite() {
        return Ok(0.0);
    }
    Ok(f + 1.0 / (y * (1.0 + y).powi(np as i32)))
}

/// Complementary error function.
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// Scaled complementary error function `exp(x²)·erfc(x)`.
pub fn erfcx(x: f64) -> f64 {
    if x < 25.0 {
        return (x * x).exp() * erfc(x);
    }
    // asymptotic series; at x ≥ 25 the seventh term is below 1e-15
    let inv2 = 1.0 / (2.0 * x * x);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..8 {
        term *= -f64::from(2 * k - 1) * inv2;
        sum += term;
    }
    sum / (x * PI.sqrt())
}

/// `η = N (N!)^{−1/N}`, the scaling of the Gamma CDF upper bound used for
/// Nakagami desired links.
pub fn eta_l(np: u32) -> f64 {
    let n = f64::from(np);
    let factorial: f64 = (1..=np).map(f64::from).product();
    n * factorial.powf(-1.0 / n)
}

/// Binomial coefficient as `f64`.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// Neumaier-compensated sum, for alternating series whose terms nearly cancel.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for t in terms {
        let next = sum + t;
        carry += if sum.abs() >= t.abs() {
            (sum - next) + t
        } else {
            (t - next) + sum
        };
        sum = next;
    }
    sum + carry
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_alpha4_rayleigh() {
        assert_eq!(cap_delta(4.0, 1, 0.0).unwrap(), 0.0);
        assert!((cap_delta(4.0, 1, 1.0).unwrap() - PI / 2.0).abs() < 1e-13);
        assert!((cap_delta(4.0, 1, 4.0).unwrap() - PI).abs() < 1e-13);
        assert!(cap_delta(2.0, 1, 1.0).is_err());
        assert!(cap_delta(1.5, 1, 1.0).is_err());
    }

    #[test]
    fn lambda_alpha4_rayleigh() {
        assert!((cap_lambda(4.0, 1, 1.0).unwrap() - PI / 4.0).abs() < 1e-13);
        assert!(cap_lambda(4.0, 1, 0.0).is_err());
    }

    #[test]
    fn f_y_reference_values() {
        // N = 1: ln(1 + 1/y) − 1/y
        let v = f_y(1.0, 1).unwrap();
        assert!((v - (2f64.ln() - 1.0)).abs() < 1e-15);
        assert!(f_y(0.0, 1).is_err());
        for np in 1..=4 {
            assert!(f_y(1e6, np).unwrap().abs() < 1e-5);
        }
    }

    #[test]
    fn f_y_series_and_closed_form_agree_at_switch() {
        for np in 1..=4 {
            for y in [1.5, 2.0, 2.5] {
                let closed = f_y_closed(y, np);
                let series = f_y_series(y, np);
                assert!((closed - series).abs() < 1e-11 * closed.abs(), "N={np} y={y}");
            }
        }
    }

    #[test]
    fn erfc_basics() {
        assert_eq!(erfc(0.0), 1.0);
        assert!((erfc(-1.0) - (2.0 - erfc(1.0))).abs() < 1e-15);
        assert!((erfc(1.0) - 0.157_299_207_050_285_13).abs() < 1e-15);
    }

    #[test]
    fn erfcx_is_continuous_at_switch() {
        let direct = 625f64.exp() * erfc(25.0);
        let asymptotic = erfcx(25.0);
        assert!((direct - asymptotic).abs() < 1e-13 * direct);
    }

    #[test]
    fn eta_values() {
        assert_eq!(eta_l(1), 1.0);
        assert!((eta_l(3) - 3.0 / 6f64.cbrt()).abs() < 1e-15);
    }

    #[test]
    fn compensated_sum_recovers_lost_bits() {
        let naive: f64 = [1.0, 1e100, 1.0, -1e100].iter().sum();
        assert_eq!(naive, 0.0);
        assert_eq!(compensated_sum([1.0, 1e100, 1.0, -1e100]), 2.0);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(3, 0), 1.0);
        assert_eq!(binomial(3, 2), 3.0);
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(2, 3), 0.0);
    }
}
