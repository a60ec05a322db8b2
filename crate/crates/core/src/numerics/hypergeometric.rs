//! Gauss hypergeometric function on the negative real axis.
//!
//! Only the ray `₂F₁(a, b; c; −z)`, `z ≥ 0`, is supported. For moderate `z`
//! the Pfaff transformation maps the argument into `[0, 1)`; for large `z`
//! the `1/z` connection formula is used, which also exposes the algebraic
//! leading term separately so callers can form `S − Δ` without cancellation.

use libm::tgamma as gamma;

use crate::error::{domain, Error, Result};

use super::special::{cap_delta, cap_lambda};

/// Relative size of a series term, compared with the partial sum, below which
/// summation stops.
pub const SERIES_TOLERANCE: f64 = 1e-14;

/// Hard cap on the number of series terms.
pub const MAX_SERIES_TERMS: usize = 100_000;

/// Above this `z` the `1/z` connection formula replaces the Pfaff series.
const LARGE_Z: f64 = 8.0;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

fn recip_gamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        0.0
    } else {
        1.0 / gamma(x)
    }
}

/// Direct power series `Σ (a)ₙ(b)ₙ/((c)ₙ n!) xⁿ` for `|x| < 1`.
fn power_series(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..MAX_SERIES_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * x;
        sum += term;
        if term == 0.0 || term.abs() < SERIES_TOLERANCE * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::Convergence(format!(
        "2F1({a}, {b}; {c}; {x}) needed more than {MAX_SERIES_TERMS} terms"
    )))
}

/// The two pieces of the `1/z` connection formula for `₂F₁(a, b; c; −z)`:
/// `(Γ(c)Γ(b−a)/(Γ(b)Γ(c−a)) z^{−a} ₂F₁(a, a−c+1; a−b+1; −1/z), same with a↔b)`.
fn connection_terms(a: f64, b: f64, c: f64, z: f64) -> Result<(f64, f64)> {
    let gc = gamma(c);
    let inv = -1.0 / z;
    let first = gc * gamma(b - a) * recip_gamma(b) * recip_gamma(c - a)
        * z.powf(-a)
        * power_series(a, a - c + 1.0, a - b + 1.0, inv)?;
    let second = gc * gamma(a - b) * recip_gamma(a) * recip_gamma(c - b)
        * z.powf(-b)
        * power_series(b, b - c + 1.0, b - a + 1.0, inv)?;
    Ok((first, second))
}

/// `₂F₁(a, b; c; −z)` for `z ≥ 0`.
pub fn hyp2f1_neg(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if is_nonpositive_integer(c) {
        return domain(format!("2F1 undefined for c = {c}"));
    }
    if !(z >= 0.0) {
        return domain(format!("2F1 on the negative ray needs z >= 0, got {z}"));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if z > LARGE_Z && !is_integer(a - b) {
        let (first, second) = connection_terms(a, b, c, z)?;
        return Ok(first + second);
    }
    let w = z / (1.0 + z);
    Ok((1.0 + z).powf(-a) * power_series(a, c - b, c, w)?)
}

fn is_integer(x: f64) -> bool {
    x == x.floor()
}

fn s_parameters(k: u8, alpha: f64, np: u32) -> Result<(f64, f64, f64)> {
    if k > 1 {
        return domain(format!("S^k is defined for k in {{0, 1}}, got {k}"));
    }
    if np == 0 {
        return domain("fading order must be at least 1");
    }
    let k = f64::from(k);
    let d = 2.0 / alpha;
    Ok((k - d, k + f64::from(np), k + 1.0 - d))
}

/// `S^k(z) = ₂F₁(k − 2/α, k + N; k + 1 − 2/α; −z)`, `k ∈ {0, 1}`.
///
/// The interference functional behind every Laplace transform in the
/// analytic engine. For `k = 0` it equals
/// `1 + 2∫₁^∞ (1 − (1 + z v^{−α})^{−N}) v dv`.
pub fn hyp_s(k: u8, alpha: f64, np: u32, z: f64) -> Result<f64> {
    let (a, b, c) = s_parameters(k, alpha, np)?;
    if z.is_infinite() && z > 0.0 {
        return Ok(if k == 0 { f64::INFINITY } else { 0.0 });
    }
    hyp2f1_neg(a, b, c, z)
}

/// Algebraic leading term of `S^k(z)` as `z → ∞`: `Δ(z)` for `k = 0` and
/// `(α − 2)Λ(z)/(2N)` for `k = 1`.
fn s_leading(k: u8, alpha: f64, np: u32, z: f64) -> Result<f64> {
    match k {
        0 => cap_delta(alpha, np, z),
        _ => Ok((alpha - 2.0) / (2.0 * f64::from(np)) * cap_lambda(alpha, np, z)?),
    }
}

/// `S^k(z)` minus its algebraic leading term, computed without cancellation
/// for large `z`. Requires `α > 2`.
pub fn hyp_s_remainder(k: u8, alpha: f64, np: u32, z: f64) -> Result<f64> {
    if !(alpha > 2.0) {
        return domain(format!("S^k remainder needs alpha > 2, got {alpha}"));
    }
    let (a, b, c) = s_parameters(k, alpha, np)?;
    if z.is_infinite() && z > 0.0 {
        return Ok(0.0);
    }
    if z > LARGE_Z && !is_integer(a - b) {
        // a − c + 1 = 0 for both k, so the first connection term is exactly
        // the leading power and the second is the remainder.
        let (_, second) = connection_terms(a, b, c, z)?;
        return Ok(second);
    }
    if z == 0.0 {
        // Λ(0) is singular, so only k = 0 has a finite remainder there.
        return match k {
            0 => Ok(1.0),
            _ => domain("S^1 remainder undefined at z = 0"),
        };
    }
    Ok(hyp2f1_neg(a, b, c, z)? - s_leading(k, alpha, np, z)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn zero_argument_is_one() {
        for alpha in [2.25, 3.0, 4.0] {
            for np in 1..=3 {
                assert_eq!(hyp_s(0, alpha, np, 0.0).unwrap(), 1.0);
            }
        }
    }

    #[test]
    fn rayleigh_alpha4_closed_form() {
        // S⁰ = 1 + √z·arctan(√z) for α = 4, N = 1
        for z in [0.1f64, 0.5, 1.0, 3.0, 7.9, 8.1, 50.0, 1e4] {
            let expected = 1.0 + z.sqrt() * z.sqrt().atan();
            let got = hyp_s(0, 4.0, 1, z).unwrap();
            assert!((got - expected).abs() < 1e-12 * expected, "z={z}: {got} vs {expected}");
        }
        let at_one = hyp_s(0, 4.0, 1, 1.0).unwrap();
        assert!((at_one - (1.0 + PI / 4.0)).abs() < 1e-14);
    }

    #[test]
    fn both_branches_agree_at_switch() {
        for alpha in [2.25, 3.0, 4.0] {
            for np in 1..=3 {
                for k in 0..=1u8 {
                    let (a, b, c) = s_parameters(k, alpha, np).unwrap();
                    let z = LARGE_Z * 1.5;
                    let (f, s) = connection_terms(a, b, c, z).unwrap();
                    let w = z / (1.0 + z);
                    let pfaff = (1.0 + z).powf(-a) * power_series(a, c - b, c, w).unwrap();
                    assert!(((f + s) - pfaff).abs() < 1e-11 * pfaff.abs());
                }
            }
        }
    }

    #[test]
    fn rejects_nonpositive_integer_c() {
        assert!(hyp2f1_neg(0.5, 1.0, 0.0, 1.0).is_err());
        assert!(hyp2f1_neg(0.5, 1.0, -2.0, 1.0).is_err());
        // α = 2 makes c = 1 − 2/α = 0 for S⁰
        assert!(hyp_s(0, 2.0, 3, 1.0).is_err());
    }

    #[test]
    fn remainder_vanishes_at_infinity() {
        let r = hyp_s_remainder(0, 4.0, 1, 1e12).unwrap();
        assert!(r.abs() < 1e-10);
    }
}
