//! Reference values built with Gauss-Legendre on graded panels, a rule the
//! library itself never uses.

#![allow(dead_code)]

use std::f64::consts::PI;
use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::legendre::GaussLegendre;

fn rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(NonZeroUsize::new(24).unwrap()))
}

/// `∫ₐᵇ f` split into `panels` equal pieces.
pub fn panels<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|k| rule().integrate(a + k as f64 * h, a + (k + 1) as f64 * h, &f))
        .sum()
}

/// `∫₀¹ f` on dyadic panels `[2^{−k−1}, 2^{−k}]` refined toward 0, so
/// features at every scale of `s` are resolved.
pub fn graded<F: Fn(f64) -> f64>(f: F) -> f64 {
    let mut total = 0.0;
    let mut hi = 1.0;
    for _ in 0..80 {
        let lo = 0.5 * hi;
        total += panels(&f, lo, hi, 2);
        hi = lo;
    }
    total + panels(&f, 0.0, hi, 1)
}

/// `1 − (1 + x)^{−N}` without cancellation.
fn one_minus_pow(x: f64, np: u32) -> f64 {
    -(-f64::from(np) * x.ln_1p()).exp_m1()
}

/// `S⁰(z) = 1 + 2∫₁^∞ (1 − (1 + z v^{−α})^{−N}) v dv`, with `v = 1/t`,
/// `t = s^{1/(α−2)}`.
pub fn s0(alpha: f64, np: u32, z: f64) -> f64 {
    let m = 1.0 / (alpha - 2.0);
    let g = |s: f64| {
        if s == 0.0 {
            return m * f64::from(np) * z;
        }
        let t = s.powf(m);
        one_minus_pow(z * t.powf(alpha), np) / t.powi(3) * m * s.powf(m - 1.0)
    };
    1.0 + 2.0 * graded(g)
}

/// `S¹(z)` from Euler's integral with `t = s^{1/a}`, `a = 1 − 2/α`:
/// `∫₀¹ (1 + z s^{1/a})^{−(N+1)} ds`.
pub fn s1(alpha: f64, np: u32, z: f64) -> f64 {
    let inv_a = 1.0 / (1.0 - 2.0 / alpha);
    graded(|s| (1.0 + z * s.powf(inv_a)).powi(-(np as i32 + 1)))
}

/// `Δ(z) = 2∫₀^∞ (1 − (1 + z v^{−α})^{−N}) v dv`.
pub fn delta(alpha: f64, np: u32, z: f64) -> f64 {
    let inner = graded(|v| {
        if v == 0.0 {
            return 0.0;
        }
        2.0 * one_minus_pow(z * v.powf(-alpha), np) * v
    });
    inner + s0(alpha, np, z) - 1.0
}

/// `Λ(z) = 2N∫₀^∞ v^{1−α}(1 + z v^{−α})^{−N−1} dv`.
pub fn lambda(alpha: f64, np: u32, z: f64) -> f64 {
    let n = np as i32;
    let near = graded(|v| v.powf(1.0 + alpha * f64::from(np)) / (v.powf(alpha) + z).powi(n + 1));
    let m = 1.0 / (alpha - 2.0);
    let far = graded(|s| {
        let t = s.powf(m);
        m * (1.0 + z * t.powf(alpha)).powi(-(n + 1))
    });
    2.0 * f64::from(np) * (near + far)
}

/// `F_y(y) = −∫₀^{1/y} (w/(1 + w))^N dw`.
pub fn f_y(y: f64, np: u32) -> f64 {
    let b = 1.0 / y;
    -panels(|w| (w / (1.0 + w)).powi(np as i32), 0.0, b, 64 + b.ceil().min(4000.0) as usize)
}

/// `erfc(x) = (2/√π)∫ₓ^∞ e^{−t²} dt`.
pub fn erfc(x: f64) -> f64 {
    let b = x.max(0.0) + 12.0;
    2.0 / PI.sqrt() * panels(|t| (-t * t).exp(), x, b, (4.0 * (b - x)).ceil() as usize)
}

/// ULA gain `sin²(πNω)/(N² sin²(πω))` evaluated directly.
pub fn array_gain(omega: f64, n: u32) -> f64 {
    let nf = f64::from(n);
    let den = (PI * omega).sin();
    if den.abs() < 1e-300 {
        return 1.0;
    }
    ((PI * nf * omega).sin() / (nf * den)).powi(2)
}

/// Pico Laplace transform from the PPP definition: a Gamma(N) mean-one mark
/// gives `E[e^{−x h}] = (1 + x/N)^{−N}`; the beam offset is uniform on
/// `[−d/λ, d/λ]` and integrated lobe by lobe.
#[allow(clippy::too_many_arguments)]
pub fn laplace_pico(s: f64, tau: f64, r: f64, p: f64, lambda2: f64, los_radius: f64, alpha: f64, np: u32, antennas: u32, spacing: f64) -> f64 {
    let lobe = 1.0 / f64::from(antennas);
    let lobes = (2.0 * spacing / lobe).round() as usize;
    let mean_void = |rho: f64| -> f64 {
        let per_omega = |omega: f64| {
            let x = s * tau * array_gain(omega, antennas);
            panels(
                |v: f64| {
                    if v == 0.0 {
                        return 0.0;
                    }
                    let arg = x * v.powf(-alpha) / f64::from(np);
                    one_minus_pow(arg, np) * v
                },
                0.0,
                rho,
                64,
            )
        };
        let total: f64 = (0..lobes)
            .map(|k| {
                let a = -spacing + k as f64 * lobe;
                panels(per_omega, a, a + lobe, 1)
            })
            .sum();
        2.0 * total / (2.0 * spacing)
    };
    (-PI * lambda2 * (mean_void(los_radius) - p * mean_void(r))).exp()
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}
