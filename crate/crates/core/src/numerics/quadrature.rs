//! Gauss-Chebyshev rules and adaptive integration helpers.

use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};

/// Gauss-Chebyshev (first kind) nodes on `(-1, 1)`.
///
/// The rule is used in its "unweighted" form: for a smooth `g`,
///
/// ```text
/// ∫₋₁¹ g(x) dx ≈ (π/u) Σₖ √(1 − xₖ²) g(xₖ),   xₖ = cos((2k − 1)π / 2u)
/// ```
///
/// The `√(1 − xₖ²)` factors are cached alongside the nodes; the constant
/// `π/u` is applied by [`QuadratureRule::integrate`] or by the caller.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    order: usize,
    nodes: Vec<f64>,
    sqrt_weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn gauss_chebyshev(order: usize) -> Result<Self> {
        if order == 0 {
            return invalid("Gauss-Chebyshev order must be at least 1");
        }
        let u = order as f64;
        let (nodes, sqrt_weights) = (1..=order)
            .map(|k| {
                let theta = (2 * k - 1) as f64 * PI / (2.0 * u);
                // sin(θ) = √(1 − cos²θ) without the cancellation near ±1
                (theta.cos(), theta.sin())
            })
            .unzip();
        Ok(Self {
            order,
            nodes,
            sqrt_weights,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// `√(1 − xₖ²)` for every node, in node order.
    pub fn sqrt_weights(&self) -> &[f64] {
        &self.sqrt_weights
    }

    /// The constant factor `π/u`.
    pub fn scale(&self) -> f64 {
        PI / self.order as f64
    }

    /// Approximates `∫₋₁¹ g(x) dx`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut g: F) -> f64 {
        let sum: f64 = self
            .nodes
            .iter()
            .zip(&self.sqrt_weights)
            .map(|(&x, &w)| w * g(x))
            .sum();
        self.scale() * sum
    }

    /// Approximates `∫ₐᵇ g(t) dt` through the affine map `t = a + (x + 1)(b − a)/2`.
    pub fn integrate_interval<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut g: F) -> f64 {
        let half = 0.5 * (b - a);
        half * self.integrate(|x| g(a + (x + 1.0) * half))
    }
}

/// Builds the rule with `order` nodes.
pub fn gauss_chebyshev_nodes(order: usize) -> Result<QuadratureRule> {
    QuadratureRule::gauss_chebyshev(order)
}

/// Result of a doubling convergence study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Converged {
    pub value: f64,
    pub order: usize,
    /// `|I(order) − I(order/2)|` at the accepted order.
    pub change: f64,
}

/// Re-evaluates `∫₋₁¹ g` with orders `start, 2·start, …` until two successive
/// estimates differ by less than `rel_tol` (relative to the larger magnitude),
/// or `max_order` is exceeded.
pub fn integrate_doubling<F: Fn(f64) -> f64>(
    g: F,
    start: usize,
    rel_tol: f64,
    max_order: usize,
) -> Result<Converged> {
    let mut order = start.max(1);
    let mut previous = QuadratureRule::gauss_chebyshev(order)?.integrate(&g);
    while order * 2 <= max_order {
        order *= 2;
        let current = QuadratureRule::gauss_chebyshev(order)?.integrate(&g);
        let change = (current - previous).abs();
        if change <= rel_tol * current.abs().max(previous.abs()).max(f64::MIN_POSITIVE) {
            return Ok(Converged {
                value: current,
                order,
                change,
            });
        }
        previous = current;
    }
    Err(Error::Convergence(format!(
        "Gauss-Chebyshev estimate did not settle to {rel_tol:e} by order {max_order}"
    )))
}

/// Adaptive double-exponential integration over a finite interval.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    quadrature::double_exponential::integrate(f, a, b, abs_tol).integral
}

/// `∫ₐ^∞ f(t) dt` via `t = a + v/(1 − v)`, `v ∈ (0, 1)`.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, a: f64, abs_tol: f64) -> f64 {
    let g = |v: f64| {
        if v >= 1.0 {
            return 0.0;
        }
        let one_minus = 1.0 - v;
        let t = a + v / one_minus;
        if !t.is_finite() {
            return 0.0;
        }
        let value = f(t) / (one_minus * one_minus);
        if value.is_finite() {
            value
        } else {
            0.0
        }
    };
    quadrature::double_exponential::integrate(g, 0.0, 1.0, abs_tol).integral
}
