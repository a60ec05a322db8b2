//! Special functions and quadrature rules behind the analytic engine.
//!
//! Everything here is a pure function of its arguments.

mod hypergeometric;
mod quadrature;
mod special;

pub use hypergeometric::{hyp2f1_neg, hyp_s, hyp_s_remainder, MAX_SERIES_TERMS, SERIES_TOLERANCE};
pub use quadrature::{
    gauss_chebyshev_nodes, integrate, integrate_doubling, integrate_to_infinity, Converged,
    QuadratureRule,
};
pub use special::{
    binomial, cap_delta, cap_lambda, compensated_sum, erfc, erfcx, eta_l, f_y, f_y_closed,
    f_y_log_derivative,
};
