//! Analytic and Monte Carlo evaluation of cache-enabled two-tier
//! heterogeneous networks: sub-6 GHz macro cells overlaid by dense mmWave
//! pico cells with uniform-linear-array beamforming and a LOS-ball blockage
//! model.
//!
//! The crate is organised as five layers:
//!
//! - [`numerics`]: Gauss hypergeometric `S` functions, Gamma products,
//!   Gauss-Chebyshev rules and adaptive integration.
//! - [`model`]: parameter types, validation, configuration files, and the
//!   elementary physical-layer functions shared by both engines.
//! - [`analytic`]: closed-form and semi-closed-form coverage, association,
//!   success-probability and area-spectral-efficiency expressions.
//! - [`montecarlo`]: a drop-based simulator used as ground truth.
//! - [`experiments`]: sweeps, figure presets, and CSV output.

// `!(x > 0.0)` is how parameter checks reject NaN along with bad values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod error;
pub mod experiments;
pub mod model;
pub mod montecarlo;
pub mod numerics;

pub use error::{Error, Result};
