//! Beta and beta-prime random polytopes: tail functions and their bounds,
//! exact samplers, convex-hull geometry and seeded Monte Carlo estimators
//! for the threshold phenomena of their volumes and contents.
//!
//! Module map:
//! - [`specfun`]: log-gamma, normalising constants, adaptive quadrature.
//! - [`dist`]: the two laws, tail functions `F` / `F̃`, analytic bounds, asymptotics.
//! - [`sampler`]: reproducible random streams and exact point samplers.
//! - [`geometry`]: hull membership (phase-one simplex), 2D hulls, halfspace polytopes.
//! - [`montecarlo`]: estimators returning mean and standard error.
//! - [`experiments`]: parameter sweeps, CSV output and the bounds audit.

// `!(x > 0.0)`-style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dist;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod montecarlo;
pub mod sampler;
pub mod specfun;
pub mod stats;

pub use error::{Error, Result};
