//! Simulation and extreme-value analysis of first hitting times for
//! subordinate Brownian motions `X(t) = B(S(t)) + x0`.
//!
//! The crate is organised around the pipeline used to study the fastest of
//! `N` searchers:
//!
//! * [`subordinators`] describes the time change `S` (stable, tempered
//!   stable, gamma) and samples its increments exactly;
//! * [`targets`] describes the target set `U` and the Gaussian mass
//!   `F(s) = P(B(s) + x0 ∈ U)`;
//! * [`rates`] evaluates the short-time hitting rate `ρ = ∫ F(s) ν(ds)`;
//! * [`simulate`] generates first hitting times on a time grid;
//! * [`extremes`] turns a pool of hitting times into order statistics and
//!   compares them with the Erlang limit.

// `!(x > 0.0)` is how NaN gets rejected alongside out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod extremes;
pub mod quadrature;
pub mod rates;
pub mod rng;
pub mod simulate;
pub mod special;
pub mod subordinators;
pub mod targets;

pub use error::{Error, Result};
