//! Heavy-tailed distribution analysis.
//!
//! The crate is split along the lines of the analysis pipeline:
//!
//! - [`stable`]: the stable-law characteristic function, its numerical inversion to
//!   densities and distribution functions, tail comparisons against the Gaussian, and
//!   CF-level stability / semi-stability identities.
//! - [`scaling`]: Hurst exponent estimation from the mean moving-window range.
//! - [`fractal`]: box-counting dimension of a time-series trace and the closed-form
//!   maps between the Hurst exponent and fractal dimension.
//! - [`synth`]: seeded generators for Gaussian noise, Gaussian walks, fractional
//!   Brownian motion and stable variates.
//!
//! Shared types used across modules are re-exported at the crate root.

// `!(x > 0.0)` style guards are used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fractal;
pub mod numeric;
pub mod quadrature;
pub mod scaling;
pub mod series;
pub mod stable;
pub mod synth;

pub use error::{Error, Result};
pub use fractal::{BoxDimEstimate, BoxGridConfig};
pub use scaling::{HurstEstimate, ScalingPoint, WindowPlan};
pub use series::TimeSeries;
pub use stable::{InversionConfig, SemiStableSpec, StabilityReport, StableParams, TailRow};
pub use synth::{FbmSpec, Seed};

/// Complex carrier for characteristic-function values.
pub type ComplexValue = num_complex::Complex64;
