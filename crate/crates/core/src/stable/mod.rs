//! Stable-law characteristic functions and their numerical inversion.
//!
//! The log characteristic function is
//!
//! ```text
//! log φ(t) = iσt − γ|t|^α (1 + iβ·sign(t)·ω(α, t))
//! ω(α, t) = tan(απ/2)          α ≠ 1
//! ω(1, t) = −(2/π)·ln|t|
//! ```
//!
//! Note the `+iβ` sign in front of the skew term. Many references write `−iβ`; a
//! law with skewness `β` here is the law with skewness `−β` in that convention.
//! Symmetric laws (`β = 0`) are identical in both. At `α = 2` the skew term
//! vanishes and the law is Gaussian with mean `σ` and variance `2γ`.

mod inversion;
mod stability;
mod tail;

use std::f64::consts::{FRAC_2_PI, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::ComplexValue;

pub use inversion::{cdf, pdf, InversionConfig};
pub use stability::{
    check_semistability, check_stability, check_stability_on, semistable_cf, SemiStableCf,
    SemiStableSpec, StabilityReport, DEFAULT_Z_GRID,
};
pub use tail::{tail_table, TailRow, TABLE_XS};

/// Parameters `(α, β, γ, σ)` of a stable law: tail exponent, skewness, scale and location.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct StableParams {
    alpha: f64,
    beta: f64,
    gamma: f64,
    sigma: f64,
}

#[derive(Deserialize)]
struct RawParams {
    alpha: f64,
    beta: f64,
    gamma: f64,
    sigma: f64,
}

impl TryFrom<RawParams> for StableParams {
    type Error = crate::Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        Self::new(raw.alpha, raw.beta, raw.gamma, raw.sigma)
    }
}

impl StableParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64, sigma: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(invalid(format!("alpha must lie in (0, 2], got {alpha}")));
        }
        if !(-1.0..=1.0).contains(&beta) {
            return Err(invalid(format!("beta must lie in [-1, 1], got {beta}")));
        }
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(invalid(format!(
                "gamma must be positive and finite, got {gamma}"
            )));
        }
        if !sigma.is_finite() {
            return Err(invalid(format!("sigma must be finite, got {sigma}")));
        }
        Ok(Self {
            alpha,
            beta,
            gamma,
            sigma,
        })
    }

    /// Symmetric, centred law scaled so that `α = 2` is the standard normal:
    /// `γ = 1/2` at `α = 2` and `γ = 1` otherwise.
    pub fn standardized(alpha: f64) -> Result<Self> {
        let gamma = if alpha == 2.0 { 0.5 } else { 1.0 };
        Self::new(alpha, 0.0, gamma, 0.0)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn is_gaussian(&self) -> bool {
        self.alpha == 2.0
    }

    pub fn is_symmetric(&self) -> bool {
        self.beta == 0.0 || self.is_gaussian()
    }

    /// Skew multiplier `ω(α, |t|)`; zero at `α = 2`.
    pub(crate) fn skew_factor(&self, abs_t: f64) -> f64 {
        if self.alpha == 2.0 {
            0.0
        } else if self.alpha == 1.0 {
            -FRAC_2_PI * abs_t.ln()
        } else {
            (self.alpha * PI / 2.0).tan()
        }
    }

    /// `log φ(t)` without argument validation.
    pub(crate) fn log_cf_at(&self, t: f64) -> Complex64 {
        if t == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let abs_t = t.abs();
        let power = self.gamma * abs_t.powf(self.alpha);
        let skew = if self.beta == 0.0 {
            0.0
        } else {
            power * self.beta * t.signum() * self.skew_factor(abs_t)
        };
        Complex64::new(-power, self.sigma * t - skew)
    }
}

fn check_argument(t: f64) -> Result<()> {
    if t.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!(
            "characteristic function argument must be finite, got {t}"
        )))
    }
}

/// Logarithm of the characteristic function at `t`; exactly zero at `t = 0`.
pub fn log_cf(p: &StableParams, t: f64) -> Result<ComplexValue> {
    check_argument(t)?;
    Ok(p.log_cf_at(t))
}

/// Characteristic function `φ(t) = E[e^{itX}]`.
pub fn cf(p: &StableParams, t: f64) -> Result<ComplexValue> {
    check_argument(t)?;
    if t == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    Ok(p.log_cf_at(t).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(a: f64, b: f64, g: f64, s: f64) -> StableParams {
        StableParams::new(a, b, g, s).unwrap()
    }

    #[test]
    fn validation() {
        assert!(StableParams::new(0.0, 0.0, 1.0, 0.0).is_err());
        assert!(StableParams::new(2.01, 0.0, 1.0, 0.0).is_err());
        assert!(StableParams::new(1.5, 1.1, 1.0, 0.0).is_err());
        assert!(StableParams::new(1.5, 0.0, 0.0, 0.0).is_err());
        assert!(StableParams::new(1.5, 0.0, 1.0, f64::NAN).is_err());
        assert!(StableParams::new(f64::NAN, 0.0, 1.0, 0.0).is_err());
        assert!(StableParams::new(2.0, -1.0, 1e-3, 5.0).is_ok());
        assert!(log_cf(&params(1.5, 0.0, 1.0, 0.0), f64::INFINITY).is_err());
    }

    #[test]
    fn log_cf_examples() {
        let z = log_cf(&params(2.0, 0.0, 0.5, 0.0), 1.0).unwrap();
        assert_eq!(z, Complex64::new(-0.5, 0.0));

        let z = log_cf(&params(1.0, 0.0, 1.0, 0.0), 2.0).unwrap();
        assert_eq!(z, Complex64::new(-2.0, 0.0));

        // −1·(1 + i·0.5·tan(0.75π)) = −1 + 0.5i
        let z = log_cf(&params(1.5, 0.5, 1.0, 0.0), 1.0).unwrap();
        assert!((z.re + 1.0).abs() < 1e-15);
        assert!((z.im - 0.5).abs() < 1e-15);

        assert_eq!(
            log_cf(&params(0.7, 0.9, 3.0, 2.0), 0.0).unwrap(),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn gaussian_ignores_beta() {
        let a = log_cf(&params(2.0, 0.0, 0.5, 0.3), 1.7).unwrap();
        let b = log_cf(&params(2.0, 1.0, 0.5, 0.3), 1.7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn alpha_one_skew_uses_log_term() {
        // −γ|t|(1 − iβ(2/π) sign(t) ln|t|) with γ = 2, β = 0.5, t = e
        let t = std::f64::consts::E;
        let z = log_cf(&params(1.0, 0.5, 2.0, 0.0), t).unwrap();
        assert!((z.re + 2.0 * t).abs() < 1e-14);
        assert!((z.im - 2.0 * t * 0.5 * FRAC_2_PI).abs() < 1e-14);
    }

    #[test]
    fn cf_examples() {
        let v = cf(&params(2.0, 0.0, 0.5, 0.0), 1.0).unwrap();
        assert!((v.re - (-0.5f64).exp()).abs() < 1e-15 && v.im == 0.0);
        assert!((v.re - 0.606531).abs() < 1e-6);

        let p = params(1.0, 0.0, 1.0, 0.0);
        let minus = cf(&p, -2.0).unwrap();
        let plus = cf(&p, 2.0).unwrap();
        assert!((minus.re - (-2.0f64).exp()).abs() < 1e-15);
        assert_eq!(minus, plus.conj());

        assert_eq!(
            cf(&params(0.3, -1.0, 7.0, -4.0), 0.0).unwrap(),
            Complex64::new(1.0, 0.0)
        );
    }

    fn any_params() -> impl Strategy<Value = StableParams> {
        (0.05f64..=2.0, -1.0f64..=1.0, 0.01f64..10.0, -10.0f64..10.0)
            .prop_map(|(a, b, g, s)| params(a, b, g, s))
    }

    proptest! {
        #[test]
        fn cf_is_bounded_and_hermitian(p in any_params(), t in -50.0f64..50.0) {
            let v = cf(&p, t).unwrap();
            prop_assert!(v.norm() <= 1.0 + 1e-15);
            let w = cf(&p, -t).unwrap();
            prop_assert!((w - v.conj()).norm() <= 1e-12);
        }
    }
}
