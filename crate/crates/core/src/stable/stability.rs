//! Stability identities checked directly on characteristic functions.
//!
//! A law is stable when for every `a > 0` there are `b > 0` and `c` with
//! `φ(z)^a = φ(bz)·e^{icz}`, and strictly stable when `c = 0` works. For the stable
//! family `b = a^{1/α}`. Semi-stable laws satisfy the identity for a single `a ≠ 1`;
//! [`semistable_cf`] evaluates the standard example built on a geometric lattice of atoms.

use std::f64::consts::FRAC_2_PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::StableParams;
use crate::error::{invalid, Result};
use crate::numeric::{one_minus_cos, sin_minus_x};
use crate::ComplexValue;

/// Arguments at which the identities are compared.
pub const DEFAULT_Z_GRID: [f64; 12] = [
    -5.0, -2.0, -1.0, -0.5, -0.25, -0.1, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0,
];

/// Outcome of a CF-level scaling identity check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    /// Time scaling `a`.
    pub a: f64,
    /// Spatial scaling `b` paired with `a`.
    pub b_used: f64,
    /// Translation `c`; zero for strictly stable laws.
    pub c_used: f64,
    pub max_modulus_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// The translation `c` for which `φ(z)^a = φ(bz)·e^{icz}` with `b = a^{1/α}`.
fn stable_translation(p: &StableParams, a: f64, b: f64) -> f64 {
    let mut c = (a - b) * p.sigma();
    if p.alpha() == 1.0 && p.beta() != 0.0 {
        // ln|bz| = ln b + ln|z| leaves an extra drift at α = 1
        c -= FRAC_2_PI * p.gamma() * p.beta() * a * b.ln();
    }
    c
}

/// Checks `φ(z)^a = φ(bz)·e^{icz}` on [`DEFAULT_Z_GRID`].
pub fn check_stability(p: &StableParams, a: f64, tol: f64) -> Result<StabilityReport> {
    check_stability_on(p, a, &DEFAULT_Z_GRID, tol)
}

/// Checks `φ(z)^a = φ(bz)·e^{icz}` at each of `zs`, with `b = a^{1/α}` and the
/// translation implied by `p`. `φ(z)^a` is taken as `exp(a·log φ(z))`.
pub fn check_stability_on(
    p: &StableParams,
    a: f64,
    zs: &[f64],
    tol: f64,
) -> Result<StabilityReport> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(invalid(format!(
            "scaling factor a must be positive, got {a}"
        )));
    }
    if !(tol > 0.0) {
        return Err(invalid(format!("tolerance must be positive, got {tol}")));
    }
    if let Some(z) = zs.iter().find(|z| !z.is_finite()) {
        return Err(invalid(format!("grid point {z} is not finite")));
    }
    let b = a.powf(1.0 / p.alpha());
    let c = stable_translation(p, a, b);
    let max_modulus_error = zs
        .iter()
        .map(|&z| {
            let lhs = (a * p.log_cf_at(z)).exp();
            let rhs = (p.log_cf_at(b * z) + Complex64::new(0.0, c * z)).exp();
            (lhs - rhs).norm()
        })
        .fold(0.0, f64::max);
    Ok(StabilityReport {
        a,
        b_used: b,
        c_used: c,
        max_modulus_error,
        tolerance: tol,
        passed: max_modulus_error <= tol,
    })
}

/// Lévy measure `Σ_{n=−N}^{N} b^{−nα} δ_{bⁿx₀}` on a geometric lattice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SemiStableSpec {
    pub b: f64,
    pub alpha: f64,
    pub x0: f64,
    /// The sum runs over `n ∈ [−N, N]`.
    pub truncation: u32,
}

impl SemiStableSpec {
    pub fn new(b: f64, alpha: f64, x0: f64, truncation: u32) -> Result<Self> {
        let spec = Self {
            b,
            alpha,
            x0,
            truncation,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Smallest truncation whose remainder bound at `|z| ≤ z_max` is below `tol`,
    /// capped at 2000 terms per side.
    pub fn with_auto_truncation(b: f64, alpha: f64, x0: f64, z_max: f64, tol: f64) -> Result<Self> {
        let mut spec = Self::new(b, alpha, x0, 1)?;
        while spec.truncation < 2000 && spec.remainder_bound(z_max) > tol {
            spec.truncation += 1;
        }
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.b > 1.0 && self.b.is_finite()) {
            return Err(invalid(format!(
                "lattice base b must exceed 1, got {}",
                self.b
            )));
        }
        if !(self.alpha > 0.0 && self.alpha < 2.0) {
            return Err(invalid(format!(
                "alpha must lie in (0, 2), got {}",
                self.alpha
            )));
        }
        if !(self.x0 != 0.0 && self.x0.is_finite()) {
            return Err(invalid(format!(
                "atom x0 must be nonzero and finite, got {}",
                self.x0
            )));
        }
        if self.truncation == 0 {
            return Err(invalid("truncation must be at least 1"));
        }
        Ok(())
    }

    /// The `a = b^α` paired with `b`.
    pub fn a(&self) -> f64 {
        self.b.powf(self.alpha)
    }

    fn atom(&self, n: i64) -> f64 {
        self.b.powi(n as i32) * self.x0
    }

    /// Lattice index `m` with `|b^{m−1}x₀| < 1 ≤ |b^m x₀|`: the one atom whose
    /// compensation switches off under `x → bx`.
    fn boundary_index(&self) -> i64 {
        let mut m = (-self.x0.abs().ln() / self.b.ln()).ceil() as i64;
        while self.atom(m).abs() < 1.0 {
            m += 1;
        }
        while self.atom(m - 1).abs() >= 1.0 {
            m -= 1;
        }
        m
    }

    /// Translation `c` in `μ̂(z)^a = μ̂(bz)·e^{icz}`, from the compensator shift.
    pub fn translation(&self) -> f64 {
        let m = self.boundary_index() as f64;
        self.a() * self.b.powf(-m * self.alpha) * self.b.powf(m) * self.x0
    }

    /// Bound on the modulus of the omitted exponent terms at `|z| ≤ z_abs`.
    ///
    /// For `n > N` the atoms sit outside the unit ball and each term is at most
    /// `2·b^{−nα}`; for `n < −N` they sit inside and each is at most
    /// `b^{|n|α}(z bⁿ x₀)²/2`. Both tails are geometric. Returns infinity when `N`
    /// has not reached those regimes.
    pub fn remainder_bound(&self, z_abs: f64) -> f64 {
        let n = self.truncation as i64;
        if self.atom(n + 1).abs() < 1.0 || self.atom(-n - 1).abs() >= 1.0 {
            return f64::INFINITY;
        }
        let ba = self.b.powf(-self.alpha);
        let upper = 2.0 * ba.powi((n + 1) as i32) / (1.0 - ba);
        let r = self.b.powf(self.alpha - 2.0);
        let lower = 0.5 * (z_abs * self.x0).powi(2) * r.powi((n + 1) as i32) / (1.0 - r);
        upper + lower
    }
}

/// A truncated semi-stable characteristic-function value with its truncation bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SemiStableCf {
    pub value: ComplexValue,
    pub remainder_bound: f64,
    /// Set when `remainder_bound` exceeds the requested tolerance.
    pub truncation_warning: bool,
}

/// Exponent `Σ b^{−nα}(e^{izbⁿx₀} − 1 − izbⁿx₀·1{|bⁿx₀| < 1})`, summed smallest terms first.
fn semistable_exponent(s: &SemiStableSpec, z: f64) -> Complex64 {
    let n = s.truncation as i64;
    let mut terms: Vec<Complex64> = (-n..=n)
        .map(|k| {
            let atom = s.atom(k);
            let weight = s.b.powf(-(k as f64) * s.alpha);
            let theta = z * atom;
            let im = if atom.abs() < 1.0 {
                sin_minus_x(theta)
            } else {
                theta.sin()
            };
            weight * Complex64::new(-one_minus_cos(theta), im)
        })
        .collect();
    terms.sort_by(|p, q| p.norm().total_cmp(&q.norm()));
    terms.into_iter().sum()
}

/// Truncated semi-stable characteristic function at `z`.
///
/// `tol` is the threshold for the truncation warning.
pub fn semistable_cf(s: &SemiStableSpec, z: f64, tol: f64) -> Result<SemiStableCf> {
    s.validate()?;
    if !z.is_finite() {
        return Err(invalid(format!("z must be finite, got {z}")));
    }
    if z == 0.0 {
        return Ok(SemiStableCf {
            value: Complex64::new(1.0, 0.0),
            remainder_bound: 0.0,
            truncation_warning: false,
        });
    }
    let remainder_bound = s.remainder_bound(z.abs());
    Ok(SemiStableCf {
        value: semistable_exponent(s, z).exp(),
        remainder_bound,
        truncation_warning: !(remainder_bound <= tol),
    })
}

/// Checks `μ̂(z)^{b^α} = μ̂(bz)·e^{icz}` at each of `zs`.
///
/// The compensator `1{|x| < 1}` is not invariant under `x → bx`, so the identity
/// holds with the translation [`SemiStableSpec::translation`] rather than `c = 0`.
pub fn check_semistability(s: &SemiStableSpec, zs: &[f64], tol: f64) -> Result<StabilityReport> {
    s.validate()?;
    if !(tol > 0.0) {
        return Err(invalid(format!("tolerance must be positive, got {tol}")));
    }
    let a = s.a();
    let c = s.translation();
    let mut max_modulus_error: f64 = 0.0;
    for &z in zs {
        if !z.is_finite() {
            return Err(invalid(format!("grid point {z} is not finite")));
        }
        let lhs = (a * semistable_exponent(s, z)).exp();
        let rhs = (semistable_exponent(s, s.b * z) + Complex64::new(0.0, c * z)).exp();
        max_modulus_error = max_modulus_error.max((lhs - rhs).norm());
    }
    Ok(StabilityReport {
        a,
        b_used: s.b,
        c_used: c,
        max_modulus_error,
        tolerance: tol,
        passed: max_modulus_error <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(a: f64, b: f64, g: f64, s: f64) -> StableParams {
        StableParams::new(a, b, g, s).unwrap()
    }

    #[test]
    fn gaussian_is_stable_with_square_root_scaling() {
        let r = check_stability(&params(2.0, 0.0, 0.5, 0.0), 4.0, 1e-12).unwrap();
        assert_eq!(r.b_used, 2.0);
        assert_eq!(r.c_used, 0.0);
        assert!(r.max_modulus_error < 1e-12 && r.passed);
    }

    #[test]
    fn gaussian_with_mean_needs_translation() {
        // c = (a − √a)·σ
        let r = check_stability(&params(2.0, 0.0, 0.5, 1.5), 4.0, 1e-12).unwrap();
        assert!((r.c_used - (4.0 - 2.0) * 1.5).abs() < 1e-15);
        assert!(r.passed);
    }

    #[test]
    fn cauchy_is_strictly_stable_with_b_equal_a() {
        let r = check_stability(&params(1.0, 0.0, 1.0, 0.0), 3.0, 1e-12).unwrap();
        assert_eq!(r.b_used, 3.0);
        assert_eq!(r.c_used, 0.0);
        assert!(r.passed);
    }

    #[test]
    fn identity_scaling_is_exact() {
        let r = check_stability(&params(0.7, 0.4, 2.0, -1.0), 1.0, 1e-15).unwrap();
        assert_eq!(r.b_used, 1.0);
        assert_eq!(r.c_used, 0.0);
        assert_eq!(r.max_modulus_error, 0.0);
    }

    #[test]
    fn skewed_alpha_one_needs_log_drift() {
        let p = params(1.0, 0.8, 1.3, 0.0);
        let r = check_stability(&p, 2.5, 1e-12).unwrap();
        assert!(r.c_used != 0.0);
        assert!(r.passed, "error {}", r.max_modulus_error);
    }

    #[test]
    fn rejects_bad_scaling() {
        let p = params(1.5, 0.0, 1.0, 0.0);
        assert!(check_stability(&p, 0.0, 1e-12).is_err());
        assert!(check_stability(&p, -2.0, 1e-12).is_err());
    }

    #[test]
    fn semistable_at_zero_is_one() {
        let s = SemiStableSpec::new(3.0, 0.7, -0.4, 5).unwrap();
        let v = semistable_cf(&s, 0.0, 1e-10).unwrap();
        assert_eq!(v.value, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn semistable_identity_b2_alpha1() {
        let s = SemiStableSpec::new(2.0, 1.0, 1.0, 60).unwrap();
        assert_eq!(s.translation(), 2.0);
        let r = check_semistability(&s, &[0.1, 0.5, 1.0], 1e-8).unwrap();
        assert!(r.passed, "error {}", r.max_modulus_error);
        assert_eq!(r.a, 2.0);
    }

    #[test]
    fn semistable_identity_fails_without_translation() {
        let s = SemiStableSpec::new(2.0, 1.0, 1.0, 60).unwrap();
        let z = 0.5;
        let lhs = semistable_cf(&s, z, 1e-10).unwrap().value.powf(2.0);
        let rhs = semistable_cf(&s, 2.0 * z, 1e-10).unwrap().value;
        assert!((lhs - rhs).norm() > 1e-2);
    }

    #[test]
    fn semistable_modulus_bound() {
        let s = SemiStableSpec::new(2.0, 0.5, 1.0, 80).unwrap();
        let v = semistable_cf(&s, 1.0, 1e-10).unwrap();
        assert!(v.value.norm() <= 1.0);
        assert!(!v.truncation_warning, "bound {}", v.remainder_bound);
    }

    #[test]
    fn short_truncation_warns() {
        let s = SemiStableSpec::new(2.0, 0.5, 1.0, 3).unwrap();
        let v = semistable_cf(&s, 1.0, 1e-10).unwrap();
        assert!(v.truncation_warning);
    }

    #[test]
    fn auto_truncation_meets_bound() {
        let s = SemiStableSpec::with_auto_truncation(2.0, 1.5, 1.0, 2.0, 1e-10).unwrap();
        assert!(s.remainder_bound(2.0) <= 1e-10);
        let shorter = SemiStableSpec {
            truncation: s.truncation - 1,
            ..s
        };
        assert!(shorter.remainder_bound(2.0) > 1e-10);
    }

    #[test]
    fn translation_for_off_lattice_atom() {
        // x0 = 0.3, b = 2: atoms 0.6 (m = 1) and 1.2 (m = 2) straddle the unit ball
        let s = SemiStableSpec::new(2.0, 1.5, 0.3, 80).unwrap();
        assert_eq!(s.boundary_index(), 2);
        let r = check_semistability(&s, &[0.1, 0.5, 1.0], 1e-8).unwrap();
        assert!(r.passed, "error {}", r.max_modulus_error);
    }

    #[test]
    fn spec_validation() {
        assert!(SemiStableSpec::new(1.0, 1.0, 1.0, 5).is_err());
        assert!(SemiStableSpec::new(2.0, 2.0, 1.0, 5).is_err());
        assert!(SemiStableSpec::new(2.0, 1.0, 0.0, 5).is_err());
        assert!(SemiStableSpec::new(2.0, 1.0, 1.0, 0).is_err());
    }

    proptest! {
        #[test]
        fn strictly_stable_symmetric_self_similarity(
            alpha in 0.2f64..=2.0,
            gamma in 0.1f64..5.0,
            a in 0.1f64..10.0,
            t in -3.0f64..3.0,
        ) {
            let p = params(alpha, 0.0, gamma, 0.0);
            let lhs = (a * p.log_cf_at(t)).exp();
            let rhs = p.log_cf_at(a.powf(1.0 / alpha) * t).exp();
            prop_assert!((lhs - rhs).norm() <= 1e-12);
        }
    }
}
