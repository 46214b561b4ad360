//! Small numerical helpers shared by the estimators: exactly rounded summation,
//! ordinary least squares with a Student-t confidence interval, and the standard
//! normal distribution function and its inverse.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};
use statrs::function::erf::erfc;

use crate::error::{Error, Result};

/// Correctly rounded sum of `values` (Shewchuk's algorithm, as in Python's `math.fsum`).
///
/// The result does not depend on the order of the inputs.
pub fn exact_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut partials: Vec<f64> = Vec::new();
    for mut x in values {
        let mut i = 0;
        for j in 0..partials.len() {
            let mut y = partials[j];
            if x.abs() < y.abs() {
                std::mem::swap(&mut x, &mut y);
            }
            let hi = x + y;
            let lo = y - (hi - x);
            if lo != 0.0 {
                partials[i] = lo;
                i += 1;
            }
            x = hi;
        }
        partials.truncate(i);
        partials.push(x);
    }

    let Some(mut hi) = partials.pop() else {
        return 0.0;
    };
    let mut lo = 0.0;
    while let Some(y) = partials.pop() {
        let x = hi;
        hi = x + y;
        lo = y - (hi - x);
        if lo != 0.0 {
            break;
        }
    }
    // round-half-even correction when the remaining partials push past a tie
    if let Some(&last) = partials.last() {
        if (lo < 0.0 && last < 0.0) || (lo > 0.0 && last > 0.0) {
            let y = lo * 2.0;
            let x = hi + y;
            if y == x - hi {
                hi = x;
            }
        }
    }
    hi
}

/// Result of a simple linear regression `y = intercept + slope * x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_std_err: f64,
    pub ci95_low: f64,
    pub ci95_high: f64,
    pub r_squared: f64,
    pub n: usize,
}

/// Ordinary least squares with a two-sided 95% interval on the slope from the
/// Student-t quantile at `n - 2` degrees of freedom.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<LinearFit> {
    if x.len() != y.len() {
        return Err(Error::Fit(format!(
            "abscissa and ordinate lengths differ ({} vs {})",
            x.len(),
            y.len()
        )));
    }
    let n = x.len();
    if n < 3 {
        return Err(Error::Fit(format!("need at least 3 points, got {n}")));
    }
    let nf = n as f64;
    let mean_x = x.iter().sum::<f64>() / nf;
    let mean_y = y.iter().sum::<f64>() / nf;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (&xi, &yi) in x.iter().zip(y) {
        let dx = xi - mean_x;
        let dy = yi - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx <= 0.0 || !sxx.is_finite() {
        return Err(Error::Fit("abscissa values are all equal".into()));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let sse: f64 = x
        .iter()
        .zip(y)
        .map(|(&xi, &yi)| {
            let r = yi - (intercept + slope * xi);
            r * r
        })
        .sum();
    let dof = nf - 2.0;
    let slope_std_err = (sse / dof / sxx).sqrt();
    let t = StudentsT::new(0.0, 1.0, dof)
        .map_err(|e| Error::Fit(e.to_string()))?
        .inverse_cdf(0.975);
    let half = t * slope_std_err;
    let r_squared = if syy > 0.0 {
        (1.0 - sse / syy).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Ok(LinearFit {
        slope,
        intercept,
        slope_std_err,
        ci95_low: slope - half,
        ci95_high: slope + half,
        r_squared,
        n,
    })
}

/// Standard normal distribution function, accurate in the far tails.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// Inverse of the standard normal distribution function on `(0, 1)`.
///
/// Acklam's rational approximation followed by one Halley step against
/// [`normal_cdf`]; no rejection, so every uniform maps to exactly one variate.
pub fn normal_quantile(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969_683_028_665_376e1,
        2.209_460_984_245_205e2,
        -2.759_285_104_469_687e2,
        1.383_577_518_672_69e2,
        -3.066_479_806_614_716e1,
        2.506_628_277_459_239,
    ];
    const B: [f64; 5] = [
        -5.447_609_879_822_406e1,
        1.615_858_368_580_409e2,
        -1.556_989_798_598_866e2,
        6.680_131_188_771_972e1,
        -1.328_068_155_288_572e1,
    ];
    const C: [f64; 6] = [
        -7.784_894_002_430_293e-3,
        -3.223_964_580_411_365e-1,
        -2.400_758_277_161_838,
        -2.549_732_539_343_734,
        4.374_664_141_464_968,
        2.938_163_982_698_783,
    ];
    const D: [f64; 4] = [
        7.784_695_709_041_462e-3,
        3.224_671_290_700_398e-1,
        2.445_134_137_142_996,
        3.754_408_661_907_416,
    ];
    const P_LOW: f64 = 0.02425;

    if p <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if p >= 1.0 {
        return f64::INFINITY;
    }
    let x = if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };

    let e = normal_cdf(x) - p;
    let u = e * (2.0 * std::f64::consts::PI).sqrt() * (0.5 * x * x).exp();
    x - u / (1.0 + 0.5 * x * u)
}

/// `sin(x) - x` without cancellation for small `|x|`.
pub(crate) fn sin_minus_x(x: f64) -> f64 {
    if x.abs() < 0.25 {
        let x2 = x * x;
        // Taylor series; the truncation error is below 1e-18 relative for |x| < 0.25
        let mut term = -x * x2 / 6.0;
        let mut sum = term;
        for k in 1..8 {
            let k = k as f64;
            term *= -x2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
            sum += term;
        }
        sum
    } else {
        x.sin() - x
    }
}

/// `1 - cos(x)` without cancellation.
pub(crate) fn one_minus_cos(x: f64) -> f64 {
    let s = (0.5 * x).sin();
    2.0 * s * s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_sum_is_correctly_rounded() {
        assert_eq!(exact_sum([1e100, 1.0, -1e100, 1e-100]), 1.0);
        assert_eq!(exact_sum([0.1; 10]), 1.0);
        assert_eq!(exact_sum(Vec::<f64>::new()), 0.0);
        let v: Vec<f64> = (1..1000).map(|k| 1.0 / k as f64).collect();
        let mut r = v.clone();
        r.reverse();
        assert_eq!(exact_sum(v.iter().copied()), exact_sum(r));
    }

    #[test]
    fn fit_of_exact_line() {
        let x = [0.0, 1.0, 2.0, 3.0, 4.0];
        let y: Vec<f64> = x.iter().map(|v| 1.5 - 2.0 * v).collect();
        let fit = linear_fit(&x, &y).unwrap();
        assert!((fit.slope + 2.0).abs() < 1e-14);
        assert!((fit.intercept - 1.5).abs() < 1e-14);
        assert!(fit.ci95_high - fit.ci95_low < 1e-12);
        assert_eq!(fit.r_squared, 1.0);
    }

    #[test]
    fn fit_interval_matches_textbook_example() {
        // y = x + e with residuals (+1, -1, -1, +1): sse = 4, sxx = 5, se = sqrt(4/2/5)
        let x = [0.0, 1.0, 2.0, 3.0];
        let y = [1.0, 0.0, 1.0, 4.0];
        let fit = linear_fit(&x, &y).unwrap();
        assert!((fit.slope - 1.0).abs() < 1e-14);
        let se = (4.0f64 / 2.0 / 5.0).sqrt();
        assert!((fit.slope_std_err - se).abs() < 1e-14);
        // t_{0.975, 2} = 4.302652729911275
        assert!((fit.ci95_high - (1.0 + 4.302652729911275 * se)).abs() < 1e-9);
    }

    #[test]
    fn fit_rejects_degenerate_abscissa() {
        assert!(linear_fit(&[1.0, 1.0, 1.0], &[0.0, 1.0, 2.0]).is_err());
        assert!(linear_fit(&[1.0, 2.0], &[0.0, 1.0]).is_err());
    }

    #[test]
    fn normal_cdf_tail_values() {
        // reference values from the complementary error function at 30 digits
        let cases = [
            (-10.0, 7.619_853_024_160_527e-24),
            (-5.0, 2.866_515_718_791_939e-7),
            (-1.0, 0.158_655_253_931_457_05),
            (0.0, 0.5),
        ];
        for (x, want) in cases {
            let got = normal_cdf(x);
            assert!(((got - want) / want).abs() < 1e-9, "x={x}: {got} vs {want}");
        }
    }

    #[test]
    fn quantile_inverts_cdf() {
        for &p in &[1e-300, 1e-12, 0.001, 0.02, 0.3, 0.5, 0.9, 0.99999] {
            let x = normal_quantile(p);
            let back = normal_cdf(x);
            assert!(((back - p) / p).abs() < 1e-12, "p={p}: {back}");
        }
    }

    #[test]
    fn small_argument_helpers() {
        for &x in &[1e-8f64, 1e-3, 0.1, 0.24, 0.3, 2.0] {
            let direct = x.sin() - x;
            assert!((sin_minus_x(x) - direct).abs() <= 1e-15 * x.abs().max(1e-3));
            assert!((one_minus_cos(x) - (1.0 - x.cos())).abs() < 1e-15);
        }
        let x = 1e-6f64;
        let series = -x.powi(3) / 6.0 + x.powi(5) / 120.0;
        assert!(((sin_minus_x(x) - series) / series).abs() < 1e-15);
    }
}
