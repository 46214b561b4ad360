//! Hurst exponent from the scaling of the mean moving-window range.
//!
//! For a self-similar series the range `R` (max − min) inside a window grows as
//! `⟨R(Δt)⟩ = c·Δt^H`. A window of `w` consecutive samples is slid one sample at a
//! time over the series, the ranges of all `n − w + 1` positions are averaged, and
//! `H` is the least-squares slope of `log⟨R⟩` against `log Δt` over a set of window
//! lengths. `Δt` is the time the window spans, `w − 1` sampling intervals.
//!
//! The range is taken on the raw values: no detrending and no rescaling by the
//! standard deviation. Overlapping windows make the regression residuals correlated,
//! so the reported 95% interval is an approximation.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::numeric::{exact_sum, linear_fit};
use crate::series::TimeSeries;

/// Fewest window lengths a plan may hold.
pub const MIN_WINDOWS: usize = 4;

/// Window lengths, in samples, at which the mean range is measured.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowPlan {
    windows: Vec<usize>,
}

impl WindowPlan {
    /// Validates that windows are strictly increasing, at least 2 samples long, and
    /// that there are at least [`MIN_WINDOWS`] of them.
    pub fn new(windows: Vec<usize>) -> Result<Self> {
        if windows.len() < MIN_WINDOWS {
            return Err(invalid(format!(
                "a window plan needs at least {MIN_WINDOWS} window lengths, got {}",
                windows.len()
            )));
        }
        if windows[0] < 2 {
            return Err(invalid("window lengths must be at least 2 samples"));
        }
        if windows.windows(2).any(|w| w[1] <= w[0]) {
            return Err(invalid("window lengths must be strictly increasing"));
        }
        Ok(Self { windows })
    }

    /// About `count` window lengths spaced evenly in `log Δt` between `lo` and `hi`
    /// samples, rounded and deduplicated.
    pub fn log_spaced(lo: usize, hi: usize, count: usize) -> Result<Self> {
        if lo < 2 || hi <= lo || count < 2 {
            return Err(invalid(format!(
                "cannot space {count} windows between {lo} and {hi}"
            )));
        }
        let (a, b) = ((lo as f64).ln(), (hi as f64).ln());
        let mut windows: Vec<usize> = (0..count)
            .map(|k| (a + (b - a) * k as f64 / (count - 1) as f64).exp().round() as usize)
            .collect();
        windows.dedup();
        Self::new(windows)
    }

    /// Default plan for a series of `n` samples: 20 log-spaced lengths between
    /// `clamp(3n/512, 8, 96)` and `n/12`, falling back to `2..=n/4` for short series.
    ///
    /// Short windows are avoided because the range of a sampled path underestimates
    /// the range of the continuous one, and the shortfall is largest for rough paths.
    /// Long windows are avoided because few independent windows fit in the series.
    pub fn default_for(n: usize) -> Result<Self> {
        let lo = (3 * n / 512).clamp(8, 96);
        let hi = n / 12;
        if hi > lo {
            if let Ok(plan) = Self::log_spaced(lo, hi, 20) {
                return Ok(plan);
            }
        }
        Self::log_spaced(2, n / 4, 20).map_err(|_| {
            Error::Degenerate(format!(
                "series of {n} samples is too short for a window plan"
            ))
        })
    }

    pub fn windows(&self) -> &[usize] {
        &self.windows
    }

    /// Checks every window fits in a series of `n` samples (at most `n/4`).
    pub fn check_fits(&self, n: usize) -> Result<()> {
        let largest = *self.windows.last().expect("plan is never empty");
        if largest > n / 4 {
            return Err(invalid(format!(
                "window of {largest} samples exceeds a quarter of the series length {n}"
            )));
        }
        Ok(())
    }
}

/// One point of the scaling curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingPoint {
    /// Window length in samples.
    pub window: usize,
    /// Time spanned by the window, in sampling intervals; the regression abscissa.
    pub span: f64,
    /// Mean range over all window positions, in data units.
    pub mean_range: f64,
}

impl ScalingPoint {
    /// A point with `span` set directly, for fitting externally computed curves.
    pub fn from_span(span: f64, mean_range: f64) -> Self {
        Self {
            window: 0,
            span,
            mean_range,
        }
    }
}

/// Scaling points plus the window lengths dropped because their mean range was zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingCurve {
    pub points: Vec<ScalingPoint>,
    pub excluded_windows: Vec<usize>,
}

/// Fitted range-scaling law `⟨R(Δt)⟩ = c·Δt^H`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HurstEstimate {
    pub h: f64,
    pub c: f64,
    pub ci95_low: f64,
    pub ci95_high: f64,
    pub slope_std_err: f64,
    pub r_squared: f64,
    pub points: Vec<ScalingPoint>,
}

impl HurstEstimate {
    /// `(log Δt, log⟨R⟩)` pairs behind the fit.
    pub fn log_points(&self) -> Vec<(f64, f64)> {
        self.points
            .iter()
            .map(|p| (p.span.ln(), p.mean_range.ln()))
            .collect()
    }
}

/// Ranges of every length-`window` run of `values`, using monotone deques.
fn sliding_ranges(values: &[f64], window: usize) -> Vec<f64> {
    let mut maxima: VecDeque<usize> = VecDeque::with_capacity(window);
    let mut minima: VecDeque<usize> = VecDeque::with_capacity(window);
    let mut ranges = Vec::with_capacity(values.len() + 1 - window);
    for (i, &v) in values.iter().enumerate() {
        while maxima.back().is_some_and(|&j| values[j] <= v) {
            maxima.pop_back();
        }
        maxima.push_back(i);
        while minima.back().is_some_and(|&j| values[j] >= v) {
            minima.pop_back();
        }
        minima.push_back(i);
        if i + 1 >= window {
            let start = i + 1 - window;
            while maxima.front().is_some_and(|&j| j < start) {
                maxima.pop_front();
            }
            while minima.front().is_some_and(|&j| j < start) {
                minima.pop_front();
            }
            ranges.push(values[maxima[0]] - values[minima[0]]);
        }
    }
    ranges
}

/// Mean of `max − min` over all `n − window + 1` positions of a sliding window.
///
/// The mean is correctly rounded, so it does not depend on the order in which the
/// positions are visited.
pub fn mean_range(series: &TimeSeries, window: usize) -> Result<f64> {
    let n = series.len();
    if window < 2 || window > n {
        return Err(invalid(format!(
            "window must lie in [2, {n}], got {window}"
        )));
    }
    let ranges = sliding_ranges(series.values(), window);
    let count = ranges.len() as f64;
    Ok(exact_sum(ranges) / count)
}

/// Mean range at every window length in `plan`.
pub fn scaling_curve(series: &TimeSeries, plan: &WindowPlan) -> Result<ScalingCurve> {
    plan.check_fits(series.len())?;
    let mut points = Vec::with_capacity(plan.windows().len());
    let mut excluded_windows = Vec::new();
    for &window in plan.windows() {
        let r = mean_range(series, window)?;
        if r > 0.0 {
            points.push(ScalingPoint {
                window,
                span: (window - 1) as f64,
                mean_range: r,
            });
        } else {
            excluded_windows.push(window);
        }
    }
    if points.len() < MIN_WINDOWS {
        return Err(Error::Degenerate(format!(
            "zero range: only {} of {} window lengths have a positive mean range",
            points.len(),
            plan.windows().len()
        )));
    }
    Ok(ScalingCurve {
        points,
        excluded_windows,
    })
}

/// Least-squares fit of `log⟨R⟩` on `log Δt`.
pub fn fit_hurst(points: &[ScalingPoint]) -> Result<HurstEstimate> {
    if points.len() < MIN_WINDOWS {
        return Err(Error::Fit(format!(
            "need at least {MIN_WINDOWS} scaling points, got {}",
            points.len()
        )));
    }
    if let Some(p) = points
        .iter()
        .find(|p| !(p.mean_range > 0.0 && p.span > 0.0 && p.mean_range.is_finite()))
    {
        return Err(Error::Fit(format!(
            "scaling point at span {} has non-positive mean range {}",
            p.span, p.mean_range
        )));
    }
    let x: Vec<f64> = points.iter().map(|p| p.span.ln()).collect();
    let y: Vec<f64> = points.iter().map(|p| p.mean_range.ln()).collect();
    let fit = linear_fit(&x, &y)?;
    Ok(HurstEstimate {
        h: fit.slope,
        c: fit.intercept.exp(),
        ci95_low: fit.ci95_low.min(fit.slope),
        ci95_high: fit.ci95_high.max(fit.slope),
        slope_std_err: fit.slope_std_err,
        r_squared: fit.r_squared,
        points: points.to_vec(),
    })
}

/// Hurst exponent of `series` with the default window plan.
pub fn estimate_hurst(series: &TimeSeries) -> Result<HurstEstimate> {
    let plan = WindowPlan::default_for(series.len())?;
    estimate_hurst_with(series, &plan)
}

pub fn estimate_hurst_with(series: &TimeSeries, plan: &WindowPlan) -> Result<HurstEstimate> {
    let curve = scaling_curve(series, plan)?;
    fit_hurst(&curve.points)
}

/// Tail exponent implied by a Hurst exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaFromHurst {
    /// `1/H` before clamping.
    pub raw: f64,
    /// `1/H` clamped to the admissible range `(0, 2]`.
    pub alpha: f64,
    /// Set when `1/H > 2`, i.e. `H < 1/2`.
    pub clamped: bool,
}

/// `α = 1/H`, clamped to `(0, 2]`.
pub fn alpha_from_hurst(h: f64) -> Result<AlphaFromHurst> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(invalid(format!("Hurst exponent must be positive, got {h}")));
    }
    let raw = 1.0 / h;
    Ok(AlphaFromHurst {
        raw,
        alpha: raw.min(2.0),
        clamped: raw > 2.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn series(v: &[f64]) -> TimeSeries {
        TimeSeries::new(v.to_vec()).unwrap()
    }

    #[test]
    fn mean_range_hand_examples() {
        assert_eq!(
            mean_range(&series(&[0.0, 1.0, 0.0, 2.0]), 2).unwrap(),
            4.0 / 3.0
        );
        assert_eq!(mean_range(&series(&[0.0, 1.0, 2.0, 3.0]), 3).unwrap(), 2.0);
        assert_eq!(mean_range(&series(&[5.0; 10]), 4).unwrap(), 0.0);
    }

    #[test]
    fn mean_range_window_bounds() {
        let s = series(&[0.0, 1.0, 2.0]);
        assert!(mean_range(&s, 1).is_err());
        assert!(mean_range(&s, 4).is_err());
        assert_eq!(mean_range(&s, 3).unwrap(), 2.0);
    }

    #[test]
    fn sliding_ranges_match_brute_force() {
        let v = [3.0, -1.0, 4.0, 1.0, -5.0, 9.0, 2.0, 6.0, -5.0, 3.0, 5.0];
        for w in 2..=v.len() {
            let brute: Vec<f64> = v
                .windows(w)
                .map(|s| {
                    let hi = s.iter().cloned().fold(f64::MIN, f64::max);
                    let lo = s.iter().cloned().fold(f64::MAX, f64::min);
                    hi - lo
                })
                .collect();
            assert_eq!(sliding_ranges(&v, w), brute, "window {w}");
        }
    }

    #[test]
    fn ramp_ranges_are_proportional_to_span() {
        let n = 64;
        let s = TimeSeries::new((0..n).map(|k| k as f64 / n as f64).collect()).unwrap();
        let plan = WindowPlan::new(vec![2, 4, 8, 16]).unwrap();
        let curve = scaling_curve(&s, &plan).unwrap();
        for p in &curve.points {
            assert!((p.mean_range - p.span / n as f64).abs() < 1e-15);
        }
        let est = fit_hurst(&curve.points).unwrap();
        assert!((est.h - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_series_is_degenerate() {
        let s = series(&[1.0; 64]);
        let plan = WindowPlan::new(vec![2, 4, 8, 16]).unwrap();
        let err = scaling_curve(&s, &plan).unwrap_err();
        assert!(matches!(err, Error::Degenerate(_)));
        assert!(err.to_string().contains("zero range"));
    }

    #[test]
    fn zero_range_windows_are_excluded() {
        // flat except for one step at the end: short windows mostly see zero range
        let mut v = vec![0.0; 40];
        v.extend([1.0; 24]);
        let s = series(&v);
        let plan = WindowPlan::new(vec![2, 3, 4, 8, 16]).unwrap();
        let curve = scaling_curve(&s, &plan).unwrap();
        assert!(curve.excluded_windows.is_empty());
        assert_eq!(curve.points.len(), 5);
    }

    #[test]
    fn exact_power_law_fit() {
        let points: Vec<ScalingPoint> = [2.0, 4.0, 8.0, 16.0, 32.0]
            .iter()
            .map(|&dt: &f64| ScalingPoint::from_span(dt, 2.0 * dt.powf(0.5)))
            .collect();
        let est = fit_hurst(&points).unwrap();
        assert!((est.h - 0.5).abs() < 1e-14);
        assert!((est.c - 2.0).abs() < 1e-13);
        assert!(est.ci95_high - est.ci95_low < 1e-12);
        assert!((est.r_squared - 1.0).abs() < 1e-14);
    }

    #[test]
    fn fit_rejects_bad_points() {
        let mut points: Vec<ScalingPoint> = (1..6)
            .map(|k| ScalingPoint::from_span(k as f64, k as f64))
            .collect();
        assert!(fit_hurst(&points[..3]).is_err());
        points[2].mean_range = 0.0;
        assert!(fit_hurst(&points).is_err());
        let same: Vec<ScalingPoint> = (0..5)
            .map(|k| ScalingPoint::from_span(3.0, k as f64 + 1.0))
            .collect();
        assert!(matches!(fit_hurst(&same), Err(Error::Fit(_))));
    }

    #[test]
    fn plan_validation_and_defaults() {
        assert!(WindowPlan::new(vec![2, 4, 8]).is_err());
        assert!(WindowPlan::new(vec![1, 4, 8, 16]).is_err());
        assert!(WindowPlan::new(vec![2, 8, 4, 16]).is_err());
        assert!(WindowPlan::new(vec![2, 4, 4, 16]).is_err());

        let plan = WindowPlan::default_for(1 << 14).unwrap();
        assert_eq!(plan.windows()[0], 96);
        assert_eq!(*plan.windows().last().unwrap(), 1365);
        assert_eq!(plan.windows().len(), 20);
        plan.check_fits(1 << 14).unwrap();

        let short = WindowPlan::default_for(64).unwrap();
        assert_eq!(short.windows()[0], 2);
        assert_eq!(*short.windows().last().unwrap(), 16);
        short.check_fits(64).unwrap();

        assert!(WindowPlan::default_for(12).is_err());
        assert!(WindowPlan::new(vec![2, 4, 8, 32])
            .unwrap()
            .check_fits(100)
            .is_err());
    }

    #[test]
    fn alpha_mapping() {
        let a = alpha_from_hurst(0.5).unwrap();
        assert_eq!((a.alpha, a.clamped), (2.0, false));
        let a = alpha_from_hurst(1.0).unwrap();
        assert_eq!((a.alpha, a.clamped), (1.0, false));
        let a = alpha_from_hurst(0.4).unwrap();
        assert_eq!((a.raw, a.alpha, a.clamped), (2.5, 2.0, true));
        assert!(alpha_from_hurst(0.0).is_err());
        assert!(alpha_from_hurst(-0.3).is_err());
    }

    fn any_series() -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec(-100.0f64..100.0, 8..80)
    }

    proptest! {
        #[test]
        fn reversal_invariance(v in any_series(), w in 2usize..8) {
            let s = TimeSeries::new(v).unwrap();
            prop_assert_eq!(mean_range(&s, w).unwrap(), mean_range(&s.reversed(), w).unwrap());
        }

        #[test]
        fn mean_range_is_monotone_in_window(v in any_series()) {
            let s = TimeSeries::new(v).unwrap();
            let mut prev = 0.0;
            for w in 2..=s.len() {
                let r = mean_range(&s, w).unwrap();
                prop_assert!(r >= prev * (1.0 - 1e-12), "w={} {} < {}", w, r, prev);
                prev = r;
            }
        }

        #[test]
        fn alpha_round_trip(alpha in 1.0f64..=2.0) {
            let back = alpha_from_hurst(1.0 / alpha).unwrap().alpha;
            prop_assert!((back - alpha).abs() <= 1e-12);
        }
    }
}
