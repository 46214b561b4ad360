//! Box-counting dimension of a time-series trace, and the closed-form maps between
//! the Hurst exponent and fractal dimension.
//!
//! The trace is the graph `t ↦ y(t)` of the linearly interpolated series. Time is
//! rescaled to `[0, 1]` and values to `[0, 1]` by the series' own minimum and
//! maximum, so a box of side `δ` means the same thing on both axes and the estimate
//! does not depend on the units of the data.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::numeric::linear_fit;
use crate::series::TimeSeries;

/// Fewest box sizes a grid configuration may hold.
pub const MIN_DELTAS: usize = 4;

/// Box side lengths, each a power of one half, strictly decreasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxGridConfig {
    deltas: Vec<f64>,
}

impl BoxGridConfig {
    pub fn new(deltas: Vec<f64>) -> Result<Self> {
        if deltas.len() < MIN_DELTAS {
            return Err(invalid(format!(
                "a box grid needs at least {MIN_DELTAS} side lengths, got {}",
                deltas.len()
            )));
        }
        for &d in &deltas {
            check_delta(d)?;
        }
        if deltas.windows(2).any(|w| w[1] >= w[0]) {
            return Err(invalid("box side lengths must be strictly decreasing"));
        }
        Ok(Self { deltas })
    }

    /// `2^-2, 2^-3, …` down to the smallest power with `δ ≥ 2/n`.
    pub fn default_for(n: usize) -> Result<Self> {
        let floor = 2.0 / n as f64;
        let deltas: Vec<f64> = (2..53)
            .map(|k| 0.5f64.powi(k))
            .take_while(|&d| d >= floor)
            .collect();
        Self::new(deltas).map_err(|_| {
            Error::Degenerate(format!(
                "series of {n} samples is too short for box counting"
            ))
        })
    }

    pub fn deltas(&self) -> &[f64] {
        &self.deltas
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(invalid(format!("box side {delta} is outside (0, 1)")));
    }
    let inv = 1.0 / delta;
    if inv.fract() != 0.0 || !(inv as u64).is_power_of_two() {
        return Err(invalid(format!("box side {delta} is not a power of 1/2")));
    }
    Ok(())
}

/// Box count at one side length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxCount {
    pub delta: f64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxDimEstimate {
    /// Slope of `log N` against `log(1/δ)`.
    pub dimension: f64,
    pub counts: Vec<BoxCount>,
    pub slope_std_err: f64,
    pub r_squared: f64,
    /// Reference count of the unit-span trace; always 1.
    pub v_star: f64,
    /// Set for a constant series, whose dimension is reported as 1 without a fit.
    pub degenerate: bool,
}

/// Values rescaled to `[0, 1]`; a constant series maps to all zeros.
fn normalized(series: &TimeSeries) -> Vec<f64> {
    let (lo, hi) = series.bounds();
    let span = hi - lo;
    if span > 0.0 {
        series
            .values()
            .iter()
            .map(|&v| ((v - lo) / span).clamp(0.0, 1.0))
            .collect()
    } else {
        vec![0.0; series.len()]
    }
}

fn count_normalized(y: &[f64], delta: f64) -> u64 {
    let intervals = (y.len() - 1) as f64;
    let columns = (1.0 / delta).round() as usize;
    let top = columns - 1;
    // interpolated value at fractional sample position u
    let at = |u: f64| {
        let i = (u.floor() as usize).min(y.len() - 2);
        let f = u - i as f64;
        y[i] + f * (y[i + 1] - y[i])
    };
    let mut total = 0u64;
    for c in 0..columns {
        let ul = c as f64 * delta * intervals;
        let ur = ((c + 1) as f64 * delta * intervals).min(intervals);
        let (left, right) = (at(ul), at(ur));
        let (mut lo, mut hi) = (left.min(right), left.max(right));
        let first = ul.ceil() as usize;
        let last = (ur.floor() as usize).min(y.len() - 1);
        for &v in y.iter().take(last + 1).skip(first) {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        let j_lo = ((lo / delta).floor() as usize).min(top);
        let j_hi = (((hi / delta).ceil() as usize).saturating_sub(1)).clamp(j_lo, top);
        total += (j_hi - j_lo + 1) as u64;
    }
    total
}

/// Number of `δ × δ` grid cells crossed by the normalized, interpolated trace.
///
/// Each time column contributes the cells between the lowest and highest point of
/// the trace inside it. A trace that only touches a grid line from below does not
/// enter the cell above, so the diagonal of the unit square at `δ = 1/4` crosses 4
/// cells and a flat trace crosses `1/δ`.
pub fn box_count(series: &TimeSeries, delta: f64) -> Result<u64> {
    check_delta(delta)?;
    let min = 2.0 / series.len() as f64;
    if delta < min {
        return Err(Error::Resolution { delta, min });
    }
    Ok(count_normalized(&normalized(series), delta))
}

pub fn box_dimension(series: &TimeSeries, cfg: &BoxGridConfig) -> Result<BoxDimEstimate> {
    let min = 2.0 / series.len() as f64;
    let smallest = *cfg.deltas().last().expect("grid is never empty");
    if smallest < min {
        return Err(Error::Resolution {
            delta: smallest,
            min,
        });
    }
    let y = normalized(series);
    let counts: Vec<BoxCount> = cfg
        .deltas()
        .iter()
        .map(|&delta| BoxCount {
            delta,
            count: count_normalized(&y, delta),
        })
        .collect();
    if series.is_constant() {
        return Ok(BoxDimEstimate {
            dimension: 1.0,
            counts,
            slope_std_err: 0.0,
            r_squared: 1.0,
            v_star: 1.0,
            degenerate: true,
        });
    }
    let x: Vec<f64> = counts.iter().map(|c| (1.0 / c.delta).ln()).collect();
    let ln_n: Vec<f64> = counts.iter().map(|c| (c.count as f64).ln()).collect();
    let fit = linear_fit(&x, &ln_n)?;
    Ok(BoxDimEstimate {
        dimension: fit.slope,
        counts,
        slope_std_err: fit.slope_std_err,
        r_squared: fit.r_squared,
        v_star: 1.0,
        degenerate: false,
    })
}

/// Box-counting dimension of the trace `t ↦ y(t)` of a process with Hurst
/// exponent `h`: `2 − h`.
pub fn trace_dimension_from_h(h: f64) -> Result<f64> {
    if !(h > 0.0 && h < 1.0) {
        return Err(invalid(format!(
            "Hurst exponent must lie in (0, 1), got {h}"
        )));
    }
    Ok(2.0 - h)
}

/// Dimension of the path traced in `euclidean_dim`-dimensional space by a process
/// whose coordinates have Hurst exponent `h`: `min(1/h, D_E)`.
pub fn path_dimension_from_h(h: f64, euclidean_dim: u32) -> Result<f64> {
    if !(h > 0.0 && h < 1.0) {
        return Err(invalid(format!(
            "Hurst exponent must lie in (0, 1), got {h}"
        )));
    }
    if euclidean_dim == 0 {
        return Err(invalid("Euclidean dimension must be at least 1"));
    }
    Ok((1.0 / h).min(euclidean_dim as f64))
}
