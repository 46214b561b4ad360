use serde::{Deserialize, Serialize};

use super::{cdf, InversionConfig, StableParams};
use crate::error::{invalid, Result};
use crate::numeric::normal_cdf;

/// Default evaluation points of the tail comparison: −10, −9, …, −1.
pub const TABLE_XS: [f64; 10] = [-10.0, -9.0, -8.0, -7.0, -6.0, -5.0, -4.0, -3.0, -2.0, -1.0];

/// One row of the normal-vs-stable lower tail comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailRow {
    pub x: f64,
    pub p_normal: f64,
    pub p_stable: f64,
    /// `p_stable / p_normal`; `None` when the normal probability underflows to zero,
    /// which stands for an infinite ratio.
    pub ratio: Option<f64>,
}

impl TailRow {
    pub fn ratio_or_infinity(&self) -> f64 {
        self.ratio.unwrap_or(f64::INFINITY)
    }
}

/// `P[X ≤ x]` under the standard normal and under `p`, for each `x` in order.
pub fn tail_table(p: &StableParams, xs: &[f64], cfg: &InversionConfig) -> Result<Vec<TailRow>> {
    if let Some(x) = xs.iter().find(|x| !x.is_finite()) {
        return Err(invalid(format!("tail point {x} is not finite")));
    }
    xs.iter()
        .map(|&x| {
            let p_normal = normal_cdf(x);
            let p_stable = cdf(p, x, cfg)?;
            let ratio = (p_normal > 0.0).then(|| p_stable / p_normal);
            Ok(TailRow {
                x,
                p_normal,
                p_stable,
                ratio,
            })
        })
        .collect()
}
