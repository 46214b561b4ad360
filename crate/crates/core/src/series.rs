use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// A uniformly sampled real sequence.
///
/// The series is taken to cover one unit of time, so consecutive samples are
/// `1 / (n - 1)` apart when mapped onto `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct TimeSeries {
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(invalid(format!(
                "a time series needs at least 2 samples, got {}",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(invalid(format!("sample {i} is not finite")));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Smallest and largest sample.
    pub fn bounds(&self) -> (f64, f64) {
        self.values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            })
    }

    pub fn is_constant(&self) -> bool {
        let (lo, hi) = self.bounds();
        lo == hi
    }

    /// First differences `y[k + 1] - y[k]`.
    pub fn differences(&self) -> Vec<f64> {
        self.values.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn reversed(&self) -> Self {
        let mut values = self.values.clone();
        values.reverse();
        Self { values }
    }

    /// Applies `y -> scale * y + offset` to every sample.
    pub fn affine(&self, scale: f64, offset: f64) -> Result<Self> {
        Self::new(self.values.iter().map(|v| scale * v + offset).collect())
    }
}

impl TryFrom<Vec<f64>> for TimeSeries {
    type Error = crate::Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

impl From<TimeSeries> for Vec<f64> {
    fn from(series: TimeSeries) -> Self {
        series.values
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_short_and_non_finite() {
        assert!(TimeSeries::new(vec![1.0]).is_err());
        assert!(TimeSeries::new(vec![1.0, f64::NAN]).is_err());
        assert!(TimeSeries::new(vec![1.0, f64::INFINITY, 2.0]).is_err());
        assert!(TimeSeries::new(vec![1.0, 2.0]).is_ok());
    }

    #[test]
    fn bounds_and_constant() {
        let s = TimeSeries::new(vec![3.0, -1.0, 2.0]).unwrap();
        assert_eq!(s.bounds(), (-1.0, 3.0));
        assert!(!s.is_constant());
        assert!(TimeSeries::new(vec![2.0; 5]).unwrap().is_constant());
    }
}
