//! Seeded generators for the test processes: Gaussian noise, Gaussian random walks,
//! fractional Brownian motion and stable variates.
//!
//! Every generator is a pure function of its arguments and a [`Seed`]. The random
//! stream is ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`), which produces the
//! same words on every platform. Uniforms use the top 53 bits of each word, offset by
//! half a unit so they lie strictly inside `(0, 1)`, and normal variates come from
//! the inverse normal distribution function. Nothing is rejected, so one uniform is
//! consumed per normal variate and streams never drift apart between versions of a
//! test.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::numeric::normal_quantile;
use crate::series::TimeSeries;
use crate::stable::StableParams;

/// Seed of a generator stream. Any value is valid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Seed(v)
    }
}

struct Stream(ChaCha8Rng);

impl Stream {
    fn new(seed: Seed) -> Self {
        Stream(ChaCha8Rng::seed_from_u64(seed.0))
    }

    fn uniform(&mut self) -> f64 {
        ((self.0.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    fn normal(&mut self) -> f64 {
        normal_quantile(self.uniform())
    }
}

fn check_len(n: usize) -> Result<()> {
    if n < 2 {
        return Err(invalid(format!(
            "series length must be at least 2, got {n}"
        )));
    }
    Ok(())
}

fn normals(n: usize, seed: Seed) -> Vec<f64> {
    let mut s = Stream::new(seed);
    (0..n).map(|_| s.normal()).collect()
}

/// `n` independent standard normal samples.
pub fn gaussian_noise(n: usize, seed: Seed) -> Result<TimeSeries> {
    check_len(n)?;
    TimeSeries::new(normals(n, seed))
}

/// Random walk `y_0 = 0`, `y_k = y_{k−1} + ε_{k−1}` driven by the first `n − 1`
/// values of [`gaussian_noise`] with the same seed.
pub fn gaussian_walk(n: usize, seed: Seed) -> Result<TimeSeries> {
    check_len(n)?;
    let eps = normals(n - 1, seed);
    let mut y = Vec::with_capacity(n);
    let mut acc = 0.0;
    y.push(acc);
    for e in eps {
        acc += e;
        y.push(acc);
    }
    TimeSeries::new(y)
}

/// Length and Hurst exponent of a fractional Brownian motion sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FbmSpec {
    pub n: usize,
    pub h: f64,
}

impl FbmSpec {
    pub fn new(n: usize, h: f64) -> Result<Self> {
        let spec = Self { n, h };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 256 || !self.n.is_power_of_two() {
            return Err(invalid(format!(
                "fBm length must be a power of two and at least 256, got {}",
                self.n
            )));
        }
        if !(self.h > 0.0 && self.h < 1.0) {
            return Err(invalid(format!(
                "Hurst exponent must lie in (0, 1), got {}",
                self.h
            )));
        }
        Ok(())
    }
}

/// An fBm path plus the number of circulant eigenvalues that came out negative and
/// were set to zero. A nonzero count means the covariance is only approximate.
#[derive(Debug, Clone, PartialEq)]
pub struct FbmSample {
    pub series: TimeSeries,
    pub clipped: usize,
}

/// Autocovariance of unit-variance fractional Gaussian noise at lag `k`.
fn fgn_autocov(k: usize, h: f64) -> f64 {
    let k = k as f64;
    let e = 2.0 * h;
    0.5 * ((k + 1.0).powf(e) - 2.0 * k.powf(e) + (k - 1.0).abs().powf(e))
}

/// Fractional Brownian motion on `n` equally spaced points of `[0, 1)`.
///
/// Increments are fractional Gaussian noise synthesised by circulant embedding: the
/// autocovariance is wrapped into a circulant of size `2n`, whose eigenvalues are
/// its FFT, and the real part of the FFT of eigenvalue-weighted complex white noise
/// has exactly the target covariance. The path starts at 0 and the increments are
/// scaled by `n^−H` so the path covers unit time.
pub fn fbm(spec: FbmSpec, seed: Seed) -> Result<FbmSample> {
    spec.validate()?;
    let FbmSpec { n, h } = spec;
    let m = 2 * n;
    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(m);

    let mut row: Vec<Complex64> = (0..m)
        .map(|j| Complex64::new(fgn_autocov(j.min(m - j), h), 0.0))
        .collect();
    fft.process(&mut row);
    let largest = row.iter().map(|z| z.re).fold(0.0, f64::max);
    let mut clipped = 0;
    let weights: Vec<f64> = row
        .iter()
        .map(|z| {
            if z.re < 0.0 {
                if z.re < -1e-12 * largest {
                    clipped += 1;
                }
                0.0
            } else {
                (z.re / m as f64).sqrt()
            }
        })
        .collect();

    let mut s = Stream::new(seed);
    let mut w: Vec<Complex64> = weights
        .iter()
        .map(|&lam| {
            let re = s.normal();
            let im = s.normal();
            Complex64::new(lam * re, lam * im)
        })
        .collect();
    fft.process(&mut w);

    let scale = (n as f64).powf(-h);
    let mut y = Vec::with_capacity(n);
    let mut acc = 0.0;
    y.push(acc);
    for z in &w[..n - 1] {
        acc += z.re * scale;
        y.push(acc);
    }
    Ok(FbmSample {
        series: TimeSeries::new(y)?,
        clipped,
    })
}

/// Independent draws from the stable law `p` by the Chambers–Mallows–Stuck method.
///
/// The transformation is written for the skewness sign in which positive skew
/// lengthens the right tail under `exp(−|t|^α(1 − iβ sign(t) tan(πα/2)))`; the
/// characteristic function in [`crate::stable`] carries `+iβ`, so the sampler runs
/// with the opposite sign. Two uniforms are consumed per draw.
pub fn stable_sample(p: &StableParams, n: usize, seed: Seed) -> Result<TimeSeries> {
    check_len(n)?;
    let alpha = p.alpha();
    let beta = if p.is_gaussian() { 0.0 } else { -p.beta() };
    let scale = p.gamma().powf(1.0 / alpha);
    let loc = p.sigma();
    let mut s = Stream::new(seed);

    let values: Vec<f64> = if alpha == 1.0 {
        let shift = 2.0 / PI * beta * scale * scale.ln();
        (0..n)
            .map(|_| {
                let v = PI * (s.uniform() - 0.5);
                let w = -s.uniform().ln();
                let a = FRAC_PI_2 + beta * v;
                let x = (a * v.tan() - beta * (FRAC_PI_2 * w * v.cos() / a).ln()) / FRAC_PI_2;
                scale * x + shift + loc
            })
            .collect()
    } else {
        let (b, sc) = if beta == 0.0 {
            (0.0, 1.0)
        } else {
            let t = beta * (PI * alpha / 2.0).tan();
            (t.atan() / alpha, (1.0 + t * t).powf(1.0 / (2.0 * alpha)))
        };
        (0..n)
            .map(|_| {
                let v = PI * (s.uniform() - 0.5);
                let w = -s.uniform().ln();
                let av = alpha * (v + b);
                let x = sc * av.sin() / v.cos().powf(1.0 / alpha)
                    * ((v - av).cos() / w).powf((1.0 - alpha) / alpha);
                scale * x + loc
            })
            .collect()
    };
    TimeSeries::new(values)
}
