//! Monte Carlo thermal-field sampler for the intensity-correlation law.
//!
//! Each trial draws independent circular complex Gaussian amplitudes on a
//! discretised disk source, propagates them to the detector plane with the
//! Fraunhofer phase `e^{−iκ x r cos θ}`, and splits the far field on a
//! 50:50 beamsplitter. The estimator
//!
//! ```text
//! ⟨I₁(0) I₂(x)⟩ / (⟨I₁(0)⟩⟨I₂(x)⟩) − 1
//! ```
//!
//! should reproduce `h(x)²` with no reference to the analytic kernel.
//!
//! The model is semiclassical: vacuum-port fluctuations and shot noise are
//! not simulated, so only the field-statistics content of the law is
//! checked. Source amplitudes are normalised so that `⟨|E|²⟩ = n̄` exactly.
//!
//! Randomness is counter based: trial `t` reads ChaCha8 stream `t` under the
//! run seed, and source point `j` consumes words `4j..4j+4` of that stream.
//! Trials are grouped into a fixed number of batches whose partial sums are
//! merged in batch order, so results do not depend on the thread count.

mod source;

pub use source::{gauss_legendre, DiskSource};

use nalgebra::Complex;
use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const MIN_SOURCE_POINTS: usize = 16;
/// Fewer trials than this give meaningless batch-mean errors.
pub const MIN_TRIALS: usize = 1000;
/// Number of batches used for the batch-means standard error.
pub const BATCHES: usize = 40;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub source_points: usize,
    pub trials: usize,
    pub nbar: f64,
    pub kappa: f64,
    pub seed: u64,
    pub detector_grid: Vec<f64>,
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        if self.source_points < MIN_SOURCE_POINTS {
            return Err(Error::InvalidConfig(format!(
                "source_points must be >= {MIN_SOURCE_POINTS}, got {}",
                self.source_points
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be >= 1".into()));
        }
        if !(self.nbar >= 0.0) || !self.nbar.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "nbar must be finite and >= 0, got {}",
                self.nbar
            )));
        }
        if !(self.kappa > 0.0) || !self.kappa.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "kappa must be finite and > 0, got {}",
                self.kappa
            )));
        }
        if self.detector_grid.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidConfig("detector grid contains non-finite values".into()));
        }
        if self.detector_grid.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidConfig("detector grid must be sorted".into()));
        }
        Ok(())
    }

    pub fn source(&self) -> DiskSource {
        DiskSource::new(self.source_points)
    }
}

/// Estimated `g² − 1` at one detector offset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct G2Estimate {
    pub x: f64,
    pub g2_minus_1: f64,
    /// One standard error from batch means.
    pub std_error: f64,
}

/// Estimated `Re⟨E*(x) E(0)⟩ / n̄` at one detector offset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldCorrelation {
    pub x: f64,
    pub value: f64,
    pub std_error: f64,
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Uniform in `(0, 1]`.
fn open_unit(bits: u64) -> f64 {
    1.0 - (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn fill_source_field(seed: u64, trial: u64, nbar: f64, src: &DiskSource, re: &mut [f64], im: &mut [f64]) {
    let mut rng = trial_rng(seed, trial);
    for (j, &w) in src.weights.iter().enumerate() {
        // Box–Muller: |z|² ~ Exp(1), uniform phase.
        let u1 = open_unit(rng.next_u64());
        let u2 = open_unit(rng.next_u64());
        let r = (nbar * w * -u1.ln()).sqrt();
        let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
        re[j] = r * c;
        im[j] = r * s;
    }
}

/// Source amplitudes of one trial, deterministic in `(seed, trial)`.
///
/// Point `j` is circular complex Gaussian with `⟨|a_j|²⟩ = n̄·w_j`.
pub fn sample_source_field(cfg: &McConfig, trial: u64) -> Vec<Complex<f64>> {
    let src = cfg.source();
    let mut re = vec![0.0; src.len()];
    let mut im = vec![0.0; src.len()];
    fill_source_field(cfg.seed, trial, cfg.nbar, &src, &mut re, &mut im);
    re.into_iter().zip(im).map(|(r, i)| Complex::new(r, i)).collect()
}

/// Far-field amplitude `E(x) = Σ_j e^{−iκ x r_j cos θ_j} a_j`.
pub fn propagate_far_field(field: &[Complex<f64>], x: f64, cfg: &McConfig) -> Complex<f64> {
    let src = cfg.source();
    assert_eq!(field.len(), src.len(), "field does not match the source discretisation");
    field
        .iter()
        .zip(&src.along_scan)
        .map(|(a, &u)| {
            let (s, c) = (cfg.kappa * x * u).sin_cos();
            Complex::new(c, -s) * a
        })
        .sum()
}

/// Precomputed propagation phases for a detector grid.
struct Propagator {
    cos: Vec<f64>,
    sin: Vec<f64>,
    points: usize,
}

impl Propagator {
    fn new(src: &DiskSource, kappa: f64, grid: &[f64]) -> Self {
        let points = src.len();
        let mut cos = Vec::with_capacity(points * grid.len());
        let mut sin = Vec::with_capacity(points * grid.len());
        for &x in grid {
            for &u in &src.along_scan {
                let (s, c) = (kappa * x * u).sin_cos();
                cos.push(c);
                sin.push(s);
            }
        }
        Self { cos, sin, points }
    }

    /// `E(x_g)` for grid index `g`.
    fn amplitude(&self, g: usize, re: &[f64], im: &[f64]) -> (f64, f64) {
        let row = g * self.points..(g + 1) * self.points;
        let (c, s) = (&self.cos[row.clone()], &self.sin[row]);
        let mut er = 0.0;
        let mut ei = 0.0;
        for j in 0..self.points {
            // (c − i s)(re + i im)
            er += c[j] * re[j] + s[j] * im[j];
            ei += c[j] * im[j] - s[j] * re[j];
        }
        (er, ei)
    }
}

fn batch_ranges(trials: usize) -> Vec<std::ops::Range<usize>> {
    let batches = BATCHES.min(trials);
    (0..batches)
        .map(|b| (b * trials / batches)..((b + 1) * trials / batches))
        .collect()
}

#[derive(Debug, Clone)]
struct IntensitySums {
    n: f64,
    reference: f64,
    scanned: Vec<f64>,
    product: Vec<f64>,
}

impl IntensitySums {
    fn zeros(len: usize) -> Self {
        Self {
            n: 0.0,
            reference: 0.0,
            scanned: vec![0.0; len],
            product: vec![0.0; len],
        }
    }

    fn merge(&mut self, other: &Self) {
        self.n += other.n;
        self.reference += other.reference;
        for (a, b) in self.scanned.iter_mut().zip(&other.scanned) {
            *a += b;
        }
        for (a, b) in self.product.iter_mut().zip(&other.product) {
            *a += b;
        }
    }

    fn g2_minus_1(&self, g: usize) -> f64 {
        let mean_ref = self.reference / self.n;
        let mean_scan = self.scanned[g] / self.n;
        (self.product[g] / self.n) / (mean_ref * mean_scan) - 1.0
    }
}

fn mean_and_std_error(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, f64::INFINITY);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Estimates `g² − 1` on the detector grid with batch-mean standard errors.
///
/// Each far-field amplitude is split 50:50, `I₁ = I₂ = |E|²/2`, with the
/// reference detector at `x′ = 0`.
pub fn estimate_g2(cfg: &McConfig) -> Result<Vec<G2Estimate>> {
    cfg.validate()?;
    if cfg.trials < MIN_TRIALS {
        return Err(Error::InsufficientTrials {
            required: MIN_TRIALS,
            got: cfg.trials,
        });
    }
    if cfg.nbar == 0.0 {
        return Err(Error::InvalidConfig(
            "nbar = 0 gives a vanishing field; g2 is undefined".into(),
        ));
    }
    let src = cfg.source();
    let grid = &cfg.detector_grid;
    let prop = Propagator::new(&src, cfg.kappa, grid);

    let batches: Vec<IntensitySums> = batch_ranges(cfg.trials)
        .into_par_iter()
        .map(|range| {
            let mut sums = IntensitySums::zeros(grid.len());
            let mut re = vec![0.0; src.len()];
            let mut im = vec![0.0; src.len()];
            for trial in range {
                fill_source_field(cfg.seed, trial as u64, cfg.nbar, &src, &mut re, &mut im);
                let e0r: f64 = re.iter().sum();
                let e0i: f64 = im.iter().sum();
                let i1 = 0.5 * (e0r * e0r + e0i * e0i);
                sums.n += 1.0;
                sums.reference += i1;
                for g in 0..grid.len() {
                    let (er, ei) = prop.amplitude(g, &re, &im);
                    let i2 = 0.5 * (er * er + ei * ei);
                    sums.scanned[g] += i2;
                    sums.product[g] += i1 * i2;
                }
            }
            sums
        })
        .collect();

    let mut total = IntensitySums::zeros(grid.len());
    for b in &batches {
        total.merge(b);
    }
    Ok(grid
        .iter()
        .enumerate()
        .map(|(g, &x)| {
            let per_batch: Vec<f64> = batches.iter().map(|b| b.g2_minus_1(g)).collect();
            let (_, std_error) = mean_and_std_error(&per_batch);
            G2Estimate {
                x,
                g2_minus_1: total.g2_minus_1(g),
                std_error,
            }
        })
        .collect())
}

/// Estimates the normalised field correlation `Re⟨E*(x) E(0)⟩ / n̄`.
pub fn estimate_field_correlation(cfg: &McConfig) -> Result<Vec<FieldCorrelation>> {
    cfg.validate()?;
    if cfg.trials < MIN_TRIALS {
        return Err(Error::InsufficientTrials {
            required: MIN_TRIALS,
            got: cfg.trials,
        });
    }
    if cfg.nbar == 0.0 {
        return Err(Error::InvalidConfig("nbar = 0 gives a vanishing field".into()));
    }
    let src = cfg.source();
    let grid = &cfg.detector_grid;
    let prop = Propagator::new(&src, cfg.kappa, grid);
    let batch_means: Vec<Vec<f64>> = batch_ranges(cfg.trials)
        .into_par_iter()
        .map(|range| {
            let count = range.len() as f64;
            let mut acc = vec![0.0; grid.len()];
            let mut re = vec![0.0; src.len()];
            let mut im = vec![0.0; src.len()];
            for trial in range {
                fill_source_field(cfg.seed, trial as u64, cfg.nbar, &src, &mut re, &mut im);
                let e0r: f64 = re.iter().sum();
                let e0i: f64 = im.iter().sum();
                for (g, slot) in acc.iter_mut().enumerate() {
                    let (er, ei) = prop.amplitude(g, &re, &im);
                    // Re(E*(x) E(0))
                    *slot += er * e0r + ei * e0i;
                }
            }
            acc.into_iter().map(|s| s / (count * cfg.nbar)).collect()
        })
        .collect();
    Ok(grid
        .iter()
        .enumerate()
        .map(|(g, &x)| {
            let per_batch: Vec<f64> = batch_means.iter().map(|b| b[g]).collect();
            let (value, std_error) = mean_and_std_error(&per_batch);
            FieldCorrelation { x, value, std_error }
        })
        .collect())
}
