//! HBT model: a large, spatially incoherent disk source observed in the
//! far field through a balanced beamsplitter.
//!
//! One detector sits at `x′ = 0`, the other is scanned along `x`. With the
//! normalised amplitude correlation `h(x) = jinc(κ|x|)`, `κ = kA/z`, the two
//! output arms are in the standard-form state
//!
//! ```text
//! a = b = 1 + 2n̄,   c = d = 2n̄·h(x)
//! ```
//!
//! and the normalised intensity correlation is `g² − 1 = h(x)²`.

use serde::{Deserialize, Serialize};

use crate::gaussian::StandardForm;
use crate::special::{jinc, sinc};
use crate::{Error, Result};

/// Normalised amplitude cross-correlation as a function of `κ|x|`.
pub trait CorrelationKernel: Sync {
    fn eval(&self, y: f64) -> f64;
}

impl<F: Fn(f64) -> f64 + Sync> CorrelationKernel for F {
    fn eval(&self, y: f64) -> f64 {
        self(y)
    }
}

/// Built-in kernels. `Jinc` is the disk-source result; the others stand in
/// for different source geometries.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kernel {
    #[default]
    Jinc,
    /// `exp(−y²)`
    Gauss,
    /// `sin(y) / y`
    Sinc,
}

impl CorrelationKernel for Kernel {
    fn eval(&self, y: f64) -> f64 {
        match self {
            Kernel::Jinc => jinc(y),
            Kernel::Gauss => (-y * y).exp(),
            Kernel::Sinc => sinc(y),
        }
    }
}

impl std::str::FromStr for Kernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "jinc" => Ok(Kernel::Jinc),
            "gauss" | "gaussian" => Ok(Kernel::Gauss),
            "sinc" => Ok(Kernel::Sinc),
            other => Err(Error::Domain(format!("unknown kernel `{other}`"))),
        }
    }
}

impl std::fmt::Display for Kernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Kernel::Jinc => "jinc",
            Kernel::Gauss => "gauss",
            Kernel::Sinc => "sinc",
        })
    }
}

/// Source brightness and far-field scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HbtParams {
    /// Mean photon number per mode, `n̄ ≥ 0`.
    pub nbar: f64,
    /// Lumped far-field scale `κ = kA/z > 0`.
    pub kappa: f64,
    pub kernel: Kernel,
}

impl HbtParams {
    pub fn new(nbar: f64, kappa: f64) -> Result<Self> {
        Self::with_kernel(nbar, kappa, Kernel::Jinc)
    }

    pub fn with_kernel(nbar: f64, kappa: f64, kernel: Kernel) -> Result<Self> {
        if !(nbar >= 0.0) || !nbar.is_finite() {
            return Err(Error::Domain(format!("nbar must be finite and >= 0, got {nbar}")));
        }
        if !(kappa > 0.0) || !kappa.is_finite() {
            return Err(Error::Domain(format!("kappa must be finite and > 0, got {kappa}")));
        }
        Ok(Self { nbar, kappa, kernel })
    }
}

/// Transverse offset of the scanning detector (the fixed one is at 0).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub x: f64,
}

impl ScanPoint {
    pub const ORIGIN: Self = Self { x: 0.0 };

    pub const fn new(x: f64) -> Self {
        Self { x }
    }
}

/// `h(x) = kernel(κ|x|)`, normalised so that `h(0) = 1`.
pub fn amplitude_correlation(p: &HbtParams, s: ScanPoint) -> f64 {
    p.kernel.eval(p.kappa * s.x.abs())
}

/// Standard form `(1 + 2n̄, 1 + 2n̄, 2n̄·h, 2n̄·h)` of the two output arms.
pub fn covariance_at(p: &HbtParams, s: ScanPoint) -> StandardForm {
    standard_form_for(p.nbar, amplitude_correlation(p, s))
}

/// Standard form for a given photon number and amplitude correlation.
pub fn standard_form_for(nbar: f64, corr: f64) -> StandardForm {
    StandardForm::symmetric(1.0 + 2.0 * nbar, 2.0 * nbar * corr)
}

/// `⟨I₁I₂⟩ / (⟨I₁⟩⟨I₂⟩) − 1 = h(x)²`, independent of `n̄`.
pub fn intensity_correlation_minus_one(p: &HbtParams, s: ScanPoint) -> f64 {
    let h = amplitude_correlation(p, s);
    h * h
}

/// `n` evenly spaced points on `[start, stop]`, end points included.
pub fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { stop } else { start + i as f64 * step })
                .collect()
        }
    }
}

/// `n` logarithmically spaced points on `[start, stop]`, both positive.
pub fn logspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    linspace(start.ln(), stop.ln(), n)
        .into_iter()
        .enumerate()
        .map(|(i, l)| {
            if i == 0 {
                start
            } else if i == n - 1 {
                stop
            } else {
                l.exp()
            }
        })
        .collect()
}
