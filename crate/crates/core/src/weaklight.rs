//! Weak-light agreement between normalised mutual information and normalised
//! intensity correlations.
//!
//! For the HBT family `a = 1 + 2n̄`, `c = 2n̄·h` the mutual information is
//! `I = ln g` with
//!
//! ```text
//! g(n̄; h) = (1 + 2n̄)² / ((1 + 2n̄)² − (2n̄h)²)
//! ```
//!
//! so `I(x)/I(0) = ln g(n̄; h) / ln g(n̄; 1)`. It equals `f = h²` exactly when
//! `g(n̄; h) = g(n̄; 1)^{h²}`, and the two sides share their Taylor
//! coefficients in `n̄` through third order.
//!
//! Notation note: the covariance entry carries the amplitude correlation `h`,
//! while the exponent is the intensity correlation `f = h²`. Writing the
//! entry as `2n̄·f` instead would break the third-order agreement and would
//! contradict `g² − 1 = h²`.

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::numeric::neg_ln_1m;
use crate::optics::{CorrelationKernel, HbtParams, ScanPoint};
use crate::{Error, Result};

/// Relative tolerance for two series coefficients to count as equal.
pub const COEFFICIENT_RTOL: f64 = 1e-8;

/// Photon numbers at which [`SeriesMatchReport::max_residual_ratio`] is
/// sampled.
pub const RESIDUAL_NBARS: [f64; 4] = [1e-2, 5e-3, 2e-3, 1e-3];

fn check_corr(corr: f64) -> Result<()> {
    if !(corr.abs() <= 1.0) {
        return Err(Error::Domain(format!("|corr| must be <= 1, got {corr}")));
    }
    Ok(())
}

fn check_nbar(nbar: f64) -> Result<()> {
    if !(nbar >= 0.0) || !nbar.is_finite() {
        return Err(Error::Domain(format!("nbar must be finite and >= 0, got {nbar}")));
    }
    Ok(())
}

/// `(2n̄h)² / (1 + 2n̄)²`, the quantity with `g = 1 / (1 − t)`.
fn correlation_fraction(nbar: f64, corr: f64) -> f64 {
    let r = 2.0 * nbar * corr / (1.0 + 2.0 * nbar);
    r * r
}

/// `g(n̄; h) = (1 + 2n̄)² / ((1 + 2n̄)² − (2n̄h)²)`.
pub fn g_function(nbar: f64, corr: f64) -> Result<f64> {
    check_nbar(nbar)?;
    check_corr(corr)?;
    let a2 = (1.0 + 2.0 * nbar).powi(2);
    let c = 2.0 * nbar * corr;
    let denom = a2 - c * c;
    if !(denom > 0.0) {
        return Err(Error::Domain(format!("denominator {denom:e} is not positive")));
    }
    Ok(a2 / denom)
}

/// `ln g(n̄; h)`, i.e. the mutual information, without forming `g`.
pub fn ln_g(nbar: f64, corr: f64) -> Result<f64> {
    check_nbar(nbar)?;
    check_corr(corr)?;
    let t = correlation_fraction(nbar, corr);
    if !(t < 1.0) {
        return Err(Error::Domain(format!("correlation fraction {t} reaches 1")));
    }
    Ok(neg_ln_1m(t))
}

/// `I(x)/I(0) = ln g(n̄; h) / ln g(n̄; 1)`.
pub fn normalized_mutual_information(nbar: f64, corr: f64) -> Result<f64> {
    if !(nbar > 0.0) {
        return Err(Error::Domain(format!("normalisation needs nbar > 0, got {nbar}")));
    }
    Ok(ln_g(nbar, corr)? / ln_g(nbar, 1.0)?)
}

/// One row of the Taylor coefficient comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesCoefficient {
    pub order: usize,
    /// Coefficient of `n̄^order` in `g(n̄; h)`.
    pub coeff_g: f64,
    /// Coefficient of `n̄^order` in `g(n̄; 1)^{h²}`.
    pub coeff_gf: f64,
}

impl SeriesCoefficient {
    pub fn matches(&self) -> bool {
        coefficients_match(self.coeff_g, self.coeff_gf)
    }
}

fn coefficients_match(x: f64, y: f64) -> bool {
    let scale = x.abs().max(y.abs());
    scale == 0.0 || (x - y).abs() <= COEFFICIENT_RTOL * scale
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesMatchReport {
    /// Largest `k` such that all coefficients of order `≤ k` agree.
    pub order_matched: usize,
    pub coefficient_table: Vec<SeriesCoefficient>,
    /// `sup |g(n̄; h) − g(n̄; 1)^{h²}| / n̄⁴` over [`RESIDUAL_NBARS`].
    pub max_residual_ratio: f64,
}

/// Truncated power series with exact rational coefficients.
type Series = Vec<BigRational>;

fn series_mul(x: &Series, y: &Series, len: usize) -> Series {
    let mut out = vec![BigRational::zero(); len];
    for (i, xi) in x.iter().enumerate().take(len) {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate().take(len - i) {
            out[i + j] += xi * yj;
        }
    }
    out
}

fn rational(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Coefficients `0..=orders` of `g(n̄; h)` and of `g(n̄; 1)^{h²}`.
fn rational_expansions(corr: f64, orders: usize) -> Result<(Series, Series)> {
    let len = orders + 1;
    let h = BigRational::from_float(corr).ok_or_else(|| Error::Domain(format!("corr {corr} is not finite")))?;
    let h2 = &h * &h;

    // u = n̄ / (1 + 2n̄) = Σ_{k≥1} (−2)^{k−1} n̄^k
    let mut u = vec![BigRational::zero(); len];
    let mut pow = BigRational::one();
    for uk in u.iter_mut().skip(1) {
        *uk = pow.clone();
        pow *= rational(-2);
    }
    // g = 1 / (1 − w), w = 4h²u² (starts at order 2)
    let u2 = series_mul(&u, &u, len);
    let w: Series = u2.iter().map(|c| c * &h2 * rational(4)).collect();
    let mut g = vec![BigRational::zero(); len];
    g[0] = BigRational::one();
    let mut w_pow = g.clone();
    for _ in 0..len / 2 {
        w_pow = series_mul(&w_pow, &w, len);
        for (gk, wk) in g.iter_mut().zip(&w_pow) {
            *gk += wk;
        }
    }

    // ln g(n̄; 1) = 2 ln(1 + 2n̄) − ln(1 + 4n̄)
    let mut log_g1 = vec![BigRational::zero(); len];
    for (k, lk) in log_g1.iter_mut().enumerate().skip(1) {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let two_k = BigRational::from_integer(num_bigint::BigInt::from(2).pow(k as u32));
        let four_k = &two_k * &two_k;
        *lk = (rational(2) * two_k - four_k) * rational(sign) / rational(k as i64);
    }
    // E = exp(h²·L) via E_k = (1/k) Σ_{j=1..k} j h² L_j E_{k−j}
    let mut e = vec![BigRational::zero(); len];
    e[0] = BigRational::one();
    for k in 1..len {
        let mut acc = BigRational::zero();
        for j in 1..=k {
            if log_g1[j].is_zero() {
                continue;
            }
            acc += rational(j as i64) * &log_g1[j] * &e[k - j];
        }
        e[k] = acc * &h2 / rational(k as i64);
    }
    Ok((g, e))
}

/// `|g(n̄; h) − g(n̄; 1)^{h²}|` evaluated without cancellation.
fn series_residual(nbar: f64, corr: f64) -> Result<f64> {
    let t = correlation_fraction(nbar, corr);
    let g_minus_1 = t / (1.0 - t);
    let e_minus_1 = (corr * corr * ln_g(nbar, 1.0)?).exp_m1();
    Ok((g_minus_1 - e_minus_1).abs())
}

/// Compares the Taylor coefficients in `n̄` of `g(n̄; h)` and
/// `g(n̄; 1)^{h²}` through order `orders` (which must be at least 4).
///
/// Coefficients come from an exact rational expansion; `order_matched`
/// equals `orders` when every computed coefficient agrees.
pub fn taylor_match_order(corr: f64, orders: usize) -> Result<SeriesMatchReport> {
    check_corr(corr)?;
    if orders < 4 {
        return Err(Error::Domain(format!(
            "need at least 4 orders to resolve the mismatch, got {orders}"
        )));
    }
    let (g, e) = rational_expansions(corr, orders)?;
    let mut table = Vec::with_capacity(orders + 1);
    for (k, (gk, ek)) in g.iter().zip(&e).enumerate() {
        let (cg, ce) = (gk.to_f64().unwrap_or(f64::NAN), ek.to_f64().unwrap_or(f64::NAN));
        if !cg.is_finite() || !ce.is_finite() {
            return Err(Error::NumericalInstability(format!(
                "order-{k} coefficient is not representable"
            )));
        }
        table.push(SeriesCoefficient {
            order: k,
            coeff_g: cg,
            coeff_gf: ce,
        });
    }
    let order_matched = match table.iter().position(|c| !c.matches()) {
        Some(0) => 0,
        Some(k) => k - 1,
        None => orders,
    };
    let mut max_residual_ratio: f64 = 0.0;
    for nbar in RESIDUAL_NBARS {
        max_residual_ratio = max_residual_ratio.max(series_residual(nbar, corr)? / nbar.powi(4));
    }
    Ok(SeriesMatchReport {
        order_matched,
        coefficient_table: table,
        max_residual_ratio,
    })
}

/// `max_x |I(x)/I(0) − h(x)²|` over a scan grid, for the kernel in `p`.
pub fn weaklight_deviation(p: &HbtParams, grid: &[ScanPoint]) -> Result<f64> {
    weaklight_deviation_with(p.nbar, p.kappa, &p.kernel, grid)
}

/// As [`weaklight_deviation`] with an arbitrary amplitude kernel.
pub fn weaklight_deviation_with<K: CorrelationKernel + ?Sized>(
    nbar: f64,
    kappa: f64,
    kernel: &K,
    grid: &[ScanPoint],
) -> Result<f64> {
    if !(nbar > 0.0) {
        return Err(Error::Domain(format!("nbar must be > 0, got {nbar}")));
    }
    let norm = ln_g(nbar, 1.0)?;
    grid.iter().try_fold(0.0f64, |worst, s| {
        let h = kernel.eval(kappa * s.x.abs());
        let dev = (ln_g(nbar, h)? / norm - h * h).abs();
        Ok(worst.max(dev))
    })
}
