//! Rényi-2 mutual information, Gaussian classical correlations and Gaussian
//! discord of two-mode states.
//!
//! With `S₂(σ) = ½ ln det σ`:
//!
//! ```text
//! I(A:B) = S₂(σ_A) + S₂(σ_B) − S₂(σ_AB)
//! J(A|B) = S₂(σ_A) − inf_M H₂(A|B_M)
//! D(A|B) = S₂(σ_B) − S₂(σ_AB) + inf_M H₂(A|B_M)
//! ```
//!
//! where `M` ranges over Gaussian measurements on `B`. A Gaussian
//! measurement with seed covariance `σ_M` leaves `A` in the conditional state
//! `σ_A − σ_C (σ_B + σ_M)⁻¹ σ_Cᵀ` whatever the outcome, so the outcome
//! average in `H₂` collapses to a single determinant.
//!
//! Closed forms are available when `a = b` and `|c| = |d|`; every other
//! state goes through [`discord_oracle`], which minimises over pure seeds.

use std::f64::consts::PI;

use nalgebra::Matrix2;
use serde::{Deserialize, Serialize};

use crate::gaussian::{marginal, renyi2_entropy_single, CovarianceMatrix2, StandardForm, Subsystem};
use crate::numeric::{diff_of_products, neg_ln_1m};
use crate::optimize::{coordinate_descent, golden_section, Axis, DescentOptions};
use crate::{Error, Result};

/// Seeds are restricted to `|ln λ| ≤ 12`; homodyne is the limit.
pub const LOG_SQUEEZE_LIMIT: f64 = 12.0;
const GRID_SQUEEZE_STEPS: usize = 49;
const GRID_ANGLE_STEPS: usize = 32;
/// Objective tolerance of the local refinement.
const REFINE_FTOL: f64 = 1e-14;
const REFINE_XTOL: f64 = 1e-10;

/// `(I, J, D)` in nats.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationTriple {
    pub mutual_info: f64,
    pub classical: f64,
    pub discord: f64,
}

impl CorrelationTriple {
    pub const ZERO: Self = Self {
        mutual_info: 0.0,
        classical: 0.0,
        discord: 0.0,
    };

    /// `|I − (J + D)|`.
    pub fn additivity_gap(&self) -> f64 {
        (self.mutual_info - (self.classical + self.discord)).abs()
    }
}

/// Which subsystem is measured. `MeasureB` gives `J(A|B)`, `D(A|B)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    #[default]
    MeasureB,
    MeasureA,
}

/// Pure single-mode Gaussian measurement seed
/// `σ_M = R(φ)·diag(λ, 1/λ)·R(φ)ᵀ` with `λ = exp(log_squeeze)`.
///
/// `log_squeeze = 0` is heterodyne; `±∞` would be homodyne.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementSeed {
    pub log_squeeze: f64,
    pub angle: f64,
}

impl MeasurementSeed {
    pub const HETERODYNE: Self = Self {
        log_squeeze: 0.0,
        angle: 0.0,
    };

    /// Builds a seed, wrapping the angle into `[0, π)`.
    pub fn new(log_squeeze: f64, angle: f64) -> Self {
        Self {
            log_squeeze,
            angle: angle.rem_euclid(PI),
        }
    }

    pub fn covariance(&self) -> Matrix2<f64> {
        let lambda = self.log_squeeze.exp();
        let (s, c) = self.angle.sin_cos();
        let (l1, l2) = (lambda, lambda.recip());
        let off = (l1 - l2) * s * c;
        Matrix2::new(l1 * c * c + l2 * s * s, off, off, l1 * s * s + l2 * c * c)
    }
}

fn det2(m: &Matrix2<f64>) -> f64 {
    diff_of_products(m[(0, 0)], m[(1, 1)], m[(0, 1)], m[(1, 0)])
}

/// Blocks `(σ_kept, σ_measured, σ_C)` with `σ_C` mapping measured → kept.
fn oriented_blocks(cm: &CovarianceMatrix2, orientation: Orientation) -> (Matrix2<f64>, Matrix2<f64>, Matrix2<f64>) {
    let sa = marginal(cm, Subsystem::A);
    let sb = marginal(cm, Subsystem::B);
    let sc = cm.cross();
    match orientation {
        Orientation::MeasureB => (sa, sb, sc),
        Orientation::MeasureA => (sb, sa, sc.transpose()),
    }
}

/// Determinant of the kept subsystem after measuring the other one.
fn conditional_det(
    kept: &Matrix2<f64>,
    measured: &Matrix2<f64>,
    cross: &Matrix2<f64>,
    seed: &Matrix2<f64>,
) -> Result<f64> {
    let sum = measured + seed;
    let det = det2(&sum);
    if !(det > f64::EPSILON * sum.amax().powi(2)) {
        return Err(Error::SingularUpdate(det));
    }
    #[rustfmt::skip]
    let inv = Matrix2::new(
        sum[(1, 1)], -sum[(0, 1)],
        -sum[(1, 0)], sum[(0, 0)],
    ) / det;
    let cond = kept - cross * inv * cross.transpose();
    Ok(det2(&cond))
}

/// `H₂(A|B_M) = ½ ln det(σ_A − σ_C (σ_B + σ_M)⁻¹ σ_Cᵀ)` for a measurement
/// on `B` with the given seed.
pub fn conditional_entropy_after_measurement(cm: &CovarianceMatrix2, seed: &MeasurementSeed) -> Result<f64> {
    conditional_entropy_oriented(cm, seed, Orientation::MeasureB)
}

/// As [`conditional_entropy_after_measurement`], measuring either side.
pub fn conditional_entropy_oriented(
    cm: &CovarianceMatrix2,
    seed: &MeasurementSeed,
    orientation: Orientation,
) -> Result<f64> {
    let (kept, measured, cross) = oriented_blocks(cm, orientation);
    Ok(0.5 * conditional_det(&kept, &measured, &cross, &seed.covariance())?.ln())
}

/// Rényi-2 mutual information of a standard-form state,
/// `½ ln(a²b² / ((ab − c²)(ab − d²)))`.
pub fn mutual_information(sf: &StandardForm) -> Result<f64> {
    sf.validate()?;
    let ab = sf.a * sf.b;
    Ok(0.5 * (neg_ln_1m(sf.c * sf.c / ab) + neg_ln_1m(sf.d * sf.d / ab)))
}

/// Mutual information of an arbitrary two-mode covariance matrix.
pub fn mutual_information_cm(cm: &CovarianceMatrix2) -> Result<f64> {
    if let Some(sf) = cm.standard_form() {
        return mutual_information(&sf);
    }
    cm.validate()?;
    let det_a = det2(&marginal(cm, Subsystem::A));
    let det_b = det2(&marginal(cm, Subsystem::B));
    Ok((0.5 * (det_a * det_b / cm.det()).ln()).max(0.0))
}

fn require_symmetric_family(sf: &StandardForm) -> Result<()> {
    sf.validate()?;
    if !sf.is_symmetric_family() {
        return Err(Error::OutOfFamily {
            a: sf.a,
            b: sf.b,
            c: sf.c,
            d: sf.d,
        });
    }
    Ok(())
}

/// `J = ln((a² + a) / (a² + a − c²))`, valid for `a = b`, `|c| = |d|`.
pub fn classical_correlations_closed(sf: &StandardForm) -> Result<f64> {
    require_symmetric_family(sf)?;
    let (a, c) = (sf.a, sf.c);
    Ok(neg_ln_1m(c * c / (a * a + a)))
}

/// `D = ln((a² + a³ − ac²) / (a² + a³ − ac² − c²))`, valid for `a = b`,
/// `|c| = |d|`.
pub fn discord_closed(sf: &StandardForm) -> Result<f64> {
    require_symmetric_family(sf)?;
    let (a, c) = (sf.a, sf.c);
    let c2 = c * c;
    // a² + a³ − ac² = a(a + a² − c²); the bracket is computed as a(a+1) − c².
    let base = a * diff_of_products(a, a + 1.0, c, c);
    Ok(neg_ln_1m(c2 / base))
}

/// Result of the measurement minimisation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub discord: f64,
    pub classical: f64,
    pub argmin: MeasurementSeed,
    /// Minimal conditional entropy `inf_M H₂`.
    pub min_conditional_entropy: f64,
}

/// Conditional determinant of a standard-form state as `(N, det(σ_B + σ_M))`,
/// `det σ_cond = N / det(σ_B + σ_M)`, with
///
/// ```text
/// N = (ab − c²)(ab − d²) + a² + a[M₁₁(ab − d²) + M₂₂(ab − c²)]
/// ```
///
/// Every term is non-negative for a physical state.
fn standard_conditional(sf: &StandardForm, orientation: Orientation, seed: &Matrix2<f64>) -> (f64, f64) {
    let (kept, measured) = match orientation {
        Orientation::MeasureB => (sf.a, sf.b),
        Orientation::MeasureA => (sf.b, sf.a),
    };
    let u = diff_of_products(sf.a, sf.b, sf.c, sf.c);
    let v = diff_of_products(sf.a, sf.b, sf.d, sf.d);
    let (m11, m22) = (seed[(0, 0)], seed[(1, 1)]);
    let n = u * v + kept * kept + kept * (m11 * v + m22 * u);
    let det_sum = measured * measured + measured * (m11 + m22) + 1.0;
    (n, det_sum)
}

/// Gaussian discord and classical correlations by direct minimisation of
/// the conditional entropy over pure Gaussian seeds on `B`.
pub fn discord_oracle(cm: &CovarianceMatrix2) -> Result<OracleResult> {
    discord_oracle_oriented(cm, Orientation::MeasureB)
}

/// As [`discord_oracle`], measuring either side.
///
/// The state is first brought to standard form, so `argmin` refers to that
/// frame. A 49 × 32 grid over `ln λ ∈ [−12, 12]`, `φ ∈ [0, π)` locates the
/// basin; coordinate descent with golden-section line searches then
/// polishes it.
pub fn discord_oracle_oriented(cm: &CovarianceMatrix2, orientation: Orientation) -> Result<OracleResult> {
    cm.validate()?;
    let sf = cm.to_standard_form()?;
    let objective = |s: f64, phi: f64| -> f64 {
        let seed = MeasurementSeed {
            log_squeeze: s,
            angle: phi,
        };
        let (n, det_sum) = standard_conditional(&sf, orientation, &seed.covariance());
        0.5 * (n / det_sum).ln()
    };

    let s_step = 2.0 * LOG_SQUEEZE_LIMIT / (GRID_SQUEEZE_STEPS - 1) as f64;
    let phi_step = PI / GRID_ANGLE_STEPS as f64;
    let mut best = (0.0, 0.0, f64::INFINITY);
    for i in 0..GRID_SQUEEZE_STEPS {
        let s = -LOG_SQUEEZE_LIMIT + i as f64 * s_step;
        for j in 0..GRID_ANGLE_STEPS {
            let phi = j as f64 * phi_step;
            let v = objective(s, phi);
            if v < best.2 {
                best = (s, phi, v);
            }
        }
    }
    if !best.2.is_finite() {
        return Err(Error::SingularUpdate(best.2));
    }

    let refined = coordinate_descent(
        |x: &[f64]| objective(x[0], x[1]),
        &[best.0, best.1],
        &[
            Axis::Bounded {
                lo: -LOG_SQUEEZE_LIMIT,
                hi: LOG_SQUEEZE_LIMIT,
            },
            Axis::Periodic { period: PI },
        ],
        &[s_step, phi_step],
        DescentOptions {
            ftol: REFINE_FTOL,
            xtol: REFINE_XTOL,
            max_sweeps: 500,
        },
    );
    // final pass along ln λ at fixed φ
    let phi = refined.x[1];
    let (s, v) = golden_section(
        |s| objective(s, phi),
        -LOG_SQUEEZE_LIMIT,
        LOG_SQUEEZE_LIMIT,
        REFINE_XTOL,
    );
    let (s, phi, min_h) = if v < refined.value {
        (s, phi, v)
    } else {
        (refined.x[0], phi, refined.value)
    };
    let argmin = MeasurementSeed::new(s, phi);

    // J and D as determinant ratios
    let (n, det_sum) = standard_conditional(&sf, orientation, &argmin.covariance());
    let (kept, measured) = match orientation {
        Orientation::MeasureB => (sf.a, sf.b),
        Orientation::MeasureA => (sf.b, sf.a),
    };
    let classical = (0.5 * (kept * kept * det_sum / n).ln()).max(0.0);
    let discord = (0.5 * (measured * measured * n / (det_sum * sf.det())).ln()).max(0.0);
    Ok(OracleResult {
        discord,
        classical,
        argmin,
        min_conditional_entropy: min_h,
    })
}

/// `(I, J, D)` for a standard-form state, measuring `B`.
///
/// Uses the closed forms inside the `a = b`, `|c| = |d|` family and the
/// measurement oracle elsewhere.
pub fn correlation_triple(sf: &StandardForm) -> Result<CorrelationTriple> {
    correlation_triple_oriented(sf, Orientation::MeasureB)
}

pub fn correlation_triple_oriented(sf: &StandardForm, orientation: Orientation) -> Result<CorrelationTriple> {
    let mutual_info = mutual_information(sf)?;
    if sf.is_symmetric_family() {
        return Ok(CorrelationTriple {
            mutual_info,
            classical: classical_correlations_closed(sf)?,
            discord: discord_closed(sf)?,
        });
    }
    let oracle = discord_oracle_oriented(&CovarianceMatrix2::from(*sf), orientation)?;
    Ok(CorrelationTriple {
        mutual_info,
        classical: oracle.classical,
        discord: oracle.discord,
    })
}

/// Rényi-2 entropy of the marginal of one subsystem.
pub fn marginal_entropy(cm: &CovarianceMatrix2, which: Subsystem) -> Result<f64> {
    renyi2_entropy_single(&marginal(cm, which))
}
