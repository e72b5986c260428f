//! Rényi-2 correlation measures for two-mode Gaussian states and their
//! application to Hanbury Brown–Twiss (HBT) intensity interferometry.
//!
//! The crate is organised bottom-up:
//!
//! - [`gaussian`]: covariance matrices, physicality, symplectic spectrum and
//!   the Rényi-2 entropy `S₂ = ½ ln det σ`.
//! - [`correlations`]: mutual information, Gaussian classical correlations
//!   and Gaussian discord, both in closed form and through an explicit
//!   minimisation over pure Gaussian measurements.
//! - [`special`]: Bessel `J₁` and the `jinc` kernel.
//! - [`optics`]: the HBT model mapping a detector offset to a standard-form
//!   covariance matrix and to the normalised intensity correlation.
//! - [`weaklight`]: the low-intensity agreement between normalised mutual
//!   information and normalised intensity correlations.
//! - [`mc`]: a Monte Carlo thermal-field sampler that estimates `g² − 1`
//!   independently of the analytic kernel.
//!
//! Conventions: quadratures are ordered `(x₁, p₁, x₂, p₂)`, the vacuum
//! covariance matrix is the identity, and every logarithm is natural.

#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod correlations;
mod error;
pub mod gaussian;
pub mod mc;
mod numeric;
pub mod optics;
pub mod optimize;
pub mod special;
pub mod weaklight;

pub use correlations::{correlation_triple, CorrelationTriple, MeasurementSeed, Orientation};
pub use error::{Error, Result};
pub use gaussian::{CovarianceMatrix2, StandardForm, Subsystem};
pub use optics::{HbtParams, Kernel, ScanPoint};
