//! Two-mode Gaussian states described by their 4×4 quadrature covariance
//! matrix, with the vacuum normalised to the identity.
//!
//! A zero-mean two-mode Gaussian state is fixed by
//!
//! ```text
//!        ⎡ σ_A   σ_C ⎤
//! σ_AB = ⎢           ⎥ ,   quadrature order (x₁, p₁, x₂, p₂)
//!        ⎣ σ_Cᵀ  σ_B ⎦
//! ```
//!
//! and every such matrix can be brought by local symplectic operations to
//! the standard form `σ_A = a·I`, `σ_B = b·I`, `σ_C = diag(c, d)`. Local
//! operations leave every quantity computed in this crate unchanged, so the
//! [`StandardForm`] is the main currency of the library.

use nalgebra::{Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use crate::numeric::diff_of_products;
use crate::{Error, Result};

/// Absolute tolerance on `m - mᵀ`.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Slack allowed below the uncertainty bound `ν₋ ≥ 1`.
pub const PHYSICALITY_TOLERANCE: f64 = 1e-9;

/// Relative slack on a negative symplectic discriminant before it is
/// reported as a complex spectrum.
const DISCRIMINANT_TOLERANCE: f64 = 1e-12;

/// One side of the bipartition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

/// Standard-form parameters `(a, b, c, d)` of a two-mode covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StandardForm {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl StandardForm {
    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    /// `a = b`, `c = d`: the shape produced by the HBT model.
    pub const fn symmetric(a: f64, c: f64) -> Self {
        Self::new(a, a, c, c)
    }

    /// Two-mode squeezed vacuum with squeezing `r`; a pure state.
    pub fn two_mode_squeezed(r: f64) -> Self {
        let a = (2.0 * r).cosh();
        let c = (2.0 * r).sinh();
        Self::new(a, a, c, -c)
    }

    /// Product of two thermal modes, `(1 + 2n̄_A)·I ⊕ (1 + 2n̄_B)·I`.
    pub fn thermal_product(nbar_a: f64, nbar_b: f64) -> Self {
        Self::new(1.0 + 2.0 * nbar_a, 1.0 + 2.0 * nbar_b, 0.0, 0.0)
    }

    /// `det σ_AB = (ab − c²)(ab − d²)`.
    pub fn det(&self) -> f64 {
        diff_of_products(self.a, self.b, self.c, self.c) * diff_of_products(self.a, self.b, self.d, self.d)
    }

    /// Seralian `Δ = det σ_A + det σ_B + 2 det σ_C`.
    pub fn seralian(&self) -> f64 {
        self.a * self.a + self.b * self.b + 2.0 * self.c * self.d
    }

    /// `Δ² − 4 det σ`, rearranged as `(a² − b²)² + 4(ac + bd)(ad + bc)` so
    /// that the cancellation between the two large terms happens exactly.
    fn symplectic_discriminant(&self) -> f64 {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let s = diff_of_products(a, a, b, b);
        s * s + 4.0 * (a * c + b * d) * (a * d + b * c)
    }

    /// True when `a = b` and `|c| = |d|` to within a relative `1e-12`.
    pub fn is_symmetric_family(&self) -> bool {
        let close = |x: f64, y: f64| (x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1.0);
        close(self.a, self.b) && close(self.c.abs(), self.d.abs())
    }

    /// Full physicality check (positivity and uncertainty principle).
    pub fn validate(&self) -> Result<()> {
        CovarianceMatrix2::from(*self).validate()
    }

    pub fn is_physical(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn matrix(&self) -> Matrix4<f64> {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        #[rustfmt::skip]
        let m = Matrix4::new(
            a,   0.0, c,   0.0,
            0.0, a,   0.0, d,
            c,   0.0, b,   0.0,
            0.0, d,   0.0, b,
        );
        m
    }
}

/// Covariance matrix of a zero-mean two-mode Gaussian state.
///
/// Matrices built from a [`StandardForm`] remember it, and determinant and
/// symplectic spectrum are then evaluated from the closed forms instead of
/// an LU factorisation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix2 {
    m: Matrix4<f64>,
    form: Option<StandardForm>,
}

impl CovarianceMatrix2 {
    /// Wraps a raw matrix. No checks are performed here; use
    /// [`validate`](Self::validate) or let the consuming operation check.
    pub fn from_matrix(m: Matrix4<f64>) -> Self {
        Self { m, form: None }
    }

    /// Block-diagonal product state `σ_A ⊕ σ_B`.
    pub fn product(sigma_a: &Matrix2<f64>, sigma_b: &Matrix2<f64>) -> Self {
        let mut m = Matrix4::zeros();
        m.fixed_view_mut::<2, 2>(0, 0).copy_from(sigma_a);
        m.fixed_view_mut::<2, 2>(2, 2).copy_from(sigma_b);
        Self::from_matrix(m)
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.m
    }

    pub fn standard_form(&self) -> Option<StandardForm> {
        self.form
    }

    /// Off-diagonal block `σ_C` (rows of A, columns of B).
    pub fn cross(&self) -> Matrix2<f64> {
        self.m.fixed_view::<2, 2>(0, 2).into_owned()
    }

    pub fn max_asymmetry(&self) -> f64 {
        (self.m - self.m.transpose()).amax()
    }

    pub fn check_symmetric(&self) -> Result<()> {
        let asym = self.max_asymmetry();
        if asym > SYMMETRY_TOLERANCE || !asym.is_finite() {
            return Err(Error::NonSymmetric(asym));
        }
        Ok(())
    }

    pub fn det(&self) -> f64 {
        match self.form {
            Some(sf) => sf.det(),
            None => self.m.determinant(),
        }
    }

    /// Standard-form parameters reached by local symplectic operations.
    ///
    /// Each marginal is rescaled to `√det σ_i · I` and the transformed cross
    /// block is diagonalised by local rotations (an SVD whose reflections are
    /// absorbed into the sign of `d`).
    pub fn to_standard_form(&self) -> Result<StandardForm> {
        if let Some(sf) = self.form {
            return Ok(sf);
        }
        self.check_symmetric()?;
        let (a, s_a) = local_normaliser(&marginal(self, Subsystem::A))?;
        let (b, s_b) = local_normaliser(&marginal(self, Subsystem::B))?;
        let cross = s_a * self.cross() * s_b.transpose();
        let svd = cross.svd(true, true);
        let (u, v_t) = match (svd.u, svd.v_t) {
            (Some(u), Some(v_t)) => (u, v_t),
            _ => return Err(Error::NumericalInstability("SVD of the cross block failed".into())),
        };
        let sign = u.determinant().signum() * v_t.determinant().signum();
        Ok(StandardForm::new(
            a,
            b,
            svd.singular_values[0],
            sign * svd.singular_values[1],
        ))
    }

    /// Symmetric, positive definite and `ν₋ ≥ 1 − 1e-9`.
    pub fn validate(&self) -> Result<()> {
        self.check_symmetric()?;
        for k in 1..=4 {
            let minor = self.m.view((0, 0), (k, k)).determinant();
            if !(minor > 0.0) {
                return Err(Error::Unphysical(format!(
                    "leading principal minor of order {k} is {minor:e}"
                )));
            }
        }
        let (nu_minus, _) = symplectic_eigenvalues(self)?;
        if nu_minus < 1.0 - PHYSICALITY_TOLERANCE {
            return Err(Error::Unphysical(format!(
                "smallest symplectic eigenvalue {nu_minus} violates the uncertainty bound"
            )));
        }
        Ok(())
    }
}

impl From<StandardForm> for CovarianceMatrix2 {
    fn from(sf: StandardForm) -> Self {
        Self {
            m: sf.matrix(),
            form: Some(sf),
        }
    }
}

/// `(√det σ, S)` with `S` symplectic and `S σ Sᵀ = √det σ · I`.
fn local_normaliser(sigma: &Matrix2<f64>) -> Result<(f64, Matrix2<f64>)> {
    let eig = sigma.symmetric_eigen();
    let (l0, l1) = (eig.eigenvalues[0], eig.eigenvalues[1]);
    if !(l0 > 0.0 && l1 > 0.0) {
        return Err(Error::Unphysical(format!(
            "marginal is not positive definite (eigenvalues {l0:e}, {l1:e})"
        )));
    }
    let nu = (l0 * l1).sqrt();
    let mut q = eig.eigenvectors;
    // force det Q = +1
    if q.determinant() < 0.0 {
        q.column_mut(1).neg_mut();
    }
    let scale = Matrix2::from_diagonal(&nalgebra::Vector2::new((nu / l0).sqrt(), (nu / l1).sqrt()));
    Ok((nu, scale * q.transpose()))
}

/// Symplectic eigenvalues `(ν₋, ν₊)` of a two-mode covariance matrix.
///
/// `ν∓² = (Δ ∓ √(Δ² − 4 det σ)) / 2`, evaluated on the standard form;
/// `ν₋² = det σ / ν₊²`.
pub fn symplectic_eigenvalues(cm: &CovarianceMatrix2) -> Result<(f64, f64)> {
    cm.check_symmetric()?;
    let sf = cm.to_standard_form()?;
    let (seralian, det, disc) = (sf.seralian(), sf.det(), sf.symplectic_discriminant());
    if !(det >= 0.0) {
        return Err(Error::Unphysical(format!("determinant {det:e} is negative")));
    }
    if disc < -DISCRIMINANT_TOLERANCE * seralian * seralian || disc.is_nan() {
        return Err(Error::ComplexEigenvalue(disc));
    }
    let nu_plus_sq = 0.5 * (seralian + disc.max(0.0).sqrt());
    if !(nu_plus_sq > 0.0) {
        return Err(Error::Unphysical(format!("seralian {seralian:e} is not positive")));
    }
    let nu_minus_sq = det / nu_plus_sq;
    Ok((nu_minus_sq.sqrt(), nu_plus_sq.sqrt()))
}

/// Diagonal block belonging to one subsystem.
pub fn marginal(cm: &CovarianceMatrix2, which: Subsystem) -> Matrix2<f64> {
    let offset = match which {
        Subsystem::A => 0,
        Subsystem::B => 2,
    };
    cm.m.fixed_view::<2, 2>(offset, offset).into_owned()
}

/// Rényi-2 entropy `½ ln det σ` of a two-mode state, in nats.
pub fn renyi2_entropy(cm: &CovarianceMatrix2) -> Result<f64> {
    cm.validate()?;
    Ok(0.5 * cm.det().ln())
}

/// Rényi-2 entropy of a single-mode covariance matrix.
pub fn renyi2_entropy_single(sigma: &Matrix2<f64>) -> Result<f64> {
    let asym = (sigma[(0, 1)] - sigma[(1, 0)]).abs();
    if asym > SYMMETRY_TOLERANCE {
        return Err(Error::NonSymmetric(asym));
    }
    let det = sigma.determinant();
    if !(sigma[(0, 0)] > 0.0) || det < 1.0 - 2.0 * PHYSICALITY_TOLERANCE {
        return Err(Error::Unphysical(format!("single-mode determinant {det} below vacuum")));
    }
    Ok(0.5 * det.ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thermal_product_spectrum_is_diagonal() {
        let cm = CovarianceMatrix2::from(StandardForm::new(3.0, 3.0, 0.0, 0.0));
        let (lo, hi) = symplectic_eigenvalues(&cm).unwrap();
        assert!((lo - 3.0).abs() < 1e-14 && (hi - 3.0).abs() < 1e-14);
    }

    #[test]
    fn squeezed_vacuum_is_pure() {
        let sf = StandardForm::new(1.25, 1.25, 0.75, -0.75);
        let cm = CovarianceMatrix2::from(sf);
        let (lo, hi) = symplectic_eigenvalues(&cm).unwrap();
        assert!((lo - 1.0).abs() < 1e-14 && (hi - 1.0).abs() < 1e-14);
        assert!(renyi2_entropy(&cm).unwrap().abs() < 1e-12);
    }

    #[test]
    fn hbt_state_at_origin_saturates_uncertainty() {
        // ν∓ = a ∓ c for a = b, c = d
        let cm = CovarianceMatrix2::from(StandardForm::symmetric(21.0, 20.0));
        let (lo, hi) = symplectic_eigenvalues(&cm).unwrap();
        assert!((lo - 1.0).abs() < 1e-14, "{lo}");
        assert!((hi - 41.0).abs() < 1e-12, "{hi}");

        let sf = StandardForm::symmetric(20001.0, 20000.0);
        let (lo, _) = symplectic_eigenvalues(&sf.into()).unwrap();
        assert!((lo - 1.0).abs() < 1e-12, "{lo}");
    }

    #[test]
    fn lu_and_closed_form_paths_agree() {
        let sf = StandardForm::new(2.5, 1.7, 0.9, -0.4);
        let with_form = CovarianceMatrix2::from(sf);
        let raw = CovarianceMatrix2::from_matrix(sf.matrix());
        let (l1, h1) = symplectic_eigenvalues(&with_form).unwrap();
        let (l2, h2) = symplectic_eigenvalues(&raw).unwrap();
        assert!((l1 - l2).abs() < 1e-12 && (h1 - h2).abs() < 1e-12);
        assert!((with_form.det() - raw.det()).abs() < 1e-12);
    }

    fn local_symplectic(r: f64, phi: f64) -> Matrix2<f64> {
        let (s, c) = phi.sin_cos();
        let rot = Matrix2::new(c, -s, s, c);
        Matrix2::new(r.exp(), 0.0, 0.0, (-r).exp()) * rot
    }

    #[test]
    fn raw_matrices_reduce_to_their_standard_form() {
        for sf in [
            StandardForm::new(2.5, 1.7, 0.9, -0.4),
            StandardForm::new(3.0, 2.0, 1.1, 0.7),
            StandardForm::two_mode_squeezed(0.8),
        ] {
            let mut s = Matrix4::zeros();
            s.fixed_view_mut::<2, 2>(0, 0).copy_from(&local_symplectic(0.7, 0.3));
            s.fixed_view_mut::<2, 2>(2, 2).copy_from(&local_symplectic(-0.4, 2.1));
            let m = s * sf.matrix() * s.transpose();
            let m = 0.5 * (m + m.transpose());
            let raw = CovarianceMatrix2::from_matrix(m);
            let back = raw.to_standard_form().unwrap();
            assert!(
                (back.a - sf.a).abs() < 1e-12 && (back.b - sf.b).abs() < 1e-12,
                "{back:?}"
            );
            assert!((back.c * back.d - sf.c * sf.d).abs() < 1e-12, "{back:?}");
            assert!((back.c.abs().max(back.d.abs()) - sf.c.abs().max(sf.d.abs())).abs() < 1e-12);
            let (l1, h1) = symplectic_eigenvalues(&raw).unwrap();
            let (l2, h2) = symplectic_eigenvalues(&sf.into()).unwrap();
            assert!((l1 - l2).abs() < 1e-12 && (h1 - h2).abs() < 1e-12);
        }
    }

    #[test]
    fn entropy_examples() {
        let vacuum = CovarianceMatrix2::from_matrix(Matrix4::identity());
        assert_eq!(renyi2_entropy(&vacuum).unwrap(), 0.0);

        let thermal = CovarianceMatrix2::from(StandardForm::new(21.0, 21.0, 0.0, 0.0));
        assert!((renyi2_entropy(&thermal).unwrap() - 2.0 * 21f64.ln()).abs() < 1e-14);

        let hbt = CovarianceMatrix2::from(StandardForm::symmetric(21.0, 20.0));
        assert!((renyi2_entropy(&hbt).unwrap() - 41f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn marginal_blocks() {
        let cm = CovarianceMatrix2::from(StandardForm::symmetric(21.0, 20.0));
        assert_eq!(marginal(&cm, Subsystem::A), Matrix2::new(21.0, 0.0, 0.0, 21.0));
        let cm = CovarianceMatrix2::from(StandardForm::symmetric(1.02, 0.02));
        assert_eq!(marginal(&cm, Subsystem::B), Matrix2::new(1.02, 0.0, 0.0, 1.02));
        let cm = CovarianceMatrix2::from(StandardForm::new(1.25, 1.25, 0.75, -0.75));
        assert_eq!(marginal(&cm, Subsystem::A), Matrix2::new(1.25, 0.0, 0.0, 1.25));
        assert_eq!(cm.cross(), Matrix2::new(0.75, 0.0, 0.0, -0.75));
    }

    #[test]
    fn rejects_asymmetric_input() {
        let mut m = Matrix4::identity();
        m[(0, 1)] = 1e-6;
        let cm = CovarianceMatrix2::from_matrix(m);
        assert!(matches!(symplectic_eigenvalues(&cm), Err(Error::NonSymmetric(_))));
    }

    #[test]
    fn rejects_states_below_vacuum() {
        let squeezed_too_far = StandardForm::new(1.0, 1.0, 0.5, 0.5);
        assert!(matches!(squeezed_too_far.validate(), Err(Error::Unphysical(_))));
        let not_positive = StandardForm::new(1.0, 1.0, 2.0, 2.0);
        assert!(not_positive.validate().is_err());
        let half_vacuum = CovarianceMatrix2::from_matrix(Matrix4::identity() * 0.5);
        assert!(matches!(renyi2_entropy(&half_vacuum), Err(Error::Unphysical(_))));
    }

    #[test]
    fn single_mode_entropy() {
        assert_eq!(renyi2_entropy_single(&Matrix2::identity()).unwrap(), 0.0);
        let s = renyi2_entropy_single(&(Matrix2::identity() * 3.0)).unwrap();
        assert!((s - 3f64.ln()).abs() < 1e-15);
        assert!(renyi2_entropy_single(&(Matrix2::identity() * 0.9)).is_err());
    }
}
