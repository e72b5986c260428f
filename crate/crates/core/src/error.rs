use thiserror::Error;

/// Errors raised by the state, correlation and simulation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("covariance matrix is not symmetric (max asymmetry {0:e})")]
    NonSymmetric(f64),

    #[error("symplectic spectrum is complex (discriminant {0:e})")]
    ComplexEigenvalue(f64),

    #[error("state is unphysical: {0}")]
    Unphysical(String),

    #[error("closed form only covers a = b, |c| = |d| (got a={a}, b={b}, c={c}, d={d})")]
    OutOfFamily { a: f64, b: f64, c: f64, d: f64 },

    #[error("conditional covariance update is singular (det {0:e})")]
    SingularUpdate(f64),

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("numerical instability: {0}")]
    NumericalInstability(String),

    #[error("need at least {required} trials, got {got}")]
    InsufficientTrials { required: usize, got: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
