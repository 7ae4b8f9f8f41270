use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("{operation} needs a superconducting material, got {material}")]
    NotSuperconductor {
        operation: &'static str,
        material: &'static str,
    },

    #[error("{operation} is undefined for a perfect conductor")]
    PerfectConductor { operation: &'static str },

    #[error("{operation} needs T < T_c (T = {temperature_k} K, T_c = {tc_k} K)")]
    AboveTransition {
        operation: &'static str,
        temperature_k: f64,
        tc_k: f64,
    },

    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

/// Adaptive quadrature ran out of its subdivision budget.
#[derive(Debug, Clone, PartialEq, Error)]
#[error(
    "quadrature did not converge after {subdivisions} subdivisions \
     (partial value {partial}, error estimate {error_re:e} re / {error_im:e} im)"
)]
pub struct QuadratureError {
    pub partial: Complex64,
    pub error_re: f64,
    pub error_im: f64,
    pub subdivisions: usize,
}

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(invalid(
            name,
            format!("must be finite and > 0, got {value}"),
        ))
    }
}

pub(crate) fn require_non_negative(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(invalid(
            name,
            format!("must be finite and >= 0, got {value}"),
        ))
    }
}
