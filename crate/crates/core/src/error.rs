use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("beam is not normalizable (alpha = {alpha})")]
    NonNormalizable { alpha: f64 },

    /// Fermion pair whose overlap is so close to one that the antisymmetrized
    /// state is numerically 0/0.
    #[error("degenerate fermion state: |<psi|phi>|^2 = {overlap_sq:.17e}, 1 - |<psi|phi>|^2 below 1e-12")]
    DegenerateFermion { overlap_sq: f64 },

    #[error("joint density {value:e} is negative beyond roundoff at ({x}, {y})")]
    NegativeDensity { x: f64, y: f64, value: f64 },

    #[error(
        "quadrature did not converge after {subdivisions} subdivisions \
         (estimate {estimate}, error {error:e})"
    )]
    Convergence {
        estimate: Complex64,
        error: f64,
        subdivisions: usize,
    },
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and positive",
        })
    }
}

pub(crate) fn non_negative(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and non-negative",
        })
    }
}
