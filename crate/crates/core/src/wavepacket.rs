//! Multi-mode Gaussian packet and its free evolution up to the slit plane.
//!
//! The packet is the Fourier synthesis of a Gaussian mode distribution of
//! width `sigma` centred at zero wavenumber. Time only ever enters through the
//! reduced combination `tau = hbar * t / m` (μm²), so no mass or Planck
//! constant appears anywhere in the crate.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{non_negative, positive, Result};

/// One particle's physical description.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketParams {
    sigma: f64,
    tau_s: f64,
    tau_d: f64,
}

impl PacketParams {
    /// `sigma` is the mode width [μm⁻¹], `tau_s` the reduced flight time to the
    /// slits and `tau_d` the reduced flight time from slits to detector [μm²].
    pub fn new(sigma: f64, tau_s: f64, tau_d: f64) -> Result<Self> {
        Ok(Self {
            sigma: positive("sigma", sigma)?,
            tau_s: non_negative("tau_s", tau_s)?,
            tau_d: positive("tau_d", tau_d)?,
        })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn tau_s(&self) -> f64 {
        self.tau_s
    }

    pub fn tau_d(&self) -> f64 {
        self.tau_d
    }

    /// Same flight times, different mode width.
    pub fn with_sigma(&self, sigma: f64) -> Result<Self> {
        Self::new(sigma, self.tau_s, self.tau_d)
    }
}

/// Envelope prefactor `c` [μm^{-1/2}] and spreading factor `mu` of a freely
/// evolved packet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeEvolutionCoefficients {
    pub c: Complex64,
    pub mu: f64,
    sigma: f64,
    tau: f64,
}

impl FreeEvolutionCoefficients {
    /// Packet amplitude at `x` [μm].
    pub fn amplitude(&self, x: f64) -> Complex64 {
        let s2 = self.sigma * self.sigma;
        let exponent = Complex64::new(-s2 * x * x, s2 * s2 * x * x * self.tau) / self.mu;
        self.c * exponent.exp()
    }

    /// `∫|ψ|² dx` evaluated in closed form; one for every valid input.
    pub fn norm_sq(&self) -> f64 {
        self.c.norm_sqr() * (PI * self.mu / (2.0 * self.sigma * self.sigma)).sqrt()
    }

    /// Second moment `⟨x²⟩` of the position density.
    pub fn position_variance(&self) -> f64 {
        self.mu / (4.0 * self.sigma * self.sigma)
    }
}

/// Gaussian mode distribution `f(k) = (4π)^{1/4} σ^{-1/2} exp(-k²/2σ²)`.
pub fn mode_amplitude(k: f64, sigma: f64) -> Result<f64> {
    let sigma = positive("sigma", sigma)?;
    Ok((4.0 * PI).powf(0.25) / sigma.sqrt() * (-k * k / (2.0 * sigma * sigma)).exp())
}

/// `C(τ) = π^{-1/4} (1/σ + iστ)^{-1/2}` on the principal branch and
/// `μ(τ) = 2(1 + σ⁴τ²)`.
pub fn free_evolution_coefficients(tau: f64, sigma: f64) -> Result<FreeEvolutionCoefficients> {
    let sigma = positive("sigma", sigma)?;
    let tau = non_negative("tau", tau)?;
    let c = PI.powf(-0.25) * Complex64::new(1.0 / sigma, sigma * tau).sqrt().inv();
    let mu = 2.0 * (1.0 + sigma.powi(4) * tau * tau);
    Ok(FreeEvolutionCoefficients { c, mu, sigma, tau })
}

/// Free packet `C(τ) exp((-σ²x² + iσ⁴x²τ)/μ(τ))` at position `x`.
pub fn free_packet(x: f64, tau: f64, sigma: f64) -> Result<Complex64> {
    Ok(free_evolution_coefficients(tau, sigma)?.amplitude(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{integrate_1d, QuadratureSpec};

    #[test]
    fn mode_amplitude_peak_and_parity() {
        let peak = mode_amplitude(0.0, 1.0).unwrap();
        assert!((peak - (4.0 * PI).powf(0.25)).abs() < 1e-15);
        assert!((peak - 1.882_792_527_553_43).abs() < 1e-12);
        assert_eq!(mode_amplitude(1.0, 1.0).unwrap(), mode_amplitude(-1.0, 1.0).unwrap());
        assert!(mode_amplitude(30.0, 1.0).unwrap() >= 0.0);
    }

    #[test]
    fn mode_distribution_integrates_to_two_pi() {
        let spec = QuadratureSpec::default();
        let q = integrate_1d(
            |k| Complex64::from(mode_amplitude(k, 1.0).unwrap().powi(2)),
            (-12.0, 12.0),
            &spec,
        )
        .unwrap();
        assert!((q.value.re - 2.0 * PI).abs() < 1e-10, "{}", q.value);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(mode_amplitude(0.0, 0.0).is_err());
        assert!(mode_amplitude(0.0, -1.0).is_err());
        assert!(free_evolution_coefficients(-0.1, 1.0).is_err());
        assert!(free_evolution_coefficients(0.1, f64::NAN).is_err());
        assert!(PacketParams::new(1.0, 0.2, 0.0).is_err());
        assert!(PacketParams::new(1.0, 0.0, 0.2).is_ok());
    }

    #[test]
    fn coefficients_at_zero_and_reference_time() {
        let c0 = free_evolution_coefficients(0.0, 1.0).unwrap();
        assert!((c0.c - Complex64::from(0.751_125_544_464_942_5)).norm() < 1e-15);
        assert_eq!(c0.mu, 2.0);

        let c = free_evolution_coefficients(0.2, 1.0).unwrap();
        assert!((c.mu - 2.08).abs() < 1e-15);
        assert!((free_packet(0.0, 0.0, 1.0).unwrap().re - 0.751_125_544_464_942_5).abs() < 1e-15);
    }

    #[test]
    fn norm_identity_holds_in_closed_form() {
        for &(tau, sigma) in &[(0.0, 1.0), (0.2, 1.0), (0.2, 4.0), (3.0, 0.3), (0.05, 2.0)] {
            let c = free_evolution_coefficients(tau, sigma).unwrap();
            assert!((c.norm_sq() - 1.0).abs() < 1e-12, "tau={tau} sigma={sigma}");
            assert!(c.mu >= 2.0);
        }
    }

    #[test]
    fn norm_conserved_by_quadrature() {
        let spec = QuadratureSpec::default();
        for &(tau, sigma) in &[(0.0, 1.0), (0.2, 1.0), (0.2, 2.0), (1.0, 0.5), (0.2, 4.0)] {
            let c = free_evolution_coefficients(tau, sigma).unwrap();
            let r = 1.1 * (c.position_variance() * 2.0 * 32.0).sqrt();
            let q = integrate_1d(|x| Complex64::from(c.amplitude(x).norm_sqr()), (-r, r), &spec).unwrap();
            assert!((q.value.re - 1.0).abs() < 1e-10, "tau={tau} sigma={sigma}: {}", q.value);
        }
    }
}
