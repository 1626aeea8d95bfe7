//! Gaussian-slit diffraction of a single particle.
//!
//! Each slit is modelled by a Gaussian transmission weight
//! `exp(-(x_s ∓ x0)² / 2b²)` extended over the whole axis, which turns the
//! propagation integral through the slit into a Gaussian integral with a
//! closed-form result. After the slits the beam from slit A reads
//!
//! ```text
//! ψ_A(x) = 𝒞 · exp(iHx²/2) · exp(-(α - iβ)x²) · exp(-(δ + iγ)x)
//! ```
//!
//! and the beam from slit B is the same expression with `G`, `γ` and `δ`
//! negated.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{positive, Error, Result};
use crate::wavepacket::{free_evolution_coefficients, PacketParams};

/// Below this size (μm or μm²) a slit width or flight time overflows the
/// Gaussian exponents.
pub const MIN_SCALE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slit {
    /// Centred at `+x0`.
    A,
    /// Centred at `-x0`.
    B,
}

impl Slit {
    pub const BOTH: [Slit; 2] = [Slit::A, Slit::B];

    /// Sign of the slit centre.
    pub fn sign(self) -> f64 {
        match self {
            Slit::A => 1.0,
            Slit::B => -1.0,
        }
    }

    pub fn other(self) -> Slit {
        match self {
            Slit::A => Slit::B,
            Slit::B => Slit::A,
        }
    }
}

/// Two Gaussian slits of half-width parameter `b` centred at `±x0` (μm).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlitGeometry {
    b: f64,
    x0: f64,
}

impl SlitGeometry {
    pub fn new(b: f64, x0: f64) -> Result<Self> {
        let b = positive("b", b)?;
        if b < MIN_SCALE {
            return Err(Error::InvalidParameter {
                name: "b",
                value: b,
                reason: "slit width below 1e-9 overflows the Gaussian exponents",
            });
        }
        Ok(Self {
            b,
            x0: positive("x0", x0)?,
        })
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    /// Slits whose centres sit further apart than their widths.
    pub fn is_well_separated(&self) -> bool {
        self.x0 > self.b
    }

    /// Centre of the given slit.
    pub fn center(&self, slit: Slit) -> f64 {
        slit.sign() * self.x0
    }

    /// Transmission weight of `slit` at `x_s`.
    pub fn weight(&self, x_s: f64, slit: Slit) -> f64 {
        let d = x_s - self.center(slit);
        (-d * d / (2.0 * self.b * self.b)).exp()
    }
}

/// Coefficients of one post-slit beam.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamCoefficients {
    pub slit: Slit,
    /// D [μm⁻²]
    pub d_coef: f64,
    /// F [μm⁻²]
    pub f_coef: f64,
    /// G [μm⁻¹], positive for slit A
    pub g_coef: f64,
    /// H = 1/τ_d [μm⁻²]
    pub h_coef: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    /// 𝒞 [μm^{-1/2}]
    pub prefactor: Complex64,
}

impl BeamCoefficients {
    /// Coefficients of the beam leaving the opposite slit.
    pub fn mirrored(&self) -> Self {
        Self {
            slit: self.slit.other(),
            g_coef: -self.g_coef,
            gamma: -self.gamma,
            delta: -self.delta,
            ..*self
        }
    }

    /// Common quadratic phase `exp(iHx²/2)` shared by all beams.
    pub fn common_phase(&self, x: f64) -> Complex64 {
        Complex64::from_polar(1.0, 0.5 * self.h_coef * x * x)
    }

    /// Beam amplitude without the common phase. Densities only ever need
    /// this part.
    pub fn reduced_amplitude(&self, x: f64) -> Complex64 {
        let exponent = Complex64::new(-self.alpha * x * x - self.delta * x, self.beta * x * x - self.gamma * x);
        self.prefactor * exponent.exp()
    }

    pub fn amplitude(&self, x: f64) -> Complex64 {
        self.common_phase(x) * self.reduced_amplitude(x)
    }
}

/// Free-particle kernel in reduced time, `(2πiτ)^{-1/2} exp(i(x - x_s)²/2τ)`.
pub fn propagator_kernel(x: f64, x_s: f64, tau_d: f64) -> Result<Complex64> {
    let tau_d = positive("tau_d", tau_d)?;
    let d = x - x_s;
    let norm = Complex64::new(0.0, 2.0 * PI * tau_d).sqrt().inv();
    Ok(norm * Complex64::from_polar(1.0, d * d / (2.0 * tau_d)))
}

pub fn slit_beam_coefficients(p: &PacketParams, g: &SlitGeometry, slit: Slit) -> Result<BeamCoefficients> {
    if p.tau_d() < MIN_SCALE {
        return Err(Error::InvalidParameter {
            name: "tau_d",
            value: p.tau_d(),
            reason: "flight time below 1e-9 overflows the Gaussian exponents",
        });
    }
    let sigma = p.sigma();
    let free = free_evolution_coefficients(p.tau_s(), sigma)?;
    let b2 = g.b() * g.b();

    let d_coef = 1.0 / (2.0 * b2) + sigma * sigma / free.mu;
    let f_coef = -sigma.powi(4) * p.tau_s() / free.mu - 1.0 / (2.0 * p.tau_d());
    let g_coef = slit.sign() * g.x0() / b2;
    let h_coef = 1.0 / p.tau_d();

    let den = d_coef * d_coef + f_coef * f_coef;
    let alpha = d_coef * h_coef * h_coef / (4.0 * den);
    let beta = f_coef * h_coef * h_coef / (4.0 * den);
    let gamma = d_coef * g_coef * h_coef / (2.0 * den);
    let delta = g_coef * h_coef * f_coef / (2.0 * den);

    // e^{-x0²/2b²} and e^{G²D/4(D²+F²)} separately over/underflow for narrow
    // slits; only their product is finite.
    let exponent = Complex64::new(
        -g.x0() * g.x0() / (2.0 * b2) + g_coef * g_coef * d_coef / (4.0 * den),
        -g_coef * g_coef * f_coef / (4.0 * den),
    );
    let radicand = (Complex64::new(0.0, 2.0 * p.tau_d()) * Complex64::new(d_coef, f_coef)).inv();
    let prefactor = free.c * radicand.sqrt() * exponent.exp();

    Ok(BeamCoefficients {
        slit,
        d_coef,
        f_coef,
        g_coef,
        h_coef,
        alpha,
        beta,
        gamma,
        delta,
        prefactor,
    })
}

/// Amplitude of the beam described by `c` at `x`, common phase included.
pub fn slit_amplitude(x: f64, c: &BeamCoefficients) -> Complex64 {
    c.amplitude(x)
}

/// Normalization `N` making `N(ψ_A + ψ_B)` a unit vector; symmetric in the
/// slit labels.
pub fn single_particle_norm(c: &BeamCoefficients) -> Result<f64> {
    let a = c.alpha;
    if a.is_nan() || a <= 0.0 {
        return Err(Error::NonNormalizable { alpha: a });
    }
    let fringe = (c.delta * c.delta / (2.0 * a)).exp() + (-c.gamma * c.gamma / (2.0 * a)).exp();
    Ok((a / (2.0 * PI)).powf(0.25) / (c.prefactor.norm() * fringe.sqrt()))
}

/// A normalized single-particle state after the double slit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffractedState {
    pub params: PacketParams,
    pub geometry: SlitGeometry,
    /// Coefficients of the slit-A beam; slit B is their mirror image.
    pub coeffs: BeamCoefficients,
    pub norm: f64,
}

impl DiffractedState {
    pub fn beam(&self, slit: Slit) -> BeamCoefficients {
        match slit {
            Slit::A => self.coeffs,
            Slit::B => self.coeffs.mirrored(),
        }
    }

    /// Normalized contribution `N ψ_slit(x)` without the common phase.
    pub fn reduced_beam(&self, x: f64, slit: Slit) -> Complex64 {
        self.norm * self.beam(slit).reduced_amplitude(x)
    }

    /// `N(ψ_A(x) + ψ_B(x))` without the common phase.
    pub fn reduced_amplitude(&self, x: f64) -> Complex64 {
        self.reduced_beam(x, Slit::A) + self.reduced_beam(x, Slit::B)
    }

    /// Full wave function including the common phase.
    pub fn amplitude(&self, x: f64) -> Complex64 {
        self.coeffs.common_phase(x) * self.reduced_amplitude(x)
    }

    pub fn intensity(&self, x: f64) -> f64 {
        self.reduced_amplitude(x).norm_sqr()
    }

    /// Distance between neighbouring two-slit fringes.
    pub fn fringe_spacing(&self) -> f64 {
        PI / self.coeffs.gamma.abs()
    }
}

pub fn diffracted_state(p: &PacketParams, g: &SlitGeometry) -> Result<DiffractedState> {
    let coeffs = slit_beam_coefficients(p, g, Slit::A)?;
    let norm = single_particle_norm(&coeffs)?;
    Ok(DiffractedState {
        params: *p,
        geometry: *g,
        coeffs,
        norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1() -> (PacketParams, SlitGeometry) {
        (
            PacketParams::new(1.0, 0.2, 0.2).unwrap(),
            SlitGeometry::new(0.1, 0.4).unwrap(),
        )
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn kernel_modulus_symmetry_and_phase() {
        let k = propagator_kernel(0.3, -1.2, 0.2).unwrap();
        assert!((k.norm() - 0.892_062_058_076_385_6).abs() < 1e-14);
        assert_eq!(k, propagator_kernel(-1.2, 0.3, 0.2).unwrap());
        let k0 = propagator_kernel(0.5, 0.5, 0.2).unwrap();
        assert!((k0.arg() + PI / 4.0).abs() < 1e-14);
        assert!(propagator_kernel(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn fig1_coefficients() {
        let (p, g) = fig1();
        let c = slit_beam_coefficients(&p, &g, Slit::A).unwrap();
        // Reference values from direct substitution (D, F, G, H), then α..δ.
        assert!(close(c.d_coef, 50.480_769_230_769_23, 1e-13));
        assert!(close(c.f_coef, -2.596_153_846_153_846, 1e-13));
        assert!(close(c.g_coef, 40.0, 1e-14));
        assert!(close(c.h_coef, 5.0, 1e-14));
        assert!(close(c.alpha, 0.123_482_924_075_642_1, 1e-12));
        assert!(close(c.beta, -0.006_350_550_381_033_025, 1e-12));
        assert!(close(c.gamma, 1.975_726_785_210_274, 1e-12));
        assert!(close(c.delta, -0.101_608_806_096_528_4, 1e-12));

        let cb = slit_beam_coefficients(&p, &g, Slit::B).unwrap();
        assert_eq!(cb.alpha, c.alpha);
        assert_eq!(cb.beta, c.beta);
        assert_eq!(cb.gamma, -c.gamma);
        assert_eq!(cb.delta, -c.delta);
        assert_eq!(cb.prefactor, c.prefactor);
        assert_eq!(cb, c.mirrored());
    }

    #[test]
    fn ratio_and_sign_identities() {
        let g = SlitGeometry::new(0.1, 0.4).unwrap();
        for &sigma in &[0.1, 0.5, 1.0, 2.0, 4.0, 9.0] {
            let p = PacketParams::new(sigma, 0.2, 0.2).unwrap();
            let c = slit_beam_coefficients(&p, &g, Slit::A).unwrap();
            assert!(c.d_coef > 0.0 && c.alpha > 0.0);
            assert!((c.alpha * c.f_coef - c.beta * c.d_coef).abs() < 1e-14);
            assert!((c.gamma * c.f_coef - c.delta * c.d_coef).abs() < 1e-12);
            assert_eq!(c.beta.signum(), c.f_coef.signum());
            assert_eq!(c.delta.signum(), (c.g_coef * c.f_coef).signum());
            assert_eq!(c.gamma.signum(), c.g_coef.signum());
        }
    }

    #[test]
    fn amplitude_at_origin_is_prefactor() {
        let (p, g) = fig1();
        let c = slit_beam_coefficients(&p, &g, Slit::A).unwrap();
        assert_eq!(slit_amplitude(0.0, &c), c.prefactor);
        assert_eq!(slit_amplitude(0.0, &c.mirrored()), c.prefactor);
    }

    #[test]
    fn beam_a_peaks_behind_slit_a() {
        let (p, g) = fig1();
        let c = slit_beam_coefficients(&p, &g, Slit::A).unwrap();
        let peak = -c.delta / (2.0 * c.alpha);
        assert!((peak - 0.411_429_5).abs() < 1e-6, "{peak}");
        let m = |x: f64| slit_amplitude(x, &c).norm();
        assert!(m(peak) > m(peak - 1e-3) && m(peak) > m(peak + 1e-3));
        let expected = c.prefactor.norm() * (-c.alpha * 1.3 * 1.3 - c.delta * 1.3).exp();
        assert!((m(1.3) - expected).abs() < 1e-15);
    }

    #[test]
    fn slit_exchange_is_reflection() {
        let (p, g) = fig1();
        let c = slit_beam_coefficients(&p, &g, Slit::A).unwrap();
        for i in -20..=20 {
            let x = 0.15 * i as f64;
            let a = slit_amplitude(x, &c).norm();
            let b = slit_amplitude(-x, &c.mirrored()).norm();
            assert!((a - b).abs() <= 1e-15 * a.max(1e-300));
        }
    }

    #[test]
    fn norm_positive_and_slit_symmetric() {
        let (p, g) = fig1();
        let c = slit_beam_coefficients(&p, &g, Slit::A).unwrap();
        let n = single_particle_norm(&c).unwrap();
        assert!(n.is_finite() && n > 0.0);
        assert_eq!(n, single_particle_norm(&c.mirrored()).unwrap());

        let mut bad = c;
        bad.alpha = 0.0;
        assert_eq!(single_particle_norm(&bad), Err(Error::NonNormalizable { alpha: 0.0 }));
    }

    #[test]
    fn norm_cancels_prefactor_convention() {
        let (p, g) = fig1();
        let s = diffracted_state(&p, &g).unwrap();
        let mut rescaled = s.coeffs;
        rescaled.prefactor *= Complex64::new(3.0, -7.0);
        let n = single_particle_norm(&rescaled).unwrap();
        for &x in &[-1.7, 0.0, 0.4, 2.2] {
            let a = s.reduced_amplitude(x).norm();
            let b = n * (rescaled.reduced_amplitude(x) + rescaled.mirrored().reduced_amplitude(x)).norm();
            assert!((a - b).abs() < 1e-14 * a.max(1e-300));
        }
    }

    #[test]
    fn intensity_is_even_fringed_gaussian() {
        let (p, g) = fig1();
        let s = diffracted_state(&p, &g).unwrap();
        let c = s.coeffs;
        let scale = (s.norm * c.prefactor.norm()).powi(2);
        for i in 0..40 {
            let x = 0.1 * i as f64;
            assert!((s.intensity(x) - s.intensity(-x)).abs() <= 1e-15 * s.intensity(x).max(1e-300));
            let expected = scale
                * (-2.0 * c.alpha * x * x).exp()
                * (2.0 * (2.0 * c.delta * x).cosh() + 2.0 * (2.0 * c.gamma * x).cos());
            assert!((s.intensity(x) - expected).abs() < 1e-14);
        }
        assert!((s.fringe_spacing() - 1.590_09).abs() < 1e-4, "{}", s.fringe_spacing());
    }

    #[test]
    fn geometry_validation() {
        assert!(SlitGeometry::new(0.0, 0.4).is_err());
        assert!(SlitGeometry::new(1e-10, 0.4).is_err());
        assert!(SlitGeometry::new(0.1, -0.4).is_err());
        assert!(!SlitGeometry::new(0.5, 0.4).unwrap().is_well_separated());
        let p = PacketParams::new(1.0, 0.2, 1e-10).unwrap();
        assert!(slit_beam_coefficients(&p, &SlitGeometry::new(0.1, 0.4).unwrap(), Slit::A).is_err());
    }

    #[test]
    fn narrow_slits_stay_finite() {
        let p = PacketParams::new(1.0, 0.2, 0.2).unwrap();
        let g = SlitGeometry::new(0.01, 0.4).unwrap();
        let s = diffracted_state(&p, &g).unwrap();
        assert!(s.coeffs.prefactor.norm().is_finite() && s.coeffs.prefactor.norm() > 0.0);
        assert!(s.norm.is_finite());
    }
}
