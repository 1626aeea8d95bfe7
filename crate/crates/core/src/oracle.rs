//! Brute-force quadrature used to check every closed form in the crate.
//!
//! Nothing here calls the closed-form slit amplitudes, norms or overlaps it is
//! meant to validate: slit amplitudes are integrated from the kernel and the
//! free packet, overlaps and norms from sampled wave functions.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::slit::{propagator_kernel, DiffractedState, Slit, SlitGeometry};
use crate::twoparticle::{joint_density, Statistics, TwoParticleSystem};
use crate::wavepacket::{free_evolution_coefficients, PacketParams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Integrands are truncated where their Gaussian envelope falls below
    /// this fraction of its peak.
    pub truncation_threshold: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            truncation_threshold: 1e-14,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |name, value, reason| Err(Error::InvalidParameter { name, value, reason });
        if self.abs_tol.is_nan() || self.abs_tol <= 0.0 {
            return bad("abs_tol", self.abs_tol, "must be positive");
        }
        if self.rel_tol.is_nan() || self.rel_tol <= 0.0 {
            return bad("rel_tol", self.rel_tol, "must be positive");
        }
        if !(self.truncation_threshold > 0.0 && self.truncation_threshold < 1.0) {
            return bad("truncation_threshold", self.truncation_threshold, "must lie in (0, 1)");
        }
        if self.max_subdivisions == 0 {
            return bad("max_subdivisions", 0.0, "must be at least 1");
        }
        Ok(())
    }

    /// `ln(1 / truncation_threshold)`: how many e-folds of the envelope to keep.
    fn efolds(&self) -> f64 {
        -self.truncation_threshold.ln()
    }

    /// Half-width `R` where `exp(-a R² + d R)` drops to the threshold.
    pub fn envelope_radius(&self, a: f64, d: f64) -> f64 {
        let d = d.abs();
        (d + (d * d + 4.0 * a * self.efolds()).sqrt()) / (2.0 * a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: Complex64,
    pub error: f64,
    pub subdivisions: usize,
    pub evaluations: usize,
}

// Gauss–Kronrod 10/21 abscissae and weights on [-1, 1] (positive half).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Oscillatory integrands can fool a single rule on the whole interval.
const INITIAL_PANELS: usize = 8;

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    /// Error already at the roundoff floor; bisecting further cannot help.
    settled: bool,
}

fn gauss_kronrod<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = Complex64::default();
    let mut abs_sum = fc.norm() * WGK[10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kronrod += (f1 + f2) * WGK[j];
        abs_sum += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).norm();
    let floor = 50.0 * f64::EPSILON * abs_sum * half.abs();
    Panel {
        a,
        b,
        value,
        error: error.max(floor),
        settled: error <= floor,
    }
}

/// Neumaier-compensated sum of complex terms.
fn compensated_sum<I: IntoIterator<Item = Complex64>>(terms: I) -> Complex64 {
    fn add(sum: &mut f64, comp: &mut f64, v: f64) {
        let t = *sum + v;
        if sum.abs() >= v.abs() {
            *comp += (*sum - t) + v;
        } else {
            *comp += (v - t) + *sum;
        }
        *sum = t;
    }
    let (mut re, mut re_c, mut im, mut im_c) = (0.0, 0.0, 0.0, 0.0);
    for z in terms {
        add(&mut re, &mut re_c, z.re);
        add(&mut im, &mut im_c, z.im);
    }
    Complex64::new(re + re_c, im + im_c)
}

fn total(panels: &[Panel]) -> (Complex64, f64) {
    let mut sorted: Vec<&Panel> = panels.iter().collect();
    sorted.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = compensated_sum(sorted.iter().map(|p| p.value));
    let error = sorted.iter().map(|p| p.error).sum();
    (value, error)
}

/// Globally adaptive Gauss–Kronrod integration of a complex integrand.
///
/// The interval is split into a few equal panels; the panel with the largest
/// error estimate is then bisected until the summed estimate is below
/// `max(abs_tol, rel_tol·|I|)` or every panel has hit the roundoff floor.
/// Results are bit-reproducible for a given integrand and spec.
pub fn integrate_1d<F>(mut f: F, interval: (f64, f64), spec: &QuadratureSpec) -> Result<Quadrature>
where
    F: FnMut(f64) -> Complex64,
{
    spec.validate()?;
    let (lo, hi) = interval;
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "interval",
            value: if lo.is_finite() { hi } else { lo },
            reason: "bounds must be finite",
        });
    }
    if lo == hi {
        return Ok(Quadrature {
            value: Complex64::default(),
            error: 0.0,
            subdivisions: 0,
            evaluations: 0,
        });
    }

    let width = (hi - lo) / INITIAL_PANELS as f64;
    let mut panels: Vec<Panel> = (0..INITIAL_PANELS)
        .map(|i| {
            let a = lo + width * i as f64;
            let b = if i + 1 == INITIAL_PANELS { hi } else { a + width };
            gauss_kronrod(&mut f, a, b)
        })
        .collect();
    let mut subdivisions = 0;

    loop {
        let (value, error) = total(&panels);
        let target = spec.abs_tol.max(spec.rel_tol * value.norm());
        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.settled)
            .max_by(|(_, p), (_, q)| p.error.total_cmp(&q.error))
            .map(|(i, _)| i);

        let evaluations = 21 * panels.len() + 21 * subdivisions;
        let done = Quadrature {
            value,
            error,
            subdivisions,
            evaluations,
        };
        if error <= target {
            return Ok(done);
        }
        let Some(worst) = worst else {
            // Everything is at roundoff; this is as good as f64 gets.
            return Ok(done);
        };
        if subdivisions >= spec.max_subdivisions {
            return Err(Error::Convergence {
                estimate: value,
                error,
                subdivisions,
            });
        }
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        panels.push(gauss_kronrod(&mut f, p.a, mid));
        panels.push(gauss_kronrod(&mut f, mid, p.b));
        subdivisions += 1;
    }
}

/// Analytic continuation of the Gaussian mode distribution to complex `k`.
pub fn mode_amplitude_complex(k: Complex64, sigma: f64) -> Complex64 {
    (4.0 * PI).powf(0.25) / sigma.sqrt() * (-k * k / (2.0 * sigma * sigma)).exp()
}

/// Fourier synthesis `(2π)^{-1} ∫ f(k) exp(i(kx - k²τ/2)) dk` of the free
/// packet.
///
/// The integrand is entire, so the contour is moved to `Im k = κ` with κ the
/// imaginary part of the stationary point of the exponent. On the real axis
/// the tails of the packet come out of cancellations between O(1) samples;
/// on the shifted line the integrand is never larger than the result.
pub fn free_packet_by_synthesis(x: f64, tau: f64, sigma: f64, spec: &QuadratureSpec) -> Result<Quadrature> {
    crate::error::positive("sigma", sigma)?;
    crate::error::non_negative("tau", tau)?;
    let s2 = sigma * sigma;
    // exponent -a k² + i x k with a = (1 + iσ²τ)/2σ²; stationary at i x / 2a.
    let a = Complex64::new(1.0, s2 * tau) / (2.0 * s2);
    let saddle = Complex64::new(0.0, x) / (2.0 * a);
    let kappa = saddle.im;
    let half_width = 12.0 * sigma;
    integrate_1d(
        |t| {
            let k = Complex64::new(t, kappa);
            let phase = Complex64::i() * (k * x - k * k * tau / 2.0);
            mode_amplitude_complex(k, sigma) * phase.exp() / (2.0 * PI)
        },
        (saddle.re - half_width, saddle.re + half_width),
        spec,
    )
}

/// Direct integration of the Gaussian-slit propagation integral
/// `∫ dx_s w(x_s) K(x, x_s) ψ(x_s, t_s)` for one slit.
pub fn slit_amplitude_by_quadrature(
    x: f64,
    p: &PacketParams,
    g: &SlitGeometry,
    slit: Slit,
    spec: &QuadratureSpec,
) -> Result<Quadrature> {
    let free = free_evolution_coefficients(p.tau_s(), p.sigma())?;
    let tau_d = p.tau_d();
    propagator_kernel(x, 0.0, tau_d)?;
    let center = g.center(slit);
    let radius = spec.envelope_radius(1.0 / (2.0 * g.b() * g.b()), 0.0);
    integrate_1d(
        |xs| {
            // tau_d validated above
            let k = propagator_kernel(x, xs, tau_d).unwrap_or_default();
            k * free.amplitude(xs) * g.weight(xs, slit)
        },
        (center - radius, center + radius),
        spec,
    )
}

/// Truncation radius around the origin for integrals of `|ψ|²`-like products
/// of the given states.
fn state_radius(states: &[&DiffractedState], spec: &QuadratureSpec) -> f64 {
    states
        .iter()
        .map(|s| spec.envelope_radius(2.0 * s.coeffs.alpha, 2.0 * s.coeffs.delta))
        .fold(0.0, f64::max)
}

/// `⟨a|b⟩ = ∫ a*(x) b(x) dx` by quadrature over sampled wave functions.
pub fn overlap_by_quadrature(a: &DiffractedState, b: &DiffractedState, spec: &QuadratureSpec) -> Result<Quadrature> {
    let r = state_radius(&[a, b], spec);
    integrate_1d(|x| a.amplitude(x).conj() * b.amplitude(x), (-r, r), spec)
}

/// `∫ |ψ|² dx` by quadrature.
pub fn norm_by_quadrature(s: &DiffractedState, spec: &QuadratureSpec) -> Result<Quadrature> {
    let r = state_radius(&[s], spec);
    integrate_1d(|x| Complex64::from(s.amplitude(x).norm_sqr()), (-r, r), spec)
}

/// `∬ P(x, y) dx dy` by iterated quadrature. The inner integral runs at ten
/// times tighter tolerance than the outer one.
pub fn density_normalization_2d(
    sys: &TwoParticleSystem,
    stat: Statistics,
    spec: &QuadratureSpec,
) -> Result<Quadrature> {
    let r = state_radius(&[&sys.psi, &sys.phi], spec);
    let inner_spec = QuadratureSpec {
        abs_tol: spec.abs_tol / 10.0,
        rel_tol: spec.rel_tol / 10.0,
        ..*spec
    };
    let mut failure = None;
    let outer = integrate_1d(
        |x| {
            if failure.is_some() {
                return Complex64::default();
            }
            let inner = integrate_1d(
                |y| match joint_density(x, y, sys, stat) {
                    Ok(v) => Complex64::from(v),
                    Err(e) => {
                        failure.get_or_insert(e);
                        Complex64::default()
                    }
                },
                (-r, r),
                &inner_spec,
            );
            match inner {
                Ok(q) => q.value,
                Err(e) => {
                    failure.get_or_insert(e);
                    Complex64::default()
                }
            }
        },
        (-r, r),
        spec,
    );
    match failure {
        Some(e) => Err(e),
        None => outer,
    }
}
