//! Two-particle states, overlaps and joint detection densities.
//!
//! A pair is described by two diffracted single-particle states `ψ` (width σ)
//! and `φ` (width σ̄). Distinguishable particles are in the product state,
//! identical ones in the (anti)symmetrized state
//!
//! ```text
//! Ψ(x, y) = N_Ψ (ψ(x)φ(y) ± ψ(y)φ(x)),   N_Ψ = (2 ± 2|⟨ψ|φ⟩|²)^{-1/2}
//! ```
//!
//! with the upper sign for bosons.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::compensated::{ComplexDd, Dd};
use crate::error::{Error, Result};
use crate::slit::{DiffractedState, Slit};

/// Smallest `1 - |⟨ψ|φ⟩|²` for which a fermion pair is still evaluated.
pub const FERMION_DEGENERACY: f64 = 1e-12;

/// Negative densities down to this value are treated as roundoff.
pub const NEGATIVE_ROUNDOFF: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statistics {
    Distinguishable,
    Boson,
    Fermion,
}

impl Statistics {
    pub const ALL: [Statistics; 3] = [Statistics::Distinguishable, Statistics::Boson, Statistics::Fermion];

    /// `+1` for bosons, `-1` for fermions, `None` for distinguishable pairs.
    pub fn exchange_sign(self) -> Option<f64> {
        match self {
            Statistics::Distinguishable => None,
            Statistics::Boson => Some(1.0),
            Statistics::Fermion => Some(-1.0),
        }
    }

    /// CSV column name.
    pub fn column(self) -> &'static str {
        match self {
            Statistics::Distinguishable => "P_dist",
            Statistics::Boson => "P_boson",
            Statistics::Fermion => "P_fermion",
        }
    }
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistics::Distinguishable => "distinguishable",
            Statistics::Boson => "boson",
            Statistics::Fermion => "fermion",
        })
    }
}

impl FromStr for Statistics {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "distinguishable" | "dist" | "d" => Ok(Statistics::Distinguishable),
            "boson" | "bosons" | "b" => Ok(Statistics::Boson),
            "fermion" | "fermions" | "f" => Ok(Statistics::Fermion),
            other => Err(format!(
                "unknown statistics `{other}` (expected dist, boson or fermion)"
            )),
        }
    }
}

/// Exponent arguments of the four Gaussian integrals in `⟨ψ|φ⟩`, one per
/// pair of slits (AA, AB, BA, BB), plus the shared quadratic coefficient.
fn overlap_exponents(psi: &DiffractedState, phi: &DiffractedState) -> (Complex64, [Complex64; 4]) {
    let (a, b) = (&psi.coeffs, &phi.coeffs);
    let quad = Complex64::new(a.alpha + b.alpha, a.beta - b.beta);
    let t = [
        Complex64::new(a.delta + b.delta, -(a.gamma - b.gamma)),
        Complex64::new(a.delta - b.delta, -(a.gamma + b.gamma)),
        Complex64::new(b.delta - a.delta, a.gamma + b.gamma),
        Complex64::new(-(a.delta + b.delta), a.gamma - b.gamma),
    ];
    (quad, t)
}

/// The four exponentials whose sum is proportional to `⟨ψ|φ⟩`. Terms one and
/// four coincide, as do two and three.
pub fn overlap_terms(psi: &DiffractedState, phi: &DiffractedState) -> [Complex64; 4] {
    let (quad, t) = overlap_exponents(psi, phi);
    t.map(|t| (t * t / (4.0 * quad)).exp())
}

/// `⟨ψ|φ⟩` in closed form.
pub fn pair_overlap(psi: &DiffractedState, phi: &DiffractedState) -> Complex64 {
    let (quad, _) = overlap_exponents(psi, phi);
    let sum: Complex64 = overlap_terms(psi, phi).iter().sum();
    let scale = psi.coeffs.prefactor.conj() * phi.coeffs.prefactor * (psi.norm * phi.norm);
    scale * (Complex64::from(PI) / quad).sqrt() * sum
}

/// Joint normalization `N_Ψ` for a given squared overlap.
pub fn joint_norm(overlap_sq: f64, stat: Statistics) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&overlap_sq) {
        return Err(Error::InvalidParameter {
            name: "overlap_sq",
            value: overlap_sq,
            reason: "must lie in [0, 1]",
        });
    }
    let o = overlap_sq.clamp(0.0, 1.0);
    match stat {
        Statistics::Distinguishable => Ok(1.0),
        Statistics::Boson => Ok(1.0 / (2.0 + 2.0 * o).sqrt()),
        Statistics::Fermion => {
            if 1.0 - o < FERMION_DEGENERACY {
                Err(Error::DegenerateFermion { overlap_sq })
            } else {
                Ok(1.0 / (2.0 - 2.0 * o).sqrt())
            }
        }
    }
}

/// Initial overlap `2σσ̄/(σ² + σ̄²)` of the two mode distributions.
pub fn initial_overlap(sigma: f64, sigma_bar: f64) -> Result<f64> {
    let s = crate::error::positive("sigma", sigma)?;
    let sb = crate::error::positive("sigma_bar", sigma_bar)?;
    Ok(2.0 * s * sb / (s * s + sb * sb))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoParticleSystem {
    pub psi: DiffractedState,
    pub phi: DiffractedState,
    pub overlap: Complex64,
}

impl TwoParticleSystem {
    /// Both particles must cross the same slits with the same slit-to-detector
    /// flight time; only their mode widths (and times to the slits) differ.
    pub fn new(psi: DiffractedState, phi: DiffractedState) -> Result<Self> {
        if psi.geometry != phi.geometry {
            return Err(Error::InvalidParameter {
                name: "geometry",
                value: phi.geometry.b(),
                reason: "both particles must see the same slits",
            });
        }
        if psi.params.tau_d() != phi.params.tau_d() {
            return Err(Error::InvalidParameter {
                name: "tau_d",
                value: phi.params.tau_d(),
                reason: "both particles must share the slit-to-detector time",
            });
        }
        let overlap = pair_overlap(&psi, &phi);
        Ok(Self { psi, phi, overlap })
    }

    pub fn overlap_sq(&self) -> f64 {
        self.overlap.norm_sqr()
    }

    pub fn joint_norm(&self, stat: Statistics) -> Result<f64> {
        joint_norm(self.overlap_sq(), stat)
    }

    /// The same pair with the particle labels exchanged.
    pub fn relabeled(&self) -> Self {
        Self {
            psi: self.phi,
            phi: self.psi,
            overlap: self.overlap.conj(),
        }
    }
}

fn checked_density(x: f64, y: f64, value: f64) -> Result<f64> {
    if value >= 0.0 {
        Ok(value)
    } else if value >= -NEGATIVE_ROUNDOFF {
        Ok(0.0)
    } else {
        Err(Error::NegativeDensity { x, y, value })
    }
}

/// `P_dis(x, y) = ½|ψ(x)φ(y)|² + ½|ψ(y)φ(x)|²`.
fn distinguishable_density(x: f64, y: f64, sys: &TwoParticleSystem) -> f64 {
    let (psi, phi) = (&sys.psi, &sys.phi);
    0.5 * (psi.amplitude(x) * phi.amplitude(y)).norm_sqr() + 0.5 * (psi.amplitude(y) * phi.amplitude(x)).norm_sqr()
}

/// Joint detection density `P(x, y)` [μm⁻²], evaluated directly from the
/// two-particle wave function.
pub fn joint_density(x: f64, y: f64, sys: &TwoParticleSystem, stat: Statistics) -> Result<f64> {
    let Some(sign) = stat.exchange_sign() else {
        return Ok(distinguishable_density(x, y, sys));
    };
    let n = sys.joint_norm(stat)?;
    let (psi, phi) = (&sys.psi, &sys.phi);
    let direct = psi.amplitude(x) * phi.amplitude(y);
    let exchanged = psi.amplitude(y) * phi.amplitude(x);
    checked_density(x, y, (n * (direct + sign * exchanged)).norm_sqr())
}

/// Sum of the sixteen exchange terms
/// `Σ Re(ψ*_{i1}(x) φ*_{i2}(y) ψ_{i3}(y) φ_{i4}(x))` over slit labels.
pub fn exchange_sum(x: f64, y: f64, sys: &TwoParticleSystem) -> f64 {
    let beams = SampledBeams::new(x, y, sys);
    beams.exchange_sum().to_f64()
}

/// Normalized beams `N ψ_i`, `N φ_i` at both detector positions.
struct SampledBeams {
    psi_x: [ComplexDd; 2],
    psi_y: [ComplexDd; 2],
    phi_x: [ComplexDd; 2],
    phi_y: [ComplexDd; 2],
}

impl SampledBeams {
    fn new(x: f64, y: f64, sys: &TwoParticleSystem) -> Self {
        let sample = |s: &DiffractedState, at: f64| Slit::BOTH.map(|slit| ComplexDd::from(s.reduced_beam(at, slit)));
        Self {
            psi_x: sample(&sys.psi, x),
            psi_y: sample(&sys.psi, y),
            phi_x: sample(&sys.phi, x),
            phi_y: sample(&sys.phi, y),
        }
    }

    fn distinguishable(&self) -> Dd {
        let total = |b: &[ComplexDd; 2]| b[0] + b[1];
        let direct = total(&self.psi_x) * total(&self.phi_y);
        let swapped = total(&self.psi_y) * total(&self.phi_x);
        Dd::from(0.5) * (direct.norm_sqr() + swapped.norm_sqr())
    }

    fn exchange_sum(&self) -> Dd {
        let mut sum = Dd::default();
        for a in &self.psi_x {
            for b in &self.phi_y {
                for c in &self.psi_y {
                    for d in &self.phi_x {
                        sum = sum + (a.conj() * b.conj() * *c * *d).re;
                    }
                }
            }
        }
        sum
    }
}

/// Joint density assembled as direct plus exchange contributions,
/// `2N_Ψ² P_dis ± 2N_Ψ² Σ Re(…)`.
///
/// For nearly overlapping fermions the two contributions cancel to a few
/// digits, so the assembly runs in double-double arithmetic.
pub fn joint_density_from_terms(x: f64, y: f64, sys: &TwoParticleSystem, stat: Statistics) -> Result<f64> {
    let beams = SampledBeams::new(x, y, sys);
    let p_dis = beams.distinguishable();
    let Some(sign) = stat.exchange_sign() else {
        return Ok(p_dis.to_f64());
    };
    let n = Dd::from(sys.joint_norm(stat)?);
    let two_n2 = Dd::from(2.0) * n * n;
    let exchange = Dd::from(sign) * beams.exchange_sum();
    checked_density(x, y, (two_n2 * (p_dis + exchange)).to_f64())
}

/// Closed forms for one detector at the origin: returns
/// `(P_dis(0, y), Σ Re(ψ*_{i1}(0) φ*_{i2}(y) ψ_{i3}(y) φ_{i4}(0)))`.
pub fn fixed_detector_terms(y: f64, sys: &TwoParticleSystem) -> (f64, f64) {
    let (a, b) = (&sys.psi.coeffs, &sys.phi.coeffs);
    let scale = (a.prefactor.norm() * b.prefactor.norm() * sys.psi.norm * sys.phi.norm).powi(2);
    let ga = (-2.0 * a.alpha * y * y).exp();
    let gb = (-2.0 * b.alpha * y * y).exp();
    let p_dis = scale
        * (2.0 * ga * ((-2.0 * a.delta * y).exp() + (2.0 * a.delta * y).exp())
            + 2.0 * gb * ((-2.0 * b.delta * y).exp() + (2.0 * b.delta * y).exp())
            + 4.0 * ga * (2.0 * a.gamma * y).cos()
            + 4.0 * gb * (2.0 * b.gamma * y).cos());

    let chirp = (a.beta - b.beta) * y * y;
    let dsum = (a.delta + b.delta) * y;
    let ddiff = (a.delta - b.delta) * y;
    let gdiff = (b.gamma - a.gamma) * y;
    let gsum = (b.gamma + a.gamma) * y;
    let exchange = scale
        * (-(a.alpha + b.alpha) * y * y).exp()
        * 4.0
        * ((-dsum).exp() * (chirp + gdiff).cos()
            + dsum.exp() * (chirp - gdiff).cos()
            + ddiff.exp() * (chirp + gsum).cos()
            + (-ddiff).exp() * (chirp - gsum).cos());
    (p_dis, exchange)
}

/// Sampled joint density `P(x_fixed, y)` for several statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionPattern {
    pub x_fixed: f64,
    pub y: Vec<f64>,
    pub columns: Vec<(Statistics, Vec<f64>)>,
}

impl DetectionPattern {
    pub fn column(&self, stat: Statistics) -> Option<&[f64]> {
        self.columns.iter().find(|(s, _)| *s == stat).map(|(_, v)| v.as_slice())
    }
}

/// Pattern with one detector held at the origin, from the specialised
/// closed forms.
pub fn fixed_detector_pattern(
    y_grid: &[f64],
    sys: &TwoParticleSystem,
    stats: &[Statistics],
) -> Result<DetectionPattern> {
    let norms = stats
        .iter()
        .map(|&s| sys.joint_norm(s).map(|n| (s, n)))
        .collect::<Result<Vec<_>>>()?;
    let terms: Vec<(f64, f64)> = y_grid.iter().map(|&y| fixed_detector_terms(y, sys)).collect();
    let columns = norms
        .into_iter()
        .map(|(stat, n)| {
            let values = y_grid
                .iter()
                .zip(&terms)
                .map(|(&y, &(p_dis, exchange))| match stat.exchange_sign() {
                    None => Ok(p_dis),
                    Some(sign) => checked_density(0.0, y, 2.0 * n * n * (p_dis + sign * exchange)),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((stat, values))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DetectionPattern {
        x_fixed: 0.0,
        y: y_grid.to_vec(),
        columns,
    })
}

/// Pattern for an arbitrary fixed detector position. Uses the origin closed
/// forms when `x_fixed` is zero and the general density otherwise.
pub fn detection_pattern(
    x_fixed: f64,
    y_grid: &[f64],
    sys: &TwoParticleSystem,
    stats: &[Statistics],
) -> Result<DetectionPattern> {
    if x_fixed == 0.0 {
        return fixed_detector_pattern(y_grid, sys, stats);
    }
    let columns = stats
        .iter()
        .map(|&stat| {
            let values = y_grid
                .iter()
                .map(|&y| joint_density(x_fixed, y, sys, stat))
                .collect::<Result<Vec<_>>>()?;
            Ok((stat, values))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DetectionPattern {
        x_fixed,
        y: y_grid.to_vec(),
        columns,
    })
}

/// `steps` points from `min` to `max` inclusive. A grid symmetric about zero
/// is exactly symmetric in floating point.
pub fn uniform_grid(min: f64, max: f64, steps: usize) -> Vec<f64> {
    if steps < 2 {
        return vec![min];
    }
    let last = (steps - 1) as f64;
    (0..steps)
        .map(|i| (min * (last - i as f64) + max * i as f64) / last)
        .collect()
}
