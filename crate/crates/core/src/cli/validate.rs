//! Cross-checks of every closed form against an independent route.
//!
//! Each check reports the measured discrepancy next to its tolerance. The
//! individual measurements are public so tests can run them on perturbed
//! inputs.

use std::io::{self, Write};

use num_complex::Complex64;

use super::csv::num;
use super::RunConfig;
use crate::error::{Error, Result};
use crate::oracle::{
    density_normalization_2d, free_packet_by_synthesis, norm_by_quadrature, overlap_by_quadrature,
    slit_amplitude_by_quadrature, QuadratureSpec,
};
use crate::slit::{diffracted_state, BeamCoefficients, DiffractedState, SlitGeometry};
use crate::twoparticle::{
    fixed_detector_pattern, initial_overlap, joint_density, joint_density_from_terms, overlap_terms, uniform_grid,
    Statistics, TwoParticleSystem,
};
use crate::wavepacket::{free_packet, PacketParams};

pub const FOURIER_TOL: f64 = 1e-8;
pub const SLIT_TOL: f64 = 1e-6;
pub const NORM_TOL: f64 = 1e-8;
pub const OVERLAP_TOL: f64 = 1e-8;
pub const FORMULA_TOL: f64 = 1e-12;
pub const DENSITY_2D_TOL: f64 = 1e-6;
pub const PAULI_TOL: f64 = 1e-14;

/// Widths at which the final overlap is tabulated, with the reference values
/// quoted for them.
pub const REFERENCE_FINAL_OVERLAP: [(f64, f64); 4] = [(0.1, 0.99), (0.5, 0.99), (2.0, 0.99), (4.0, 0.39)];
/// Reference initial overlaps quoted for the same widths.
pub const REFERENCE_INITIAL_OVERLAP: [(f64, f64); 4] = [(0.1, 0.2), (0.5, 0.48), (2.0, 0.47), (4.0, 0.12)];

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Pass,
    Fail,
    /// The configuration legitimately has no value here (degenerate fermion
    /// pair); reported, not counted as a failure.
    ExpectedError(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub outcome: Outcome,
}

impl Check {
    fn measure(name: impl Into<String>, measured: Result<f64>, tolerance: f64) -> Self {
        let name = name.into();
        match measured {
            Ok(m) => Check {
                name,
                measured: m,
                tolerance,
                outcome: if m <= tolerance { Outcome::Pass } else { Outcome::Fail },
            },
            Err(e @ Error::DegenerateFermion { .. }) => Check {
                name,
                measured: f64::NAN,
                tolerance,
                outcome: Outcome::ExpectedError(e.to_string()),
            },
            Err(e) => Check {
                name: format!("{name} [{e}]"),
                measured: f64::NAN,
                tolerance,
                outcome: Outcome::Fail,
            },
        }
    }

    pub fn passed(&self) -> bool {
        !matches!(self.outcome, Outcome::Fail)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count()
    }

    pub fn write(&self, w: &mut dyn Write) -> io::Result<()> {
        for c in &self.checks {
            let status = match &c.outcome {
                Outcome::Pass => "PASS".to_string(),
                Outcome::Fail => "FAIL".to_string(),
                Outcome::ExpectedError(why) => format!("PASS (expected error: {why})"),
            };
            writeln!(
                w,
                "{status:<6} {:<62} measured {:>10.3e}  tol {:.0e}",
                c.name, c.measured, c.tolerance
            )?;
        }
        for n in &self.notes {
            writeln!(w, "{n}")?;
        }
        writeln!(w, "{} checks, {} failed", self.checks.len(), self.failures())
    }
}

/// Max relative error of the closed-form free packet against its Fourier
/// synthesis, over `xs` and every `(tau, sigma)` pair.
pub fn fourier_error(xs: &[f64], taus: &[f64], sigmas: &[f64]) -> Result<f64> {
    let spec = QuadratureSpec {
        abs_tol: f64::MIN_POSITIVE,
        rel_tol: 1e-13,
        ..QuadratureSpec::default()
    };
    let mut worst: f64 = 0.0;
    for &sigma in sigmas {
        for &tau in taus {
            for &x in xs {
                let closed = free_packet(x, tau, sigma)?;
                let q = free_packet_by_synthesis(x, tau, sigma, &spec)?;
                worst = worst.max((q.value - closed).norm() / closed.norm());
            }
        }
    }
    Ok(worst)
}

/// Discrepancies between a closed-form beam and direct integration of the
/// slit propagation integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlitComparison {
    /// Max `||q| - |c|| / |c|`.
    pub modulus: f64,
    /// Max deviation of `arg(q/c)` from its value at the first point.
    pub relative_phase: f64,
    /// Max `|q - c| / |c|`; nonzero only if the prefactor convention carries
    /// a constant factor.
    pub absolute: f64,
}

impl SlitComparison {
    pub fn worst(&self) -> f64 {
        self.modulus.max(self.relative_phase)
    }
}

pub fn slit_error(
    coeffs: &BeamCoefficients,
    params: &PacketParams,
    geometry: &SlitGeometry,
    xs: &[f64],
    spec: &QuadratureSpec,
) -> Result<SlitComparison> {
    let mut cmp = SlitComparison {
        modulus: 0.0,
        relative_phase: 0.0,
        absolute: 0.0,
    };
    let mut reference: Option<Complex64> = None;
    for &x in xs {
        let closed = coeffs.amplitude(x);
        let q = slit_amplitude_by_quadrature(x, params, geometry, coeffs.slit, spec)?.value;
        cmp.modulus = cmp.modulus.max((q.norm() - closed.norm()).abs() / closed.norm());
        cmp.absolute = cmp.absolute.max((q - closed).norm() / closed.norm());
        let ratio = q / closed;
        let r0 = *reference.get_or_insert(ratio);
        cmp.relative_phase = cmp.relative_phase.max((ratio / r0).arg().abs());
    }
    Ok(cmp)
}

/// `|∫|ψ|² - 1|` by quadrature.
pub fn norm_error(state: &DiffractedState, spec: &QuadratureSpec) -> Result<f64> {
    Ok((norm_by_quadrature(state, spec)?.value.re - 1.0).abs())
}

/// Closed-form overlap, quadrature overlap, and their relative difference.
pub fn overlap_comparison(
    psi: &DiffractedState,
    phi: &DiffractedState,
    spec: &QuadratureSpec,
) -> Result<(Complex64, Complex64, f64)> {
    let closed = crate::twoparticle::pair_overlap(psi, phi);
    let q = overlap_by_quadrature(psi, phi, spec)?.value;
    Ok((closed, q, (closed - q).norm() / q.norm()))
}

/// Deterministic scatter of `n` points over `[-r, r]²` (additive recurrence
/// with golden-ratio and plastic-number increments).
pub fn scatter_points(n: usize, r: f64) -> Vec<(f64, f64)> {
    let g1 = 0.618_033_988_749_894_9;
    let g2 = 0.754_877_666_246_692_7;
    (1..=n)
        .map(|i| {
            let u = (0.5 + g1 * i as f64).fract();
            let v = (0.5 + g2 * i as f64).fract();
            (r * (2.0 * u - 1.0), r * (2.0 * v - 1.0))
        })
        .collect()
}

/// `|a - b| / max(|b|, floor)`.
fn rel(a: f64, b: f64, floor: f64) -> f64 {
    (a - b).abs() / b.abs().max(floor)
}

/// Max relative difference between the direct-plus-exchange assembly and
/// the direct expansion of the (anti)symmetrized wave function.
pub fn assembly_error(sys: &TwoParticleSystem, stat: Statistics, points: &[(f64, f64)]) -> Result<f64> {
    let direct = points
        .iter()
        .map(|&(x, y)| joint_density(x, y, sys, stat))
        .collect::<Result<Vec<_>>>()?;
    let mut worst: f64 = 0.0;
    for (&(x, y), &d) in points.iter().zip(&direct) {
        worst = worst.max(rel(joint_density_from_terms(x, y, sys, stat)?, d, f64::MIN_POSITIVE));
    }
    Ok(worst)
}

/// Max difference between the fixed-detector closed forms and the general
/// density at `x = 0`, relative to `max(|P|, peak of the column)`.
pub fn fixed_detector_error(sys: &TwoParticleSystem, stat: Statistics, grid: &[f64]) -> Result<f64> {
    let pattern = fixed_detector_pattern(grid, sys, &[stat])?;
    let fast = &pattern.columns[0].1;
    let general = grid
        .iter()
        .map(|&y| joint_density(0.0, y, sys, stat))
        .collect::<Result<Vec<_>>>()?;
    let peak = general.iter().cloned().fold(0.0, f64::max);
    Ok(fast
        .iter()
        .zip(&general)
        .map(|(&a, &b)| rel(a, b, peak))
        .fold(0.0, f64::max))
}

/// Max `|P(y) - P(-y)|` relative to the column peak, for a grid symmetric
/// about zero.
pub fn parity_error(sys: &TwoParticleSystem, stat: Statistics, grid: &[f64]) -> Result<f64> {
    let pattern = fixed_detector_pattern(grid, sys, &[stat])?;
    let col = &pattern.columns[0].1;
    let peak = col.iter().cloned().fold(0.0, f64::max);
    let n = col.len();
    Ok((0..n)
        .map(|i| (col[i] - col[n - 1 - i]).abs() / peak)
        .fold(0.0, f64::max))
}

/// Max fermion density on the diagonal `x = y`.
pub fn pauli_error(sys: &TwoParticleSystem, grid: &[f64]) -> Result<f64> {
    grid.iter()
        .map(|&y| joint_density(y, y, sys, Statistics::Fermion))
        .try_fold(0.0, |m: f64, v| v.map(|v| m.max(v)))
}

/// Max change of the fixed-detector pattern when the particle labels are
/// swapped, relative to the column peak.
pub fn relabel_error(sys: &TwoParticleSystem, stat: Statistics, grid: &[f64]) -> Result<f64> {
    let a = fixed_detector_pattern(grid, sys, &[stat])?;
    let swapped = TwoParticleSystem::new(sys.phi, sys.psi)?;
    let b = fixed_detector_pattern(grid, &swapped, &[stat])?;
    let (a, b) = (&a.columns[0].1, &b.columns[0].1);
    let peak = a.iter().cloned().fold(0.0, f64::max);
    Ok(a.iter().zip(b).map(|(x, y)| (x - y).abs() / peak).fold(0.0, f64::max))
}

/// `|∬P - 1|` by iterated quadrature.
pub fn density_2d_error(sys: &TwoParticleSystem, stat: Statistics, spec: &QuadratureSpec) -> Result<f64> {
    sys.joint_norm(stat)?;
    Ok((density_normalization_2d(sys, stat, spec)?.value.re - 1.0).abs())
}

/// Relative mismatch between the coinciding terms of the closed-form overlap.
pub fn overlap_term_pairing(sys: &TwoParticleSystem) -> f64 {
    let t = overlap_terms(&sys.psi, &sys.phi);
    let scale = t.iter().map(|z| z.norm()).fold(0.0, f64::max);
    ((t[0] - t[3]).norm().max((t[1] - t[2]).norm())) / scale
}

/// Run every check for the configuration.
pub fn run(cfg: &RunConfig) -> Report {
    let mut report = Report::default();
    let spec = QuadratureSpec::default();
    let checks = &mut report.checks;

    let xs: Vec<f64> = uniform_grid(-5.0, 5.0, 41);
    checks.push(Check::measure(
        "free packet vs Fourier synthesis (max rel)",
        fourier_error(&xs, &[0.0, cfg.tau_s], &[cfg.sigma, cfg.sigma_bar]),
        FOURIER_TOL,
    ));

    let setup = (|| -> Result<_> {
        let g = cfg.geometry()?;
        let p = cfg.particle(cfg.sigma)?;
        let pb = cfg.particle(cfg.sigma_bar)?;
        Ok((g, p, pb, diffracted_state(&p, &g)?, diffracted_state(&pb, &g)?))
    })();
    let (g, p, pb, psi, phi) = match setup {
        Ok(v) => v,
        Err(e) => {
            checks.push(Check::measure("build diffracted states", Err(e), 0.0));
            return report;
        }
    };

    let slit_xs = uniform_grid(-2.0, 2.0, 21);
    let mut constant_discrepancy: f64 = 0.0;
    for (label, params, state) in [("psi", &p, &psi), ("phi", &pb, &phi)] {
        for slit in crate::slit::Slit::BOTH {
            let cmp = slit_error(&state.beam(slit), params, &g, &slit_xs, &spec);
            if let Ok(c) = &cmp {
                constant_discrepancy = constant_discrepancy.max(c.absolute);
            }
            checks.push(Check::measure(
                format!("{label} slit {slit:?} closed form vs slit integral (modulus, phase)"),
                cmp.map(|c| c.worst()),
                SLIT_TOL,
            ));
        }
        checks.push(Check::measure(
            format!("{label} single-particle norm vs quadrature"),
            norm_error(state, &spec),
            NORM_TOL,
        ));
    }
    report.notes.push(format!(
        "note: largest |closed - quadrature|/|closed| of post-slit beams including absolute phase: {:.3e}",
        constant_discrepancy
    ));

    let sys = match TwoParticleSystem::new(psi, phi) {
        Ok(s) => s,
        Err(e) => {
            checks.push(Check::measure("build two-particle system", Err(e), 0.0));
            return report;
        }
    };

    let mut overlap_widths = vec![cfg.sigma_bar];
    overlap_widths.extend([0.5, 2.0, 4.0].iter().filter(|&&w| w != cfg.sigma_bar));
    for w in overlap_widths {
        let m = cfg
            .particle(w)
            .and_then(|pw| diffracted_state(&pw, &g))
            .and_then(|other| overlap_comparison(&psi, &other, &spec))
            .map(|(_, _, d)| d);
        checks.push(Check::measure(
            format!("overlap closed form vs quadrature, sigma_bar = {w}"),
            m,
            OVERLAP_TOL,
        ));
    }
    checks.push(Check::measure(
        "overlap exponential terms pair up (1=4, 2=3)",
        Ok(overlap_term_pairing(&sys)),
        FORMULA_TOL,
    ));

    let points = scatter_points(50, 3.0);
    let grid = cfg.y_grid();
    let symmetric = uniform_grid(
        -cfg.y_max.abs().max(cfg.y_min.abs()),
        cfg.y_max.abs().max(cfg.y_min.abs()),
        cfg.y_steps | 1,
    );
    for stat in Statistics::ALL {
        checks.push(Check::measure(
            format!("{stat}: direct+exchange assembly vs |Psi|^2 (50 pts)"),
            assembly_error(&sys, stat, &points),
            FORMULA_TOL,
        ));
        checks.push(Check::measure(
            format!("{stat}: fixed-detector closed form vs general density"),
            fixed_detector_error(&sys, stat, &grid),
            FORMULA_TOL,
        ));
        checks.push(Check::measure(
            format!("{stat}: pattern parity y -> -y"),
            parity_error(&sys, stat, &symmetric),
            FORMULA_TOL,
        ));
        checks.push(Check::measure(
            format!("{stat}: pattern invariant under particle relabeling"),
            relabel_error(&sys, stat, &grid),
            FORMULA_TOL,
        ));
        checks.push(Check::measure(
            format!("{stat}: total probability by 2D quadrature"),
            density_2d_error(&sys, stat, &spec),
            DENSITY_2D_TOL,
        ));
    }
    checks.push(Check::measure(
        "fermion density on the diagonal x = y",
        pauli_error(&sys, &grid),
        PAULI_TOL,
    ));

    overlap_tables(cfg, &g, &psi, &spec, &mut report.notes);
    report
}

fn overlap_tables(
    cfg: &RunConfig,
    g: &SlitGeometry,
    psi: &DiffractedState,
    spec: &QuadratureSpec,
    notes: &mut Vec<String>,
) {
    notes.push(format!(
        "initial overlap 2*sigma*sigma_bar/(sigma^2+sigma_bar^2) at sigma = {} vs reference values:",
        cfg.sigma
    ));
    notes.push("  sigma_bar  formula      reference  status".into());
    for (sb, reference) in REFERENCE_INITIAL_OVERLAP {
        let f = initial_overlap(cfg.sigma, sb).unwrap_or(f64::NAN);
        let status = if (f - reference).abs() <= 0.01 {
            "agrees"
        } else {
            "DIFFERS"
        };
        notes.push(format!("  {sb:<9}  {f:<11.4}  {reference:<9}  {status}"));
    }

    notes.push("final overlap |<psi|phi>|^2: closed form vs quadrature vs reference values:".into());
    notes.push("  sigma_bar  closed form         quadrature          reference  status".into());
    for (sb, reference) in REFERENCE_FINAL_OVERLAP {
        let row = cfg
            .particle(sb)
            .and_then(|pb| diffracted_state(&pb, g))
            .and_then(|phi| overlap_comparison(psi, &phi, spec));
        match row {
            Ok((closed, q, d)) => {
                let tol = if reference < 0.5 { 0.02 } else { 0.01 };
                let status = if (closed.norm_sqr() - reference).abs() <= tol {
                    "agrees".to_string()
                } else {
                    format!("DIFFERS (closed form and quadrature agree to {d:.1e})")
                };
                notes.push(format!(
                    "  {sb:<9}  {:<18}  {:<18}  {reference:<9}  {status}",
                    num(closed.norm_sqr()),
                    num(q.norm_sqr())
                ));
            }
            Err(e) => notes.push(format!("  {sb:<9}  error: {e}")),
        }
    }
}
