use proptest::prelude::*;

use twoslit::slit::{slit_amplitude, slit_beam_coefficients};
use twoslit::wavepacket::free_evolution_coefficients;
use twoslit::{
    diffracted_state, free_packet, joint_density, Error, PacketParams, Slit, SlitGeometry, Statistics,
    TwoParticleSystem,
};

fn setup(sigma: f64, sigma_bar: f64, b: f64, x0: f64, tau_s: f64, tau_d: f64) -> TwoParticleSystem {
    let g = SlitGeometry::new(b, x0).unwrap();
    let psi = diffracted_state(&PacketParams::new(sigma, tau_s, tau_d).unwrap(), &g).unwrap();
    let phi = diffracted_state(&PacketParams::new(sigma_bar, tau_s, tau_d).unwrap(), &g).unwrap();
    TwoParticleSystem::new(psi, phi).unwrap()
}

fn stat() -> impl Strategy<Value = Statistics> {
    prop::sample::select(Statistics::ALL.to_vec())
}

/// `None` for a fermion pair too close to identical to normalize.
fn density(x: f64, y: f64, sys: &TwoParticleSystem, stat: Statistics) -> Option<f64> {
    match joint_density(x, y, sys, stat) {
        Ok(v) => Some(v),
        Err(Error::DegenerateFermion { .. }) => None,
        Err(e) => panic!("{e}"),
    }
}

proptest! {
    #[test]
    fn free_packet_is_even(x in -6.0..6.0f64, tau in 0.0..3.0f64, sigma in 0.2..5.0f64) {
        prop_assert_eq!(free_packet(x, tau, sigma).unwrap(), free_packet(-x, tau, sigma).unwrap());
    }

    #[test]
    fn free_packet_spreads(t1 in 0.0..3.0f64, dt in 1e-3..3.0f64, sigma in 0.2..5.0f64) {
        let a = free_evolution_coefficients(t1, sigma).unwrap();
        let b = free_evolution_coefficients(t1 + dt, sigma).unwrap();
        prop_assert!(b.position_variance() > a.position_variance());
        // |C|² μ^{1/2} is conserved.
        let conserved = |c: &twoslit::wavepacket::FreeEvolutionCoefficients| c.c.norm_sqr() * c.mu.sqrt();
        prop_assert!((conserved(&a) - conserved(&b)).abs() <= 1e-13 * conserved(&a));
    }

    #[test]
    fn beam_coefficient_identities(
        sigma in 0.2..5.0f64, b in 0.03..0.5f64, x0 in 0.1..1.5f64,
        tau_s in 0.01..2.0f64, tau_d in 0.01..2.0f64,
    ) {
        let g = SlitGeometry::new(b, x0).unwrap();
        let p = PacketParams::new(sigma, tau_s, tau_d).unwrap();
        let c = slit_beam_coefficients(&p, &g, Slit::A).unwrap();
        prop_assert!(c.alpha > 0.0);
        prop_assert!(c.d_coef > 0.0 && c.f_coef < 0.0);
        // α/β = γ/δ = D/F
        let scale = (c.alpha * c.delta).abs().max((c.beta * c.gamma).abs());
        prop_assert!((c.alpha * c.delta - c.beta * c.gamma).abs() <= 1e-14 * scale);
        prop_assert!((c.alpha * c.f_coef - c.beta * c.d_coef).abs() <= 1e-14 * (c.alpha * c.f_coef).abs());
    }

    #[test]
    fn slit_b_mirrors_slit_a(
        x in -3.0..3.0f64, sigma in 0.2..5.0f64, b in 0.03..0.5f64, x0 in 0.1..1.5f64, tau in 0.01..2.0f64,
    ) {
        let g = SlitGeometry::new(b, x0).unwrap();
        let p = PacketParams::new(sigma, tau, tau).unwrap();
        let a = slit_beam_coefficients(&p, &g, Slit::A).unwrap();
        let bb = slit_beam_coefficients(&p, &g, Slit::B).unwrap();
        let (u, v) = (slit_amplitude(x, &bb), slit_amplitude(-x, &a));
        prop_assert!((u - v).norm() <= 1e-13 * v.norm().max(f64::MIN_POSITIVE));
    }

    #[test]
    fn densities_are_symmetric_and_non_negative(
        x in -3.0..3.0f64, y in -3.0..3.0f64, sigma_bar in 0.2..6.0f64, stat in stat(),
    ) {
        let sys = setup(1.0, sigma_bar, 0.1, 0.4, 0.2, 0.2);
        if let Some(p) = density(x, y, &sys, stat) {
            prop_assert!(p >= 0.0);
            prop_assert_eq!(Some(p), density(y, x, &sys, stat));
            let q = density(x, y, &sys.relabeled(), stat).unwrap();
            prop_assert!((p - q).abs() <= 1e-12 * p.max(1e-300));
        }
    }

    #[test]
    fn overlap_is_bounded(
        sigma in 0.2..5.0f64, sigma_bar in 0.2..5.0f64, b in 0.05..0.3f64, x0 in 0.2..1.0f64,
        tau_s in 0.05..1.0f64, tau_d in 0.05..1.0f64,
    ) {
        let sys = setup(sigma, sigma_bar, b, x0, tau_s, tau_d);
        prop_assert!(sys.overlap_sq() <= 1.0 + 1e-12);
        prop_assert!(sys.overlap_sq() >= 0.0);
    }
}

#[test]
fn fermions_vanish_on_the_diagonal_everywhere() {
    let sys = setup(1.0, 3.0, 0.1, 0.4, 0.2, 0.2);
    for i in -30..=30 {
        let x = i as f64 / 10.0;
        assert_eq!(joint_density(x, x, &sys, Statistics::Fermion).unwrap(), 0.0);
    }
}
