//! Coincidence patterns with one detector at the origin, for a nearly
//! identical pair (σ̄ = 2) and a more distinguishable one (σ̄ = 4).
//!
//! `cargo run --example detection_patterns -- 4` picks σ̄.

use twoslit::twoparticle::uniform_grid;
use twoslit::{diffracted_state, fixed_detector_pattern, PacketParams, SlitGeometry, Statistics, TwoParticleSystem};

fn main() -> twoslit::Result<()> {
    let sigma_bar: f64 = std::env::args().nth(1).map_or(2.0, |s| s.parse().expect("sigma_bar"));
    let slits = SlitGeometry::new(0.1, 0.4)?;
    let psi = diffracted_state(&PacketParams::new(1.0, 0.2, 0.2)?, &slits)?;
    let phi = diffracted_state(&PacketParams::new(sigma_bar, 0.2, 0.2)?, &slits)?;
    let pair = TwoParticleSystem::new(psi, phi)?;
    println!("sigma_bar = {sigma_bar}, |<psi|phi>|^2 = {:.6}", pair.overlap_sq());

    let grid = uniform_grid(-4.0, 4.0, 33);
    let pattern = fixed_detector_pattern(&grid, &pair, &Statistics::ALL)?;
    println!("y [um]  P_dist        P_boson       P_fermion");
    for (i, y) in pattern.y.iter().enumerate() {
        let col = |s| pattern.column(s).expect("requested")[i];
        println!(
            "{y:<6}  {:.6e}  {:.6e}  {:.6e}",
            col(Statistics::Distinguishable),
            col(Statistics::Boson),
            col(Statistics::Fermion)
        );
    }

    let dev = |s| {
        let d = pattern.column(Statistics::Distinguishable).unwrap();
        let o = pattern.column(s).unwrap();
        d.iter().zip(o).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    };
    println!(
        "sup |P_boson - P_dist| = {:.3e}, sup |P_fermion - P_dist| = {:.3e}",
        dev(Statistics::Boson),
        dev(Statistics::Fermion)
    );
    Ok(())
}
