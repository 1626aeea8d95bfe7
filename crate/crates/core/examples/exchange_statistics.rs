//! Full joint density P(x, y) for the three kinds of pairs, showing the
//! antibunching hole of fermions along x = y and its absence for bosons.

use twoslit::twoparticle::joint_density_from_terms;
use twoslit::{diffracted_state, joint_density, PacketParams, SlitGeometry, Statistics, TwoParticleSystem};

fn main() -> twoslit::Result<()> {
    let slits = SlitGeometry::new(0.1, 0.4)?;
    let psi = diffracted_state(&PacketParams::new(1.0, 0.2, 0.2)?, &slits)?;
    let phi = diffracted_state(&PacketParams::new(3.0, 0.2, 0.2)?, &slits)?;
    let pair = TwoParticleSystem::new(psi, phi)?;
    for stat in Statistics::ALL {
        println!("{stat}: N = {:.6}", pair.joint_norm(stat)?);
    }

    println!("\nx [um]  y [um]  P_dist      P_boson     P_fermion   fermion via exchange terms");
    for (x, y) in [(0.0, 0.0), (0.5, 0.5), (1.0, 1.0), (0.0, 1.0), (1.0, -1.0), (-2.0, 0.5)] {
        let p = |s| joint_density(x, y, &pair, s);
        println!(
            "{x:<6}  {y:<6}  {:.4e}  {:.4e}  {:.4e}  {:.4e}",
            p(Statistics::Distinguishable)?,
            p(Statistics::Boson)?,
            p(Statistics::Fermion)?,
            joint_density_from_terms(x, y, &pair, Statistics::Fermion)?
        );
    }

    let same = TwoParticleSystem::new(psi, psi)?;
    match joint_density(0.0, 1.0, &same, Statistics::Fermion) {
        Ok(_) => println!("\nidentical fermions normalized unexpectedly"),
        Err(e) => println!("\nidentical fermions: {e}"),
    }
    Ok(())
}
