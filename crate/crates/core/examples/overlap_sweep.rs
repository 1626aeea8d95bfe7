//! Overlap of the two particles before and after the slits as the second
//! mode width σ̄ varies.

use twoslit::{diffracted_state, initial_overlap, PacketParams, SlitGeometry, TwoParticleSystem};

fn main() -> twoslit::Result<()> {
    let slits = SlitGeometry::new(0.1, 0.4)?;
    let sigma = 1.0;
    let psi = diffracted_state(&PacketParams::new(sigma, 0.2, 0.2)?, &slits)?;

    println!("sigma_bar  initial   final |<psi|phi>|^2");
    for sigma_bar in [0.1, 0.25, 0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 8.0] {
        let phi = diffracted_state(&PacketParams::new(sigma_bar, 0.2, 0.2)?, &slits)?;
        let pair = TwoParticleSystem::new(psi, phi)?;
        println!(
            "{sigma_bar:<9}  {:.5}   {:.5}",
            initial_overlap(sigma, sigma_bar)?,
            pair.overlap_sq()
        );
    }
    Ok(())
}
