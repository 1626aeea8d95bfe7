//! Closed-form beams leaving each slit, and the single-particle pattern they
//! produce on the screen.

use twoslit::{diffracted_state, PacketParams, Slit, SlitGeometry};

fn main() -> twoslit::Result<()> {
    let slits = SlitGeometry::new(0.1, 0.4)?;
    let state = diffracted_state(&PacketParams::new(1.0, 0.2, 0.2)?, &slits)?;

    for slit in Slit::BOTH {
        let c = state.beam(slit);
        println!(
            "slit {slit:?}: D = {:.6}  F = {:.6}  G = {:+.6}  H = {:.6}",
            c.d_coef, c.f_coef, c.g_coef, c.h_coef
        );
        println!(
            "        alpha = {:.6}  beta = {:.6}  gamma = {:+.6}  delta = {:+.6}",
            c.alpha, c.beta, c.gamma, c.delta
        );
    }
    println!("norm N = {:.9}", state.norm);
    println!("fringe spacing = {:.5} um", state.fringe_spacing());

    println!("\nx [um]  |psi_A|^2    |psi_B|^2    |psi|^2");
    for i in -8..=8 {
        let x = i as f64 * 0.5;
        let a = (state.norm * state.beam(Slit::A).amplitude(x)).norm_sqr();
        let b = (state.norm * state.beam(Slit::B).amplitude(x)).norm_sqr();
        println!("{x:<6}  {a:.6e}  {b:.6e}  {:.6e}", state.intensity(x));
    }
    Ok(())
}
