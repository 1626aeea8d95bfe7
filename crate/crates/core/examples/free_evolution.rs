//! Free spreading of the initial multi-mode packet on its way to the slits.

use twoslit::free_packet;
use twoslit::oracle::{free_packet_by_synthesis, QuadratureSpec};
use twoslit::wavepacket::free_evolution_coefficients;

fn main() -> twoslit::Result<()> {
    let sigma = 1.0;
    println!("tau [um^2]  |C|^2       mu        <x^2> [um^2]");
    for tau in [0.0, 0.1, 0.2, 0.5, 1.0, 2.0] {
        let c = free_evolution_coefficients(tau, sigma)?;
        println!(
            "{tau:<10}  {:<10.6}  {:<8.4}  {:.6}",
            c.c.norm_sqr(),
            c.mu,
            c.position_variance()
        );
    }

    // Closed form against direct synthesis from the plane-wave modes.
    let spec = QuadratureSpec::default();
    let tau = 0.2;
    println!("\nx [um]  closed form                      synthesis");
    for x in [-2.0, -0.5, 0.0, 1.0, 3.0] {
        let closed = free_packet(x, tau, sigma)?;
        let q = free_packet_by_synthesis(x, tau, sigma, &spec)?.value;
        println!(
            "{x:<6}  {:>+.9} {:>+.9}i    {:>+.9} {:>+.9}i",
            closed.re, closed.im, q.re, q.im
        );
    }
    Ok(())
}
