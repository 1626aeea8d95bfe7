//! Coincidence-detection patterns for pairs of particles passing a double
//! slit, in the Gaussian-slit approximation with multi-mode Gaussian packets.
//!
//! The crate is organised bottom-up:
//!
//! * [`wavepacket`]: the initial Gaussian mode distribution and its free
//!   evolution to the slits.
//! * [`slit`]: closed-form post-slit beams and single-particle normalization.
//! * [`twoparticle`]: overlaps, joint normalizations and joint densities for
//!   distinguishable particles, bosons and fermions.
//! * [`oracle`]: adaptive quadrature that re-derives each closed form by
//!   brute force.
//! * [`cli`]: configuration, CSV output and the validation report behind the
//!   `twoslit` binary.
//!
//! Units are fixed throughout: lengths in μm, wavenumbers in μm⁻¹, reduced
//! times `ħt/m` in μm² and joint densities in μm⁻².
//!
//! ```
//! use twoslit::{diffracted_state, PacketParams, SlitGeometry, Statistics, TwoParticleSystem};
//!
//! let slits = SlitGeometry::new(0.1, 0.4)?;
//! let psi = diffracted_state(&PacketParams::new(1.0, 0.2, 0.2)?, &slits)?;
//! let phi = diffracted_state(&PacketParams::new(2.0, 0.2, 0.2)?, &slits)?;
//! let pair = TwoParticleSystem::new(psi, phi)?;
//! let p = twoslit::joint_density(0.0, 0.5, &pair, Statistics::Boson)?;
//! assert!(p > 0.0);
//! # Ok::<(), twoslit::Error>(())
//! ```

pub mod cli;
mod compensated;
mod error;
pub mod oracle;
pub mod slit;
pub mod twoparticle;
pub mod wavepacket;

pub use error::{Error, Result};
pub use slit::{diffracted_state, BeamCoefficients, DiffractedState, Slit, SlitGeometry};
pub use twoparticle::{
    detection_pattern, fixed_detector_pattern, initial_overlap, joint_density, joint_norm, pair_overlap,
    DetectionPattern, Statistics, TwoParticleSystem,
};
pub use wavepacket::{free_packet, PacketParams};
