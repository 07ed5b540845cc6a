//! Multiplierless 32-point approximate DFT (ADFT) and the multibeam
//! beamforming analyses built on it.
//!
//! - [`transforms`]: exact DFT, the ADFT matrix, scaled-rounding candidates.
//! - [`fastalg`]: the eight-stage sparse factorization and operation counts.
//! - [`approx_search`]: matrix-quality metrics and the Pareto sweep over β.
//! - [`beampattern`]: filter-bank responses, ULA/URA beams, near-field effects.
//! - [`array_sim`]: receive-chain simulation from plane wave to bin energies.

pub mod approx_search;
pub mod array_sim;
pub mod beampattern;
pub mod error;
pub mod fastalg;
mod tables;
pub mod transforms;

pub use error::{Error, Result};
pub use num_complex::Complex64;
