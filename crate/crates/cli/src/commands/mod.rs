//! Subcommand implementations. Each `run` returns the number of grid points
//! that failed (0 means a clean exit); everything else lands in files.

pub mod phases;
pub mod quench;
pub mod scaling;
pub mod spectrum;
pub mod sweep;
pub mod wigner;

/// Lower quasispin branch m′ = −1/2, where all the QPT/ESQPT structure of
/// the low-lying spectrum lives.
pub const M_PRIME: f64 = -0.5;
