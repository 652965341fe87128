//! Exact-diagonalization layer: spectra, convergence control, level
//! densities, strength functions, and ground-state sweeps.

pub mod convergence;
pub mod density;
pub mod eigen;
pub mod export;
pub mod ground_state;
pub mod lanczos;
pub mod strength;

pub use convergence::{converged_basis, initial_cutoff, strength_width_scaled, CutoffReport};
pub use density::{smoothed_level_density, SmoothedDensity, DEFAULT_KERNEL_WIDTH};
pub use eigen::{diagonalize, solve_dense_symmetric, EigenDecomposition};
pub use export::{export_csv, export_json, SpectrumExport};
pub use ground_state::ground_state_curve;
pub use lanczos::lanczos_ground_state;
pub use strength::{overlap_amplitudes, strength_function, StrengthFunction};
