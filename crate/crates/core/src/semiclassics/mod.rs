//! Classical-limit analysis: energy surfaces, stationary points, vacuum
//! phase diagram, and semiclassical level densities.

pub mod classical;
pub mod level_density;
pub mod phases;
pub mod stationary;

pub use classical::{
    classical_gradient, classical_hamiltonian, critical_couplings, hessian_at, ClassicalPoint,
};
pub use level_density::{esqpt_critical_lines, semiclassical_level_density, CriticalLine};
pub use phases::{
    classify_vacuum_phase, first_order_critical, linearized_flow, PhaseLabel, VacuumPhase,
};
pub use stationary::{stationary_points, PointKind, Singularity, StationaryPoint};
