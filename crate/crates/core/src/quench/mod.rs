//! Quench protocol: evolution of the vacuum product state, survival
//! probabilities, subsystem reductions, infinite-time averages, and
//! finite-size scaling.

pub mod averages;
pub mod evolve;
pub mod record;
pub mod scaling;
pub mod state;

pub use averages::{
    averaged_expectation, averaged_survival, degenerate_clusters, infinite_time_averages,
    smooth_curve, time_averaged_survival,
};
pub use evolve::{evolve, expectation, survival_from_strength, survival_probability, Propagator};
pub use record::{
    field_vacuum_projector, linear_times, log_times, quench_record, qubit_vacuum_projector,
    two_step_quench, InfiniteTimeSummary, QuenchRecord,
};
pub use scaling::{size_scaling_study, ScalingPoint};
pub use state::{
    bloch_and_purity, initial_state, reduced_density, subsystem_survivals, tail_weight,
    QuenchState, ReducedDensity, Subsystem,
};
