//! Phase-space view of the reduced field state.
//!
//! Oscillator eigenfunctions evaluated by stable recurrence, Wigner
//! functions of Fock-basis density matrices, trace-form overlaps between
//! them, and snapshot sets that follow a quench through collapse and
//! revival. The vacuum overlap of a snapshot reproduces the field survival
//! probability, tying the phase-space picture back to the dynamical one.

mod hermite;
mod snapshots;
mod wigner;

pub use hermite::oscillator_wavefunction;
pub use snapshots::{
    locate_snapshot_instants, wigner_snapshots, SnapshotInstants, SnapshotLabel, SnapshotSet,
    WignerSnapshot,
};
pub use wigner::{wigner, wigner_overlap, GridSpec, QuadratureConvention, WignerGrid};
