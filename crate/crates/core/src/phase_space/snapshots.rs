//! Wigner snapshots of a vacuum quench at characteristic instants.
//!
//! The instants can be requested explicitly or located automatically from
//! the survival probability P(t): the first deep minimum (the collapse),
//! the highest subsequent maximum (the first approximate revival), and an
//! early instant one eighth of the way into the collapse. All snapshots and
//! the vacuum reference are evaluated on one shared grid, so
//! [`wigner_overlap`](super::wigner_overlap) between them is well defined —
//! and equals the field survival probability ⟨0|ρ_b(t)|0⟩ when taken
//! against the vacuum.

use crate::error::{Error, Result};
use crate::model::{build_hamiltonian, ModelParams};
use crate::quench::{
    initial_state, reduced_density, subsystem_survivals, survival_from_strength,
    survival_probability, Propagator, Subsystem,
};
use crate::spectrum::{converged_basis, diagonalize, strength_function};

use super::wigner::{moment_box, wigner, GridSpec, WignerGrid};

/// Number of P(t) samples used to locate the collapse and revival.
const SCAN_SAMPLES: usize = 4001;

/// Characteristic quench instants, in units of 1/ω.
#[derive(Debug, Clone, Copy)]
pub struct SnapshotInstants {
    /// Early in the collapse (dip time / 8).
    pub early: f64,
    /// First deep survival minimum.
    pub dip: f64,
    /// Highest survival maximum after the dip.
    pub revival: f64,
}

/// Locates collapse and revival instants from the spectral form of P(t).
///
/// `pairs` are the (E_i, p_i) strength-function weights of the initial
/// state; the scan covers (0, horizon].
pub fn locate_snapshot_instants(
    pairs: &[(f64, f64)],
    horizon: f64,
) -> Result<SnapshotInstants> {
    if pairs.is_empty() {
        return Err(Error::EmptyGrid("strength function"));
    }
    if !(horizon > 0.0) || !horizon.is_finite() {
        return Err(Error::InvalidParameter {
            field: "horizon",
            message: format!("must be a positive time, got {horizon}"),
        });
    }
    let dt = horizon / (SCAN_SAMPLES - 1) as f64;
    let survival: Vec<f64> =
        (0..SCAN_SAMPLES).map(|i| survival_from_strength(pairs, i as f64 * dt)).collect();
    let dip_index = (1..SCAN_SAMPLES)
        .min_by(|&a, &b| survival[a].total_cmp(&survival[b]))
        .expect("scan is nonempty");
    if survival[dip_index] > 0.99 {
        return Err(Error::BracketingFailure {
            context: format!("no survival collapse before t = {horizon}"),
        });
    }
    if dip_index + 1 >= SCAN_SAMPLES {
        return Err(Error::BracketingFailure {
            context: format!("survival still falling at t = {horizon}; extend the horizon"),
        });
    }
    let revival_index = (dip_index + 1..SCAN_SAMPLES)
        .max_by(|&a, &b| survival[a].total_cmp(&survival[b]))
        .expect("post-dip window is nonempty");
    let dip = dip_index as f64 * dt;
    Ok(SnapshotInstants { early: dip / 8.0, dip, revival: revival_index as f64 * dt })
}

/// Why a particular instant was selected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SnapshotLabel {
    Early,
    Dip,
    Revival,
    Requested,
}

/// One evolved state rendered in phase space.
#[derive(Debug, Clone)]
pub struct WignerSnapshot {
    pub time: f64,
    pub label: SnapshotLabel,
    /// |⟨Ψ₀|Ψ(t)⟩|².
    pub survival: f64,
    /// Qubit-subsystem survival ⟨↓…↓|ρ_q|↓…↓⟩.
    pub qubit_survival: f64,
    /// Field-subsystem survival ⟨0|ρ_b|0⟩ — the vacuum Wigner overlap.
    pub field_survival: f64,
    pub grid: WignerGrid,
}

/// A quench rendered as Wigner functions on one shared grid.
#[derive(Debug, Clone)]
pub struct SnapshotSet {
    pub params: ModelParams,
    /// Fock cutoff actually used.
    pub n_max: usize,
    /// Present when the instants were located automatically.
    pub instants: Option<SnapshotInstants>,
    /// Wigner function of the initial (vacuum) field state.
    pub vacuum: WignerGrid,
    pub snapshots: Vec<WignerSnapshot>,
}

/// Evolves the qubit-vacuum product state and renders the reduced field
/// state at the given `times`, or — when `times` is `None` — at the
/// automatically located early/dip/revival instants within `horizon`.
///
/// `spec` ranges left at `None` auto-size to the union of the snapshots'
/// second-moment boxes, keeping every grid (vacuum included) on identical
/// axes.
pub fn wigner_snapshots(
    params: &ModelParams,
    times: Option<&[f64]>,
    horizon: f64,
    spec: &GridSpec,
) -> Result<SnapshotSet> {
    let p = params.validate()?;
    match times {
        Some(ts) => {
            if ts.is_empty() {
                return Err(Error::EmptyGrid("snapshot times"));
            }
            if let Some(&bad) = ts.iter().find(|t| !t.is_finite() || **t < 0.0) {
                return Err(Error::InvalidParameter {
                    field: "times",
                    message: format!("snapshot times must be nonnegative, got {bad}"),
                });
            }
        }
        None => {
            if !(horizon > 0.0) || !horizon.is_finite() {
                return Err(Error::InvalidParameter {
                    field: "horizon",
                    message: format!("must be a positive time, got {horizon}"),
                });
            }
        }
    }

    let (basis, report) = converged_basis(&p)?;
    let h = build_hamiltonian(&p, &basis);
    let eigs = diagonalize(&h, &p, &basis, p.mu == 0.0)?;
    let s0 = initial_state(&basis);
    let propagator = Propagator::new(&eigs, &s0)?;

    let mut vacuum_row = vec![0.0; basis.dimension()];
    vacuum_row[basis.vacuum_index()] = 1.0;

    let (schedule, instants): (Vec<(f64, SnapshotLabel)>, Option<SnapshotInstants>) =
        match times {
            Some(ts) => (ts.iter().map(|&t| (t, SnapshotLabel::Requested)).collect(), None),
            None => {
                let sf = strength_function(&eigs, &vacuum_row)?;
                let found = locate_snapshot_instants(&sf.pairs, horizon)?;
                (
                    vec![
                        (found.early, SnapshotLabel::Early),
                        (found.dip, SnapshotLabel::Dip),
                        (found.revival, SnapshotLabel::Revival),
                    ],
                    Some(found),
                )
            }
        };

    // Evolve first so the shared box can cover every snapshot.
    let mut evolved = Vec::with_capacity(schedule.len());
    for &(t, label) in &schedule {
        let st = propagator.at(t);
        let rho = reduced_density(&st, &basis, Subsystem::Field);
        evolved.push((t, label, st, rho));
    }
    let rho_vacuum = reduced_density(&s0, &basis, Subsystem::Field);

    let mut shared = *spec;
    if shared.q_range.is_none() || shared.p_range.is_none() {
        let mut boxes = vec![moment_box(&rho_vacuum.matrix)];
        boxes.extend(evolved.iter().map(|(_, _, _, rho)| moment_box(&rho.matrix)));
        let union_q = boxes
            .iter()
            .map(|b| b.0)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |a, b| (a.0.min(b.0), a.1.max(b.1)));
        let union_p = boxes
            .iter()
            .map(|b| b.1)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |a, b| (a.0.min(b.0), a.1.max(b.1)));
        shared.q_range.get_or_insert(union_q);
        shared.p_range.get_or_insert(union_p);
    }

    let vacuum = wigner(&rho_vacuum, &shared)?;
    let mut snapshots = Vec::with_capacity(evolved.len());
    for (t, label, st, rho) in &evolved {
        let (qubit_survival, field_survival) = subsystem_survivals(st, &basis);
        snapshots.push(WignerSnapshot {
            time: *t,
            label: *label,
            survival: survival_probability(&s0, st),
            qubit_survival,
            field_survival,
            grid: wigner(rho, &shared)?,
        });
    }

    Ok(SnapshotSet {
        params: p,
        n_max: report.n_converged,
        instants,
        vacuum,
        snapshots,
    })
}
