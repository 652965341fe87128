//! Adaptive Fock-cutoff selection.
//!
//! The photon content of the low band scales with NR and with the coupling,
//! so a fixed cutoff either wastes a dense solve or silently truncates the
//! superradiant wells. The initial guess here comes from the classical
//! turning surface: the outermost radius of {h ≤ ε_top}, where ε_top covers
//! the full strength-function window of the quench protocol, converts to a
//! photon number n ≈ NR·r²/2. The guess is then certified by doubling: the
//! cutoff is accepted once doubling it moves the scaled ground-state energy
//! by less than 10⁻⁹ (ground states probed by Lanczos on the sparse matrix).

use crate::error::{Error, Result};
use crate::model::{build_basis, build_hamiltonian, scaled_energy, HilbertBasis, ModelParams};
use crate::semiclassics::{classical_hamiltonian, ClassicalPoint};
use crate::spectrum::lanczos::lanczos_ground_state;

/// Outcome of the cutoff search.
#[derive(Debug, Clone)]
pub struct CutoffReport {
    pub n_initial: usize,
    pub n_converged: usize,
    /// Ground-state energy at the accepted cutoff (energy units).
    pub ground_energy: f64,
    /// |Δε_gs| observed at the final accepted doubling.
    pub ground_shift: f64,
    /// Number of cutoff escalations beyond the initial guess.
    pub escalations: u32,
}

const GROUND_TOL: f64 = 1e-9;
const MAX_ESCALATIONS: u32 = 6;

/// Width of the quench strength function in scaled energy: the initial
/// product state couples to one Fock excitation through finitely many
/// Hamiltonian elements, so this is exact and cutoff-independent.
pub fn strength_width_scaled(p: &ModelParams) -> f64 {
    let j = p.j();
    let nr = p.nr();
    let var = 2.0 * j * nr * p.lambda * p.lambda * (1.0 - p.delta).powi(2)
        + 4.0 * nr * p.mu * p.mu * j * j * (p.gamma - 1.0).powi(2);
    var.sqrt() / (nr * p.omega)
}

/// Physics-informed starting cutoff: photon number at the classical turning
/// surface of the lowest band, padded for quantum tails.
pub fn initial_cutoff(p: &ModelParams) -> usize {
    let eps_top = -0.5 + 6.0 * strength_width_scaled(p) + 0.05;
    let radius = turning_radius(p, eps_top);
    let n_top = p.nr() * radius * radius / 2.0;
    let guess = (1.35 * n_top + 5.0 * n_top.sqrt() + 10.0).ceil() as usize;
    guess.max(64)
}

/// Outermost radius of the sublevel set {h_lowest ≤ eps} of the lowest
/// classical band, by polar scan.
fn turning_radius(p: &ModelParams, eps: f64) -> f64 {
    let j = p.j();
    let mut r_max: f64 = 0.0;
    let angles = 64;
    let steps = 600;
    let r_hi = 6.0 + 4.0 * (p.lambda + p.mu) / p.omega * f64::from(p.n_qubits);
    for ia in 0..angles {
        let th = std::f64::consts::TAU * ia as f64 / angles as f64;
        let (sin, cos) = th.sin_cos();
        for ir in (0..=steps).rev() {
            let r = r_hi * ir as f64 / steps as f64;
            if r <= r_max {
                break;
            }
            let x = ClassicalPoint::new(r * cos, r * sin);
            if classical_hamiltonian(p, -j, x) <= eps {
                r_max = r_max.max(r);
                break;
            }
        }
    }
    r_max
}

/// Finds a certified cutoff and returns the basis at it together with the
/// convergence evidence. An explicit `fock_cutoff` in the parameters is
/// used as the starting guess instead of the heuristic.
pub fn converged_basis(p: &ModelParams) -> Result<(HilbertBasis, CutoffReport)> {
    let n_initial = p.fock_cutoff.unwrap_or_else(|| initial_cutoff(p));
    let mut n = n_initial;
    let mut escalations = 0;

    let (mut energy, mut vector) = ground_at(p, n, None)?;
    loop {
        let doubled = 2 * n;
        // Seed the doubled problem with the embedded current ground state.
        let seed = embed(&vector, p, n, doubled);
        let (energy_doubled, vector_doubled) = ground_at(p, doubled, Some(&seed))?;
        let shift = (scaled_energy(energy_doubled, p) - scaled_energy(energy, p)).abs();
        if shift < GROUND_TOL {
            let basis = build_basis(p.j(), n);
            return Ok((
                basis,
                CutoffReport {
                    n_initial,
                    n_converged: n,
                    ground_energy: energy,
                    ground_shift: shift,
                    escalations,
                },
            ));
        }
        escalations += 1;
        if escalations > MAX_ESCALATIONS {
            return Err(Error::NotConverged {
                n_max: doubled,
                reason: format!("ground state still moving by {shift:.3e} per doubling"),
            });
        }
        n = doubled;
        energy = energy_doubled;
        vector = vector_doubled;
    }
}

fn ground_at(p: &ModelParams, n_max: usize, seed: Option<&[f64]>) -> Result<(f64, Vec<f64>)> {
    let basis = build_basis(p.j(), n_max);
    let h = build_hamiltonian(p, &basis);
    lanczos_ground_state(&h, seed, 800, 1e-10)
}

/// Copies coefficients between bases with different cutoffs (same j).
fn embed(v: &[f64], p: &ModelParams, n_from: usize, n_to: usize) -> Vec<f64> {
    let m_count = p.n_qubits as usize + 1;
    let mut out = vec![0.0; m_count * (n_to + 1)];
    for k in 0..m_count {
        for n in 0..=n_from.min(n_to) {
            out[k * (n_to + 1) + n] = v[k * (n_from + 1) + n];
        }
    }
    out
}
