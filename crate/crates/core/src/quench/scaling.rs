//! Finite-size scaling of the averaged survival probabilities.
//!
//! The frequency ratio R = ω_q/ω controls the effective Planck constant
//! 1/(NR): growing R sharpens the classical limit, so P̄(R) and P̄_q(R)
//! distinguish phases whose quench dynamics delocalizes (first superradiant
//! regime) from phases that re-stabilize the product state (second regime).

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{build_hamiltonian, ModelParams, OperatorMatrix};
use crate::quench::averages::{averaged_expectation, averaged_survival};
use crate::quench::state::initial_state;
use crate::spectrum::convergence::converged_basis;
use crate::spectrum::eigen::diagonalize;
use crate::spectrum::strength::overlap_amplitudes;

/// Averages at one system size.
#[derive(Debug, Clone, Copy)]
pub struct ScalingPoint {
    pub r: f64,
    /// P̄, the infinite-time average of the survival probability.
    pub survival: f64,
    /// P̄_q, the qubit-subsystem analogue.
    pub qubit_survival: f64,
}

/// Computes (R, P̄, P̄_q) for every requested size, re-converging the Fock
/// cutoff at each one. Points are independent and run in parallel.
pub fn size_scaling_study(p: &ModelParams, r_list: &[f64]) -> Result<Vec<ScalingPoint>> {
    if r_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::GridMismatch("R list must be strictly ascending".into()));
    }
    r_list
        .par_iter()
        .map(|&r| {
            let point = ModelParams { r, ..p.clone() }.validate()?;
            let (basis, _) = converged_basis(&point)?;
            let h = build_hamiltonian(&point, &basis);
            let eigs = diagonalize(&h, &point, &basis, point.mu == 0.0)?;
            let s0 = initial_state(&basis);
            let initial: Vec<f64> = s0.coefficients.iter().map(|z| z.re).collect();
            let amplitudes = overlap_amplitudes(&eigs, &initial)?;

            let nf = basis.n_max + 1;
            let diag = (0..basis.dimension()).map(|i| if i < nf { 1.0 } else { 0.0 }).collect();
            let qubit_projector = OperatorMatrix::diagonal(diag);
            Ok(ScalingPoint {
                r,
                survival: averaged_survival(&eigs, &amplitudes),
                qubit_survival: averaged_expectation(&eigs, &amplitudes, &qubit_projector),
            })
        })
        .collect()
}
