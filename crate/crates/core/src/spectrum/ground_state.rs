//! Ground-state energy across a coupling sweep.
//!
//! The lowest scaled eigenvalue ε_gs(λ) is the order diagnostic of the
//! ground-state transition: it leaves the flat value −1/2 at the critical
//! coupling and bends downwards in the superradiant regime.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{scaled_energy, ModelParams};
use crate::spectrum::convergence::converged_basis;

/// Converged ground-state scaled energy at every coupling on the grid.
/// The Fock cutoff is re-converged independently at each point.
pub fn ground_state_curve(p: &ModelParams, lambda_grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    if lambda_grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::GridMismatch("lambda grid must be sorted ascending".into()));
    }
    lambda_grid
        .par_iter()
        .map(|&lambda| {
            let point = ModelParams { lambda, ..p.clone() }.validate()?;
            let (_, report) = converged_basis(&point)?;
            Ok((lambda, scaled_energy(report.ground_energy, &point)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_reproduces_the_free_and_deep_superradiant_limits() {
        let p = ModelParams::default();
        let grid = [0.0, 0.25, 0.5, 0.75, 1.0];
        let curve = ground_state_curve(&p, &grid).unwrap();
        assert_eq!(curve.len(), 5);
        // λ = 0: free ground state ε = −1/2.
        assert!((curve[0].1 + 0.5).abs() < 1e-8, "ε_gs(0) = {}", curve[0].1);
        // λ = 2λ_c: classical well depth −(u + 1/u)/4 with u = 4, O(1/R) off.
        assert!((curve[4].1 + 1.0625).abs() < 2e-2, "ε_gs(1) = {}", curve[4].1);
        // Monotone non-increasing in λ.
        for w in curve.windows(2) {
            assert!(w[1].1 <= w[0].1 + 1e-12, "curve not monotone: {w:?}");
        }
        // Above λ_c the energy has left the −1/2 plateau for good.
        assert!((curve[3].1 + 0.673_621_156).abs() < 1e-6, "ε_gs(0.75) = {}", curve[3].1);
        // At and below λ_c it sits on the plateau up to 1/(NR) corrections.
        assert!((curve[2].1 + 0.5).abs() < 5e-3);
        assert!((curve[1].1 + 0.5).abs() < 5e-4);
    }

    #[test]
    fn unsorted_grid_is_rejected() {
        let p = ModelParams::default();
        assert!(ground_state_curve(&p, &[0.5, 0.25]).is_err());
    }
}
