//! Strength function (local density of states) of an initial state.
//!
//! For an initial vector |Ψ₀⟩ and eigenpairs (E_i, |E_i⟩), the strength
//! function is the set of weights p_i = |⟨E_i|Ψ₀⟩|². Its mean is the energy
//! expectation of |Ψ₀⟩ and its variance measures the width of the energy
//! window the quench deposits the state into.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::spectrum::eigen::EigenDecomposition;

const NORM_TOL: f64 = 1e-10;

/// Energy distribution of an initial state over the eigenbasis.
#[derive(Debug, Clone)]
pub struct StrengthFunction {
    /// (E_i, p_i) pairs in ascending energy order.
    pub pairs: Vec<(f64, f64)>,
    /// Mean energy Σ p_i E_i.
    pub mean: f64,
    /// Variance Σ p_i (E_i − mean)².
    pub variance: f64,
}

impl StrengthFunction {
    /// Total captured probability; 1 when the initial state lies in the span.
    pub fn total_weight(&self) -> f64 {
        self.pairs.iter().map(|&(_, p)| p).sum()
    }
}

/// Signed eigenbasis amplitudes c_i = ⟨E_i|Ψ₀⟩ of a normalized real vector.
pub fn overlap_amplitudes(eigs: &EigenDecomposition, initial: &[f64]) -> Result<Vec<f64>> {
    if initial.len() != eigs.dimension() {
        return Err(Error::GridMismatch(format!(
            "initial state has length {}, expected {}",
            initial.len(),
            eigs.dimension()
        )));
    }
    let norm = initial.iter().map(|c| c * c).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::InvalidParameter {
            field: "initial",
            message: format!("initial state must be normalized, got ‖Ψ₀‖ = {norm}"),
        });
    }
    let x = DVector::from_column_slice(initial);
    let c = eigs.vectors.tr_mul(&x);
    Ok(c.iter().copied().collect())
}

/// Computes all eigenstate weights of `initial` together with the mean and
/// variance of its energy distribution.
pub fn strength_function(
    eigs: &EigenDecomposition,
    initial: &[f64],
) -> Result<StrengthFunction> {
    let amplitudes = overlap_amplitudes(eigs, initial)?;
    let pairs: Vec<(f64, f64)> = eigs
        .energies
        .iter()
        .zip(&amplitudes)
        .map(|(&e, &c)| (e, c * c))
        .collect();
    let mean: f64 = pairs.iter().map(|&(e, p)| p * e).sum();
    let variance: f64 = pairs.iter().map(|&(e, p)| p * (e - mean) * (e - mean)).sum();
    Ok(StrengthFunction { pairs, mean, variance })
}
