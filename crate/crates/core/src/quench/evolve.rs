//! Spectral time evolution: c(t) = V e^{−iΛ(t−t₀)} Vᵀ c(t₀), with ħ = 1.
//!
//! The eigenbasis route makes each time sample O(dim²) independent of t, so
//! log-spaced grids over many decades cost the same as short ones.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::model::OperatorMatrix;
use crate::quench::state::QuenchState;
use crate::spectrum::eigen::EigenDecomposition;
use crate::C64;

/// Reusable propagator: diagonal-frame amplitudes of one anchor state.
pub struct Propagator<'a> {
    eigs: &'a EigenDecomposition,
    modal_re: DVector<f64>,
    modal_im: DVector<f64>,
    t0: f64,
}

impl<'a> Propagator<'a> {
    pub fn new(eigs: &'a EigenDecomposition, s0: &QuenchState) -> Result<Self> {
        if s0.dimension() != eigs.dimension() {
            return Err(Error::GridMismatch(format!(
                "state dimension {} does not match decomposition dimension {}",
                s0.dimension(),
                eigs.dimension()
            )));
        }
        let re = DVector::from_iterator(s0.dimension(), s0.coefficients.iter().map(|z| z.re));
        let im = DVector::from_iterator(s0.dimension(), s0.coefficients.iter().map(|z| z.im));
        Ok(Propagator {
            eigs,
            modal_re: eigs.vectors.tr_mul(&re),
            modal_im: eigs.vectors.tr_mul(&im),
            t0: s0.time,
        })
    }

    /// State at absolute time t.
    pub fn at(&self, t: f64) -> QuenchState {
        let dt = t - self.t0;
        let dim = self.eigs.dimension();
        let mut rot_re = DVector::zeros(dim);
        let mut rot_im = DVector::zeros(dim);
        for i in 0..dim {
            let (sin, cos) = (-self.eigs.energies[i] * dt).sin_cos();
            let (a, b) = (self.modal_re[i], self.modal_im[i]);
            rot_re[i] = a * cos - b * sin;
            rot_im[i] = a * sin + b * cos;
        }
        let out_re = &self.eigs.vectors * rot_re;
        let out_im = &self.eigs.vectors * rot_im;
        let coefficients =
            (0..dim).map(|i| C64::new(out_re[i], out_im[i])).collect();
        QuenchState { coefficients, time: t }
    }
}

/// Evolved copies of `s0` at the requested times.
pub fn evolve(
    eigs: &EigenDecomposition,
    s0: &QuenchState,
    times: &[f64],
) -> Result<Vec<QuenchState>> {
    let propagator = Propagator::new(eigs, s0)?;
    Ok(times.iter().map(|&t| propagator.at(t)).collect())
}

/// P(t) = |⟨Ψ(0)|Ψ(t)⟩|².
pub fn survival_probability(s0: &QuenchState, st: &QuenchState) -> f64 {
    assert_eq!(s0.dimension(), st.dimension(), "states live in different bases");
    let overlap: C64 = s0
        .coefficients
        .iter()
        .zip(&st.coefficients)
        .map(|(a, b)| a.conj() * b)
        .sum();
    overlap.norm_sqr()
}

/// Survival via the strength function: P(t) = |Σ_i p_i e^{−iE_i t}|².
pub fn survival_from_strength(pairs: &[(f64, f64)], t: f64) -> f64 {
    let mut acc = C64::new(0.0, 0.0);
    for &(e, p) in pairs {
        let (sin, cos) = (-e * t).sin_cos();
        acc += C64::new(p * cos, p * sin);
    }
    acc.norm_sqr()
}

/// A(t) = ⟨Ψ(t)|Â|Ψ(t)⟩, real for Hermitian observables.
pub fn expectation(st: &QuenchState, obs: &OperatorMatrix) -> f64 {
    obs.expectation(&st.coefficients)
}
