//! Infinite-time averages from the spectral decomposition.
//!
//! P̄ = Σ_i p_i² and Ā = Σ_i p_i ⟨E_i|Â|E_i⟩ hold for nondegenerate spectra;
//! exact parity doublets in the superradiant phase are exponentially
//! degenerate, so levels closer than 10⁻⁹ of the spectral span are merged
//! into clusters first. Each cluster contributes its total projection
//! p_cl = Σ|c_i|² to P̄ and the expectation in the projected (unnormalized)
//! state w = Σ c_i|E_i⟩ to Ā.

use nalgebra::DVector;

use crate::error::Result;
use crate::model::OperatorMatrix;
use crate::spectrum::eigen::EigenDecomposition;
use crate::spectrum::strength::overlap_amplitudes;
use crate::C64;

/// Relative gap under which adjacent levels count as one recurrence line.
pub const DEGENERACY_FRACTION: f64 = 1e-9;

/// Half-open index ranges of degenerate clusters in ascending-energy order.
pub fn degenerate_clusters(energies: &[f64]) -> Vec<(usize, usize)> {
    let mut clusters = Vec::new();
    if energies.is_empty() {
        return clusters;
    }
    let span = (energies[energies.len() - 1] - energies[0]).max(f64::MIN_POSITIVE);
    let tol = DEGENERACY_FRACTION * span;
    let mut start = 0;
    for i in 1..energies.len() {
        if energies[i] - energies[i - 1] > tol {
            clusters.push((start, i));
            start = i;
        }
    }
    clusters.push((start, energies.len()));
    clusters
}

/// P̄ = Σ_cl (Σ_{i∈cl} c_i²)², the inverse participation ratio over
/// recurrence lines.
pub fn averaged_survival(eigs: &EigenDecomposition, amplitudes: &[f64]) -> f64 {
    degenerate_clusters(&eigs.energies)
        .into_iter()
        .map(|(a, b)| {
            let p: f64 = amplitudes[a..b].iter().map(|c| c * c).sum();
            p * p
        })
        .sum()
}

/// Ā = Σ_cl ⟨w_cl|Â|w_cl⟩ with w_cl the projection of the initial state
/// onto the cluster eigenspace. Tag-aware: antisymmetric-stored observables
/// average to exactly zero on real eigenvector projections.
pub fn averaged_expectation(
    eigs: &EigenDecomposition,
    amplitudes: &[f64],
    obs: &OperatorMatrix,
) -> f64 {
    let mut acc = 0.0;
    for (a, b) in degenerate_clusters(&eigs.energies) {
        let c = DVector::from_column_slice(&amplitudes[a..b]);
        let w = eigs.vectors.columns(a, b - a) * c;
        let w_complex: Vec<C64> = w.iter().map(|&x| C64::new(x, 0.0)).collect();
        acc += obs.expectation(&w_complex);
    }
    acc
}

/// (P̄, Ā list) for one initial vector.
pub fn infinite_time_averages(
    eigs: &EigenDecomposition,
    initial: &[f64],
    observables: &[&OperatorMatrix],
) -> Result<(f64, Vec<f64>)> {
    let amplitudes = overlap_amplitudes(eigs, initial)?;
    let survival = averaged_survival(eigs, &amplitudes);
    let values = observables
        .iter()
        .map(|obs| averaged_expectation(eigs, &amplitudes, obs))
        .collect();
    Ok((survival, values))
}

/// Long-window trapezoidal time average of P(t) on [0, t_span]; the
/// independent oracle for `averaged_survival`. Weights below 10⁻¹⁴ are
/// dropped; phases advance by incremental rotation.
pub fn time_averaged_survival(pairs: &[(f64, f64)], t_span: f64, steps: usize) -> f64 {
    assert!(steps > 1 && t_span > 0.0);
    let dt = t_span / steps as f64;
    let kept: Vec<(f64, f64)> = pairs.iter().copied().filter(|&(_, p)| p > 1e-14).collect();
    let rotors: Vec<C64> = kept
        .iter()
        .map(|&(e, _)| {
            let (sin, cos) = (-e * dt).sin_cos();
            C64::new(cos, sin)
        })
        .collect();
    let mut phases: Vec<C64> = vec![C64::new(1.0, 0.0); kept.len()];
    let mut integral = 0.0;
    for step in 0..=steps {
        let amp: C64 = kept.iter().zip(&phases).map(|(&(_, p), z)| p * z).sum();
        let weight = if step == 0 || step == steps { 0.5 } else { 1.0 };
        integral += weight * amp.norm_sqr();
        for (z, r) in phases.iter_mut().zip(&rotors) {
            *z *= *r;
        }
    }
    integral / steps as f64
}

/// Centered moving average with endpoint-shrunk windows: position i is
/// averaged over [i−h, i+h] with h reduced near the edges.
pub fn smooth_curve(values: &[f64], half_width: usize) -> Vec<f64> {
    let n = values.len();
    (0..n)
        .map(|i| {
            let h = half_width.min(i).min(n - 1 - i);
            let window = &values[i - h..=i + h];
            window.iter().sum::<f64>() / window.len() as f64
        })
        .collect()
}
