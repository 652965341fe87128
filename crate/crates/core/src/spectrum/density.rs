//! Gaussian-smoothed quantum level density in scaled energy.
//!
//! The density is reported per unit scaled energy and divided by NR, the
//! inverse of the effective Planck constant, so that finite-size spectra are
//! directly comparable to the semiclassical ρ̄(ε): near λ=0 both equal 1 per
//! quasispin branch.

use crate::error::{Error, Result};
use crate::spectrum::eigen::EigenDecomposition;

/// Kernel-density estimate over a fixed set of scaled eigenvalues.
#[derive(Debug, Clone)]
pub struct SmoothedDensity {
    /// Scaled eigenvalues, sorted ascending.
    scaled: Vec<f64>,
    /// Gaussian kernel width (standard deviation) in scaled energy.
    pub width: f64,
    /// Prefactor 1/(NR·w·√(2π)) applied to the kernel sum.
    norm: f64,
}

/// Kernels beyond this many widths from the evaluation point are dropped;
/// the truncation error is below e⁻³² per level.
const WINDOW_WIDTHS: f64 = 8.0;

impl SmoothedDensity {
    /// Builds the estimator from already-scaled eigenvalues.
    pub fn new(scaled_energies: &[f64], nr: f64, kernel_width: f64) -> Result<Self> {
        if !(kernel_width > 0.0) {
            return Err(Error::InvalidParameter {
                field: "kernel_width",
                message: format!("kernel width must be positive, got {kernel_width}"),
            });
        }
        let mut scaled = scaled_energies.to_vec();
        scaled.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let norm = 1.0 / (nr * kernel_width * (2.0 * std::f64::consts::PI).sqrt());
        Ok(Self { scaled, width: kernel_width, norm })
    }

    /// Density at one scaled energy.
    pub fn eval(&self, eps: f64) -> f64 {
        let lo = self.scaled.partition_point(|&x| x < eps - WINDOW_WIDTHS * self.width);
        let hi = self.scaled.partition_point(|&x| x <= eps + WINDOW_WIDTHS * self.width);
        let mut sum = 0.0;
        for &x in &self.scaled[lo..hi] {
            let t = (x - eps) / self.width;
            sum += (-0.5 * t * t).exp();
        }
        self.norm * sum
    }

    /// Density sampled over a grid.
    pub fn sample(&self, eps_grid: &[f64]) -> Vec<f64> {
        eps_grid.iter().map(|&e| self.eval(e)).collect()
    }

    /// Number of levels entering the estimate.
    pub fn len(&self) -> usize {
        self.scaled.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scaled.is_empty()
    }
}

/// Smoothed density of the scaled spectrum of a decomposition, divided by NR
/// so it matches the semiclassical normalization.
pub fn smoothed_level_density(
    eigs: &EigenDecomposition,
    kernel_width: f64,
) -> Result<SmoothedDensity> {
    SmoothedDensity::new(&eigs.scaled_energies(), eigs.params.nr(), kernel_width)
}

/// Default kernel width in scaled energy.
pub const DEFAULT_KERNEL_WIDTH: f64 = 0.02;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_basis, build_hamiltonian, ModelParams};
    use crate::spectrum::eigen::diagonalize;

    fn decompose(p: &ModelParams, n_max: usize) -> EigenDecomposition {
        let basis = build_basis(p.j(), n_max);
        let h = build_hamiltonian(p, &basis);
        diagonalize(&h, p, &basis, p.mu == 0.0).unwrap()
    }

    #[test]
    fn free_spectrum_density_is_one_per_branch() {
        let p = ModelParams { lambda: 0.0, ..ModelParams::default() }.validate().unwrap();
        let eigs = decompose(&p, 160);
        let density = smoothed_level_density(&eigs, 0.02).unwrap();
        // Lower branch alone covers (−0.45, 0.45): spacing 1/NR ⇒ density 1.
        for eps in [-0.4, -0.2, 0.0, 0.2, 0.4] {
            let rho = density.eval(eps);
            assert!((rho - 1.0).abs() < 0.02, "ρ({eps}) = {rho}");
        }
    }

    #[test]
    fn superradiant_density_peaks_at_the_separatrix_energy() {
        let p = ModelParams { fock_cutoff: Some(400), ..ModelParams::default() }
            .validate()
            .unwrap();
        let eigs = decompose(&p, 400);
        let density = smoothed_level_density(&eigs, DEFAULT_KERNEL_WIDTH).unwrap();
        let mut best = (f64::NEG_INFINITY, 0.0);
        let mut eps = -0.62;
        while eps <= -0.38 {
            let rho = density.eval(eps);
            if rho > best.0 {
                best = (rho, eps);
            }
            eps += 0.002;
        }
        assert!(
            (best.1 + 0.5).abs() <= 0.02,
            "density maximum at ε = {} (ρ = {})",
            best.1,
            best.0
        );
    }

    #[test]
    fn empty_spectrum_gives_zero_density() {
        let density = SmoothedDensity::new(&[], 100.0, 0.02).unwrap();
        assert!(density.is_empty());
        assert_eq!(density.eval(0.0), 0.0);
        assert_eq!(density.sample(&[-1.0, 0.0, 1.0]), vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn kernel_width_must_be_positive() {
        assert!(SmoothedDensity::new(&[0.0], 100.0, 0.0).is_err());
        assert!(SmoothedDensity::new(&[0.0], 100.0, -0.1).is_err());
        assert!(SmoothedDensity::new(&[0.0], 100.0, f64::NAN).is_err());
    }

    #[test]
    fn window_truncation_is_negligible() {
        // A single level: value at distance 3w must match the exact Gaussian.
        let density = SmoothedDensity::new(&[0.0], 1.0, 0.02).unwrap();
        let exact = (-0.5f64 * 9.0).exp() / (0.02 * (2.0 * std::f64::consts::PI).sqrt());
        let got = density.eval(0.06);
        assert!((got - exact).abs() < 1e-12 * exact);
    }
}
