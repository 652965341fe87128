//! Time-dependent state vectors and their subsystem reductions.

use faer::{Mat, Side};
use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::model::HilbertBasis;
use crate::C64;

/// State |Ψ(t)⟩ = Σ c_mn |m⟩⊗|n⟩ in `HilbertBasis` order.
#[derive(Debug, Clone)]
pub struct QuenchState {
    pub coefficients: Vec<C64>,
    pub time: f64,
}

impl QuenchState {
    pub fn dimension(&self) -> usize {
        self.coefficients.len()
    }

    pub fn norm(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// The product state |m=−j⟩_q ⊗ |n=0⟩_b at t = 0: the qubit vacuum paired
/// with the field vacuum, an even-parity state with energy −ωRj.
pub fn initial_state(basis: &HilbertBasis) -> QuenchState {
    let mut coefficients = vec![C64::new(0.0, 0.0); basis.dimension()];
    coefficients[basis.vacuum_index()] = C64::new(1.0, 0.0);
    QuenchState { coefficients, time: 0.0 }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    Qubit,
    Field,
}

/// Partial trace of |Ψ⟩⟨Ψ| over the complementary subsystem.
#[derive(Debug, Clone)]
pub struct ReducedDensity {
    pub subsystem: Subsystem,
    pub matrix: DMatrix<C64>,
}

impl ReducedDensity {
    pub fn trace(&self) -> f64 {
        (0..self.matrix.nrows()).map(|i| self.matrix[(i, i)].re).sum()
    }

    /// Tr ρ², real for Hermitian ρ.
    pub fn purity(&self) -> f64 {
        let m = &self.matrix;
        let mut acc = 0.0;
        for a in 0..m.nrows() {
            for b in 0..m.ncols() {
                acc += (m[(a, b)] * m[(b, a)]).re;
            }
        }
        acc
    }

    /// Eigenvalues in ascending order (real for Hermitian ρ).
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let n = self.matrix.nrows();
        let m = Mat::<faer::c64>::from_fn(n, n, |r, c| self.matrix[(r, c)]);
        let evd = m
            .self_adjoint_eigen(Side::Lower)
            .map_err(|_| Error::SolverFailure { residual: f64::NAN })?;
        Ok((0..n).map(|i| evd.S().column_vector()[i].re).collect())
    }
}

/// ρ_q[m,m′] = Σ_n c_mn c*_m′n or ρ_b[n,n′] = Σ_m c_mn c*_mn′.
pub fn reduced_density(
    st: &QuenchState,
    basis: &HilbertBasis,
    subsystem: Subsystem,
) -> ReducedDensity {
    assert_eq!(st.dimension(), basis.dimension(), "state and basis sizes differ");
    let nf = basis.n_max + 1;
    let mc = basis.m_count();
    let c = &st.coefficients;
    let matrix = match subsystem {
        Subsystem::Qubit => DMatrix::from_fn(mc, mc, |a, b| {
            (0..nf).map(|n| c[a * nf + n] * c[b * nf + n].conj()).sum()
        }),
        Subsystem::Field => DMatrix::from_fn(nf, nf, |a, b| {
            (0..mc).map(|k| c[k * nf + a] * c[k * nf + b].conj()).sum()
        }),
    };
    ReducedDensity { subsystem, matrix }
}

/// (P_q, P_b): survival probabilities of the qubit and field initial states,
/// i.e. the (vacuum, vacuum) diagonal elements of the reduced operators.
pub fn subsystem_survivals(st: &QuenchState, basis: &HilbertBasis) -> (f64, f64) {
    let nf = basis.n_max + 1;
    let mc = basis.m_count();
    let c = &st.coefficients;
    let p_q: f64 = (0..nf).map(|n| c[n].norm_sqr()).sum();
    let p_b: f64 = (0..mc).map(|k| c[k * nf].norm_sqr()).sum();
    (p_q, p_b)
}

/// Weight above the relative Fock level `frac`·n_max; a cutoff health check.
pub fn tail_weight(st: &QuenchState, basis: &HilbertBasis, frac: f64) -> f64 {
    let nf = basis.n_max + 1;
    let threshold = (frac * basis.n_max as f64).floor() as usize;
    let mut acc = 0.0;
    for k in 0..basis.m_count() {
        for n in (threshold + 1)..nf {
            acc += st.coefficients[k * nf + n].norm_sqr();
        }
    }
    acc
}

/// Bloch vector and normalized purity of the qubit for N = 1:
/// ρ_q = ½(1 + ℘⃗·σ⃗) with ℘⃗ = 2(⟨J_x⟩, ⟨J_y⟩, ⟨J_z⟩) and ℘ = |℘⃗|,
/// so that Tr ρ_q² = (℘² + 1)/2.
pub fn bloch_and_purity(st: &QuenchState, basis: &HilbertBasis) -> Result<(f64, f64, f64, f64)> {
    if basis.m_count() != 2 {
        return Err(Error::RequiresSingleQubit(basis.m_count() as u32 - 1));
    }
    let rho = reduced_density(st, basis, Subsystem::Qubit).matrix;
    // Basis order (m=−½, m=+½): ⟨J_x⟩ = Re ρ₀₁, ⟨J_y⟩ = Im ρ₀₁,
    // ⟨J_z⟩ = ½(ρ₁₁ − ρ₀₀).
    let jx = rho[(0, 1)].re;
    let jy = rho[(0, 1)].im;
    let jz = 0.5 * (rho[(1, 1)].re - rho[(0, 0)].re);
    let polarization = 2.0 * (jx * jx + jy * jy + jz * jz).sqrt();
    Ok((jx, jy, jz, polarization))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_basis, build_hamiltonian, parity_operator, ModelParams};
    use approx::assert_relative_eq;

    #[test]
    fn initial_state_is_the_even_parity_vacuum_product() {
        let basis = build_basis(0.5, 2);
        let s0 = initial_state(&basis);
        assert_eq!(s0.dimension(), 6);
        assert_eq!(s0.coefficients[0], C64::new(1.0, 0.0));
        assert_eq!(s0.norm(), 1.0);
        let parity = parity_operator(&basis);
        assert_eq!(parity.expectation(&s0.coefficients), 1.0);
    }

    #[test]
    fn initial_energy_is_the_bare_qubit_energy() {
        for p in [
            ModelParams::default().validate().unwrap(),
            ModelParams { lambda: 1.3, delta: -0.7, mu: 0.4, gamma: 1.0, ..Default::default() }
                .validate()
                .unwrap(),
        ] {
            let basis = build_basis(p.j(), 12);
            let h = build_hamiltonian(&p, &basis);
            let s0 = initial_state(&basis);
            assert_relative_eq!(h.expectation(&s0.coefficients), -50.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn product_state_reductions_are_pure() {
        let basis = build_basis(0.5, 4);
        let s0 = initial_state(&basis);
        for sub in [Subsystem::Qubit, Subsystem::Field] {
            let rho = reduced_density(&s0, &basis, sub);
            assert_relative_eq!(rho.trace(), 1.0, epsilon = 1e-14);
            assert_relative_eq!(rho.purity(), 1.0, epsilon = 1e-14);
        }
        assert_eq!(subsystem_survivals(&s0, &basis), (1.0, 1.0));
        let (jx, jy, jz, pol) = bloch_and_purity(&s0, &basis).unwrap();
        assert_eq!((jx, jy), (0.0, 0.0));
        assert_relative_eq!(jz, -0.5, epsilon = 1e-15);
        assert_relative_eq!(pol, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn reductions_share_their_nonzero_spectrum() {
        // A correlated two-component state: the nonzero eigenvalues of ρ_q
        // and ρ_b must coincide (Schmidt decomposition).
        let basis = build_basis(0.5, 5);
        let nf = basis.n_max + 1;
        let amp = |re: f64, im: f64| C64::new(re, im);
        let mut c = vec![C64::new(0.0, 0.0); basis.dimension()];
        c[basis.index_of(0, 0)] = amp(0.6, 0.1);
        c[basis.index_of(0, 3)] = amp(-0.2, 0.3);
        c[basis.index_of(1, 1)] = amp(0.0, 0.55);
        c[basis.index_of(1, 4)] = amp(0.35, -0.25);
        let norm = c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut c {
            *z /= norm;
        }
        let st = QuenchState { coefficients: c, time: 1.0 };

        let rho_q = reduced_density(&st, &basis, Subsystem::Qubit);
        let rho_b = reduced_density(&st, &basis, Subsystem::Field);
        assert_relative_eq!(rho_q.trace(), 1.0, epsilon = 1e-12);
        assert_relative_eq!(rho_b.trace(), 1.0, epsilon = 1e-12);
        assert_relative_eq!(rho_q.purity(), rho_b.purity(), epsilon = 1e-12);

        let eq = rho_q.eigenvalues().unwrap();
        let mut eb = rho_b.eigenvalues().unwrap();
        assert!(eb.iter().all(|&x| x > -1e-12));
        eb.reverse();
        for (a, b) in eq.iter().rev().zip(eb.iter()) {
            assert_relative_eq!(a, b, epsilon = 1e-10);
        }
        assert_eq!(nf, 6);
    }

    #[test]
    fn qubit_purity_follows_the_bloch_length() {
        let basis = build_basis(0.5, 3);
        let mut c = vec![C64::new(0.0, 0.0); basis.dimension()];
        c[basis.index_of(0, 0)] = C64::new(0.8, 0.0);
        c[basis.index_of(1, 1)] = C64::new(0.0, 0.6);
        let st = QuenchState { coefficients: c, time: 0.0 };
        let rho = reduced_density(&st, &basis, Subsystem::Qubit);
        let (_, _, jz, pol) = bloch_and_purity(&st, &basis).unwrap();
        assert_relative_eq!(rho.purity(), (pol * pol + 1.0) / 2.0, epsilon = 1e-12);
        assert_relative_eq!(jz, 0.5 * (0.36 - 0.64), epsilon = 1e-12);
        // A balanced split gives the maximally mixed qubit: ℘ = 0, Tr ρ² = ½.
        let mut c = vec![C64::new(0.0, 0.0); basis.dimension()];
        c[basis.index_of(0, 0)] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        c[basis.index_of(1, 1)] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let st = QuenchState { coefficients: c, time: 0.0 };
        let rho = reduced_density(&st, &basis, Subsystem::Qubit);
        let (_, _, _, pol) = bloch_and_purity(&st, &basis).unwrap();
        assert!(pol < 1e-14);
        assert_relative_eq!(rho.purity(), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn bloch_parametrization_requires_one_qubit() {
        let basis = build_basis(1.0, 3);
        let s0 = initial_state(&basis);
        assert!(matches!(bloch_and_purity(&s0, &basis), Err(Error::RequiresSingleQubit(2))));
    }

    #[test]
    fn tail_weight_sees_only_the_top_levels() {
        let basis = build_basis(0.5, 10);
        let mut c = vec![C64::new(0.0, 0.0); basis.dimension()];
        c[basis.index_of(0, 0)] = C64::new(0.8, 0.0);
        c[basis.index_of(1, 10)] = C64::new(0.6, 0.0);
        let st = QuenchState { coefficients: c, time: 0.0 };
        assert_relative_eq!(tail_weight(&st, &basis, 0.9), 0.36, epsilon = 1e-15);
        assert_relative_eq!(tail_weight(&st, &basis, 0.5), 0.36, epsilon = 1e-15);
        assert_eq!(tail_weight(&initial_state(&basis), &basis, 0.5), 0.0);
    }
}
