//! Quasispin, boson, parity and M± operator matrices on the product basis.
//!
//! Conventions: J_± |j,m⟩ = √(j(j+1) − m(m±1)) |j,m±1⟩,
//! b†|n⟩ = √(n+1)|n+1⟩ truncated at n_max, and the scaled quadratures
//! q = (b†+b)/√(2NR), p = i(b†−b)/√(2NR) with [q,p] = i/NR away from the
//! truncation edge. The purely imaginary J_y and p are stored as the real
//! matrices of iJ_y and ip with the imaginary tag set.

use super::basis::HilbertBasis;
use super::op::{CsrMatrix, OperatorMatrix, Symmetry};
use super::params::ModelParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinComponent {
    X,
    Y,
    Z,
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BosonKind {
    Create,
    Annihilate,
    Number,
    /// Scaled coordinate q = (b†+b)/√(2NR).
    Position,
    /// Scaled momentum p = i(b†−b)/√(2NR); stored as the real matrix of ip.
    Momentum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MSign {
    Plus,
    Minus,
}

/// √(j(j+1) − m(m+1)), the raising coefficient out of projection m.
fn raise_coeff(j: f64, m: f64) -> f64 {
    (j * (j + 1.0) - m * (m + 1.0)).max(0.0).sqrt()
}

/// Collective quasispin component on the product basis (identity on the
/// Fock factor). J_y comes back with the imaginary tag, storage i·J_y.
pub fn quasispin_operator(basis: &HilbertBasis, component: SpinComponent) -> OperatorMatrix {
    let nf = basis.n_max + 1;
    let mc = basis.m_count();
    let dim = basis.dimension();
    match component {
        SpinComponent::Z => {
            let diag = basis.states.iter().map(|s| s.m).collect();
            OperatorMatrix::diagonal(diag)
        }
        _ => {
            let mut t: Vec<(usize, usize, f64)> = Vec::new();
            for k in 0..mc.saturating_sub(1) {
                let m = k as f64 - basis.j;
                let c = raise_coeff(basis.j, m);
                for n in 0..nf {
                    let lo = basis.index_of(k, n);
                    let hi = basis.index_of(k + 1, n);
                    match component {
                        SpinComponent::Plus => t.push((hi, lo, c)),
                        SpinComponent::Minus => t.push((lo, hi, c)),
                        SpinComponent::X => {
                            t.push((hi, lo, 0.5 * c));
                            t.push((lo, hi, 0.5 * c));
                        }
                        // storage for J_y is iJ_y = (J_+ − J_−)/2
                        SpinComponent::Y => {
                            t.push((hi, lo, 0.5 * c));
                            t.push((lo, hi, -0.5 * c));
                        }
                        SpinComponent::Z => unreachable!(),
                    }
                }
            }
            let (sym, imag) = match component {
                SpinComponent::X => (Symmetry::Symmetric, false),
                SpinComponent::Y => (Symmetry::Antisymmetric, true),
                _ => (Symmetry::General, false),
            };
            OperatorMatrix::sparse(CsrMatrix::from_triplets(dim, &t), sym, imag)
        }
    }
}

/// Boson-mode operator on the product basis (identity on the qubit factor).
/// The quadratures use the effective Planck constant 1/NR from `params`.
pub fn boson_operator(
    basis: &HilbertBasis,
    kind: BosonKind,
    params: &ModelParams,
) -> OperatorMatrix {
    let nf = basis.n_max + 1;
    let mc = basis.m_count();
    let dim = basis.dimension();
    match kind {
        BosonKind::Number => {
            let diag = basis.states.iter().map(|s| s.n as f64).collect();
            OperatorMatrix::diagonal(diag)
        }
        _ => {
            let scale = 1.0 / (2.0 * params.nr()).sqrt();
            let mut t: Vec<(usize, usize, f64)> = Vec::new();
            for k in 0..mc {
                for n in 0..nf - 1 {
                    let lo = basis.index_of(k, n);
                    let hi = basis.index_of(k, n + 1);
                    let c = ((n + 1) as f64).sqrt();
                    match kind {
                        BosonKind::Create => t.push((hi, lo, c)),
                        BosonKind::Annihilate => t.push((lo, hi, c)),
                        BosonKind::Position => {
                            t.push((hi, lo, scale * c));
                            t.push((lo, hi, scale * c));
                        }
                        // storage for p is ip = (b − b†)/√(2NR)
                        BosonKind::Momentum => {
                            t.push((lo, hi, scale * c));
                            t.push((hi, lo, -scale * c));
                        }
                        BosonKind::Number => unreachable!(),
                    }
                }
            }
            let (sym, imag) = match kind {
                BosonKind::Position => (Symmetry::Symmetric, false),
                BosonKind::Momentum => (Symmetry::Antisymmetric, true),
                _ => (Symmetry::General, false),
            };
            OperatorMatrix::sparse(CsrMatrix::from_triplets(dim, &t), sym, imag)
        }
    }
}

/// Generalized parity Π = (−1)^n (−1)^(n*), diagonal ±1.
pub fn parity_operator(basis: &HilbertBasis) -> OperatorMatrix {
    let diag = (0..basis.dimension()).map(|i| f64::from(basis.parity_of(i))).collect();
    OperatorMatrix::diagonal(diag)
}

/// M_± = n ± n* with n* = J_z + j; conserved at δ = ±1 when μ = 0.
pub fn m_operator(basis: &HilbertBasis, sign: MSign) -> OperatorMatrix {
    let diag = basis
        .states
        .iter()
        .map(|s| {
            let n_star = s.m + basis.j;
            match sign {
                MSign::Plus => s.n as f64 + n_star,
                MSign::Minus => s.n as f64 - n_star,
            }
        })
        .collect();
    OperatorMatrix::diagonal(diag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::basis::build_basis;
    use crate::C64;
    use nalgebra::DMatrix;

    fn commutator(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
        a * b - b * a
    }

    fn max_abs(m: &DMatrix<C64>) -> f64 {
        m.iter().fold(0.0f64, |w, z| w.max(z.norm()))
    }

    #[test]
    fn jz_is_diagonal_in_m() {
        let b = build_basis(0.5, 0);
        let jz = quasispin_operator(&b, SpinComponent::Z).to_dense();
        assert_eq!(jz[(0, 0)], -0.5);
        assert_eq!(jz[(1, 1)], 0.5);
    }

    #[test]
    fn jplus_raises_with_unit_coefficient_at_j_half() {
        let b = build_basis(0.5, 0);
        let jp = quasispin_operator(&b, SpinComponent::Plus).to_dense();
        assert_eq!(jp[(1, 0)], 1.0);
        assert_eq!(jp[(0, 1)], 0.0);
    }

    #[test]
    fn angular_momentum_commutators_close() {
        // [Jx,Jy] = iJz, and cyclic, to 1e-14 (1e-13 for larger j)
        for two_j in 1..=5u32 {
            let j = f64::from(two_j) / 2.0;
            let b = build_basis(j, 0);
            let jx = quasispin_operator(&b, SpinComponent::X).to_complex_dense();
            let jy = quasispin_operator(&b, SpinComponent::Y).to_complex_dense();
            let jz = quasispin_operator(&b, SpinComponent::Z).to_complex_dense();
            let i = C64::new(0.0, 1.0);
            let tol = if two_j <= 4 { 1e-14 } else { 1e-13 };
            assert!(max_abs(&(commutator(&jx, &jy) - jz.map(|z| i * z))) < tol);
            assert!(max_abs(&(commutator(&jy, &jz) - jx.map(|z| i * z))) < tol);
            assert!(max_abs(&(commutator(&jz, &jx) - jy.map(|z| i * z))) < tol);
        }
    }

    #[test]
    fn number_operator_counts_quanta_per_m_block() {
        let b = build_basis(0.5, 2);
        let p = ModelParams::default();
        let n = boson_operator(&b, BosonKind::Number, &p).to_dense();
        for k in 0..2 {
            for q in 0..3 {
                assert_eq!(n[(b.index_of(k, q), b.index_of(k, q))], q as f64);
            }
        }
    }

    #[test]
    fn vacuum_quadrature_variance_is_half_effective_planck() {
        let b = build_basis(0.5, 4);
        let p = ModelParams::single_qubit(100.0, 0.0, 0.0);
        let q = boson_operator(&b, BosonKind::Position, &p).to_dense();
        let q2 = &q * &q;
        let vac = b.index_of(0, 0);
        assert!((q2[(vac, vac)] - 0.005).abs() < 1e-15);
    }

    #[test]
    fn quadrature_commutator_away_from_truncation_edge() {
        let b = build_basis(0.5, 12);
        let p = ModelParams::single_qubit(25.0, 0.0, 0.0);
        let q = boson_operator(&b, BosonKind::Position, &p).to_complex_dense();
        let pm = boson_operator(&b, BosonKind::Momentum, &p).to_complex_dense();
        let comm = commutator(&q, &pm);
        let expect = C64::new(0.0, 1.0 / 25.0);
        for k in 0..2 {
            for n in 0..12 {
                let idx = b.index_of(k, n);
                assert!((comm[(idx, idx)] - expect).norm() < 1e-15);
            }
            // the edge state carries the truncation defect
            let edge = b.index_of(k, 12);
            assert!((comm[(edge, edge)] - expect).norm() > 0.1 / 25.0);
        }
    }

    #[test]
    fn tagged_storages_are_antisymmetric() {
        let b = build_basis(1.0, 6);
        let p = ModelParams::default();
        let jy = quasispin_operator(&b, SpinComponent::Y);
        let pm = boson_operator(&b, BosonKind::Momentum, &p);
        assert!(jy.imaginary && pm.imaginary);
        assert_eq!(jy.symmetry_defect(), 0.0);
        assert_eq!(pm.symmetry_defect(), 0.0);
    }

    #[test]
    fn parity_squares_to_identity_and_matches_labels() {
        let b = build_basis(1.5, 5);
        let pi = parity_operator(&b).to_dense();
        for i in 0..b.dimension() {
            assert_eq!(pi[(i, i)] * pi[(i, i)], 1.0);
            assert_eq!(pi[(i, i)], f64::from(b.parity_of(i)));
        }
    }

    #[test]
    fn m_operators_count_combined_quanta() {
        let b = build_basis(0.5, 3);
        let mp = m_operator(&b, MSign::Plus).to_dense();
        let mm = m_operator(&b, MSign::Minus).to_dense();
        let i = b.index_of(1, 2); // m=+1/2, n=2: n*=1
        assert_eq!(mp[(i, i)], 3.0);
        assert_eq!(mm[(i, i)], 1.0);
    }
}
