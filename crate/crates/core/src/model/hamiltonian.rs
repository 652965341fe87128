//! Hamiltonian assembly in the ladder and coordinate-momentum forms.
//!
//! The two builders are intentionally independent. `build_hamiltonian`
//! enumerates ladder matrix elements of
//!
//! ```text
//! H = ω (b†b + R Jz) + 2√(NR) { λ [(b†+b) Jx − iδ (b†−b) Jy] + μ (b†+b)(Jz + γj) }
//! ```
//!
//! directly in the |m,n⟩ basis, while `build_hamiltonian_coordinate_form`
//! multiplies out the scaled form
//!
//! ```text
//! h = H/(NRω) = −1/(2NR) + (q²+p²)/2 + √2 N (μγ/ω) q + B·J ,
//! B = ( √8(λ/ω) q , −√8(λδ/ω) p , 1/N + √8(μ/ω) q )
//! ```
//!
//! from operator blocks. The element-wise agreement of the two routes is a
//! regression test for the double appearance of μ in the coordinate form.
//! The quadrature squares in q²+p² use exact matrix elements of the squared
//! operators; squaring the truncated q and p would corrupt the top Fock
//! level and the agreement would be lost there.

use super::basis::HilbertBasis;
use super::op::{CsrMatrix, OperatorMatrix, Symmetry};
use super::params::ModelParams;
use nalgebra::DMatrix;

/// ε = E/(NRω), the dimensionless energy of the scaled Hamiltonian.
pub fn scaled_energy(energy: f64, params: &ModelParams) -> f64 {
    energy / (params.nr() * params.omega)
}

/// Ladder-form assembly; real symmetric, sparse storage.
pub fn build_hamiltonian(params: &ModelParams, basis: &HilbertBasis) -> OperatorMatrix {
    let j = basis.j;
    let nf = basis.n_max + 1;
    let mc = basis.m_count();
    let dim = basis.dimension();
    let g = 2.0 * params.nr().sqrt();
    let co_rotating = 0.5 * (1.0 + params.delta);
    let counter_rotating = 0.5 * (1.0 - params.delta);

    let mut t: Vec<(usize, usize, f64)> = Vec::with_capacity(7 * dim);
    for k in 0..mc {
        let m = k as f64 - j;
        for n in 0..nf {
            let row = basis.index_of(k, n);
            t.push((row, row, params.omega * (n as f64 + params.r * m)));

            // λ (b†+b)Jx − iλδ (b†−b)Jy = λ [ (1+δ)/2 (b†J− + bJ+) + (1−δ)/2 (b†J+ + bJ−) ]
            if k + 1 < mc {
                let c_up = (j * (j + 1.0) - m * (m + 1.0)).max(0.0).sqrt();
                if n + 1 < nf {
                    let v = g * params.lambda * counter_rotating * ((n + 1) as f64).sqrt() * c_up;
                    let to = basis.index_of(k + 1, n + 1);
                    t.push((to, row, v));
                    t.push((row, to, v));
                }
                if n > 0 {
                    let v = g * params.lambda * co_rotating * (n as f64).sqrt() * c_up;
                    let to = basis.index_of(k + 1, n - 1);
                    t.push((to, row, v));
                    t.push((row, to, v));
                }
            }

            // μ (b†+b)(Jz + γj), diagonal in m
            if params.mu != 0.0 && n + 1 < nf {
                let v = g * params.mu * (m + params.gamma * j) * ((n + 1) as f64).sqrt();
                let to = basis.index_of(k, n + 1);
                t.push((to, row, v));
                t.push((row, to, v));
            }
        }
    }
    OperatorMatrix::sparse(CsrMatrix::from_triplets(dim, &t), Symmetry::Symmetric, false)
}

/// Coordinate-form assembly; dense storage (test and validation route).
pub fn build_hamiltonian_coordinate_form(
    params: &ModelParams,
    basis: &HilbertBasis,
) -> OperatorMatrix {
    let j = basis.j;
    let nf = basis.n_max + 1;
    let mc = basis.m_count();
    let nr = params.nr();
    let n_qubits = f64::from(params.n_qubits);
    let omega = params.omega;
    let quad_scale = 1.0 / (2.0 * nr).sqrt();

    let eye_s = DMatrix::<f64>::identity(mc, mc);
    let eye_b = DMatrix::<f64>::identity(nf, nf);

    let mut jx = DMatrix::<f64>::zeros(mc, mc);
    let mut jy_stored = DMatrix::<f64>::zeros(mc, mc); // iJy
    let mut jz = DMatrix::<f64>::zeros(mc, mc);
    for k in 0..mc {
        let m = k as f64 - j;
        jz[(k, k)] = m;
        if k + 1 < mc {
            let c = (j * (j + 1.0) - m * (m + 1.0)).max(0.0).sqrt();
            jx[(k + 1, k)] = 0.5 * c;
            jx[(k, k + 1)] = 0.5 * c;
            jy_stored[(k + 1, k)] = 0.5 * c;
            jy_stored[(k, k + 1)] = -0.5 * c;
        }
    }

    let mut q_b = DMatrix::<f64>::zeros(nf, nf);
    let mut p_b_stored = DMatrix::<f64>::zeros(nf, nf); // ip
    let mut kinetic_b = DMatrix::<f64>::zeros(nf, nf); // (q²+p²)/2, exact elements
    for n in 0..nf {
        kinetic_b[(n, n)] = (2.0 * n as f64 + 1.0) / (2.0 * nr);
        if n + 1 < nf {
            let c = quad_scale * ((n + 1) as f64).sqrt();
            q_b[(n + 1, n)] = c;
            q_b[(n, n + 1)] = c;
            p_b_stored[(n, n + 1)] = c;
            p_b_stored[(n + 1, n)] = -c;
        }
    }

    // h = −1/(2NR) + (q²+p²)/2 + √2 N (μγ/ω) q + B·J with
    // By·Jy = −√8(λδ/ω) p Jy = +√8(λδ/ω) (iJy)⊗(ip)
    let mut h = eye_s.kronecker(&eye_b) * (-1.0 / (2.0 * nr));
    h += eye_s.kronecker(&kinetic_b);
    h += eye_s.kronecker(&q_b) * (2.0_f64.sqrt() * n_qubits * params.mu * params.gamma / omega);
    h += jx.kronecker(&q_b) * (8.0_f64.sqrt() * params.lambda / omega);
    h += jy_stored.kronecker(&p_b_stored) * (8.0_f64.sqrt() * params.lambda * params.delta / omega);
    h += jz.kronecker(&eye_b) * (1.0 / n_qubits);
    h += jz.kronecker(&q_b) * (8.0_f64.sqrt() * params.mu / omega);

    OperatorMatrix::dense(h * (nr * omega), Symmetry::Symmetric, false)
}
