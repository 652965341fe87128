//! Dense symmetric diagonalization, optionally per parity block.
//!
//! The Hamiltonian is real symmetric in the |m,n⟩ basis, so the full solve
//! stays in real arithmetic. When the parity-violating coupling vanishes the
//! Hamiltonian is block-diagonal in the (−1)^(n̂+n̂*) eigenbasis, which is a
//! plain index partition here; solving the two halves independently costs a
//! quarter of the unblocked solve and labels every eigenstate.

use crate::error::{Error, Result};
use crate::model::{HilbertBasis, ModelParams, OperatorMatrix};
use faer::{Mat, Side};
use nalgebra::DMatrix;

/// Full spectrum of a truncated Hamiltonian with provenance.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub params: ModelParams,
    pub n_max: usize,
    /// Ascending eigenvalues (energy units).
    pub energies: Vec<f64>,
    /// Column i is the eigenvector of `energies[i]` in full-basis coordinates.
    pub vectors: DMatrix<f64>,
    /// Parity label (+1/−1) per eigenstate when solved per block.
    pub block_labels: Option<Vec<i8>>,
}

impl EigenDecomposition {
    pub fn dimension(&self) -> usize {
        self.energies.len()
    }

    pub fn ground_energy(&self) -> f64 {
        self.energies[0]
    }

    /// Eigenvalues as scaled energies ε_i = E_i/(NRω).
    pub fn scaled_energies(&self) -> Vec<f64> {
        let scale = self.params.nr() * self.params.omega;
        self.energies.iter().map(|e| e / scale).collect()
    }

    pub fn spectral_span(&self) -> f64 {
        self.energies.last().unwrap() - self.energies.first().unwrap()
    }

    pub fn vector(&self, i: usize) -> nalgebra::DVectorView<'_, f64> {
        self.vectors.column(i)
    }

    /// max |VᵀV − I|: exact-arithmetic zero for an orthonormal set.
    pub fn orthonormality_defect(&self) -> f64 {
        let gram = self.vectors.transpose() * &self.vectors;
        let mut worst: f64 = 0.0;
        for i in 0..gram.nrows() {
            for k in 0..gram.ncols() {
                let target = if i == k { 1.0 } else { 0.0 };
                worst = worst.max((gram[(i, k)] - target).abs());
            }
        }
        worst
    }

    /// max over i of ‖H v_i − E_i v_i‖_∞, evaluated against the given H.
    pub fn residual_defect(&self, h: &OperatorMatrix) -> f64 {
        let dim = self.dimension();
        let mut x = vec![0.0; dim];
        let mut y = vec![0.0; dim];
        let mut worst: f64 = 0.0;
        for i in 0..dim {
            for (r, xr) in x.iter_mut().enumerate() {
                *xr = self.vectors[(r, i)];
            }
            h.matvec(&x, &mut y);
            for r in 0..dim {
                worst = worst.max((y[r] - self.energies[i] * x[r]).abs());
            }
        }
        worst
    }
}

/// Real symmetric eigendecomposition: ascending eigenvalues + orthonormal
/// eigenvector columns.
pub fn solve_dense_symmetric(a: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let n = a.nrows();
    let m = Mat::from_fn(n, n, |i, k| a[(i, k)]);
    let eig = m
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| Error::SolverFailure { residual: f64::NAN })?;
    let energies: Vec<f64> = (0..n).map(|i| eig.S().column_vector()[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |i, k| eig.U()[(i, k)]);
    Ok((energies, vectors))
}

/// Diagonalizes H. With `use_parity_blocks` (valid only when μ = 0 keeps the
/// parity structure) the two sub-problems are solved independently and the
/// merged spectrum carries per-state parity labels.
pub fn diagonalize(
    h: &OperatorMatrix,
    params: &ModelParams,
    basis: &HilbertBasis,
    use_parity_blocks: bool,
) -> Result<EigenDecomposition> {
    if h.dimension != basis.dimension() {
        return Err(Error::GridMismatch(format!(
            "operator dimension {} does not match basis dimension {}",
            h.dimension,
            basis.dimension()
        )));
    }

    let (energies, vectors, block_labels) = if use_parity_blocks {
        if params.mu != 0.0 {
            return Err(Error::InvalidParameter {
                field: "mu",
                message: "parity blocking requires mu = 0".into(),
            });
        }
        let mut merged: Vec<(f64, usize, i8)> = Vec::with_capacity(h.dimension);
        let mut scattered = DMatrix::<f64>::zeros(h.dimension, h.dimension);
        let mut col = 0;
        for parity in [1i8, -1i8] {
            let idx = basis.parity_indices(parity);
            let sub = h.dense_submatrix(&idx);
            let (es, vs) = solve_dense_symmetric(&sub)?;
            for (k, e) in es.into_iter().enumerate() {
                for (local, &global) in idx.iter().enumerate() {
                    scattered[(global, col)] = vs[(local, k)];
                }
                merged.push((e, col, parity));
                col += 1;
            }
        }
        merged.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let energies: Vec<f64> = merged.iter().map(|t| t.0).collect();
        let labels: Vec<i8> = merged.iter().map(|t| t.2).collect();
        let mut vectors = DMatrix::<f64>::zeros(h.dimension, h.dimension);
        for (dst, &(_, src, _)) in merged.iter().enumerate() {
            vectors.column_mut(dst).copy_from(&scattered.column(src));
        }
        (energies, vectors, Some(labels))
    } else {
        let (es, vs) = solve_dense_symmetric(&h.to_dense())?;
        (es, vs, None)
    };

    let decomposition = EigenDecomposition {
        params: *params,
        n_max: basis.n_max,
        energies,
        vectors,
        block_labels,
    };

    let residual = decomposition.residual_defect(h);
    if residual > 1e-7 * h.max_abs().max(1.0) {
        return Err(Error::SolverFailure { residual });
    }
    Ok(decomposition)
}
