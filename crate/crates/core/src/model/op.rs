//! Real-storage operator matrices.
//!
//! Every operator of the model is either real in the |m,n⟩ basis or purely
//! imaginary (Jy, p). The imaginary ones are kept as the real matrix of
//! `i·A` together with a tag, so all storage stays real and the Hamiltonian
//! can go to a real symmetric eigensolver. Expectation values account for
//! the tag explicitly.

use crate::C64;
use nalgebra::DMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
    General,
}

/// Compressed sparse rows; the stored pattern is the full matrix, not a
/// triangle, so matrix-vector products need no branching.
#[derive(Debug, Clone)]
pub struct CsrMatrix {
    pub dim: usize,
    pub row_ptr: Vec<usize>,
    pub cols: Vec<u32>,
    pub vals: Vec<f64>,
}

impl CsrMatrix {
    /// Builds from (row, col, value) triplets; duplicate positions are summed.
    pub fn from_triplets(dim: usize, triplets: &[(usize, usize, f64)]) -> Self {
        let mut counts = vec![0usize; dim + 1];
        for &(r, _, _) in triplets {
            counts[r + 1] += 1;
        }
        for i in 0..dim {
            counts[i + 1] += counts[i];
        }
        let mut cols = vec![0u32; triplets.len()];
        let mut vals = vec![0.0; triplets.len()];
        let mut cursor = counts.clone();
        for &(r, c, v) in triplets {
            let k = cursor[r];
            cols[k] = c as u32;
            vals[k] = v;
            cursor[r] += 1;
        }
        // sort each row by column and merge duplicates
        let mut row_ptr = vec![0usize; dim + 1];
        let mut out_cols = Vec::with_capacity(cols.len());
        let mut out_vals = Vec::with_capacity(vals.len());
        for r in 0..dim {
            let (lo, hi) = (counts[r], counts[r + 1]);
            let mut row: Vec<(u32, f64)> =
                cols[lo..hi].iter().copied().zip(vals[lo..hi].iter().copied()).collect();
            row.sort_by_key(|&(c, _)| c);
            for (c, v) in row {
                if let Some(last) = out_cols.last() {
                    if *last == c && out_cols.len() > row_ptr[r] {
                        *out_vals.last_mut().unwrap() += v;
                        continue;
                    }
                }
                out_cols.push(c);
                out_vals.push(v);
            }
            row_ptr[r + 1] = out_cols.len();
        }
        CsrMatrix { dim, row_ptr, cols: out_cols, vals: out_vals }
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim);
        debug_assert_eq!(y.len(), self.dim);
        for r in 0..self.dim {
            let mut acc = 0.0;
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.vals[k] * x[self.cols[k] as usize];
            }
            y[r] = acc;
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for r in 0..self.dim {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                m[(r, self.cols[k] as usize)] += self.vals[k];
            }
        }
        m
    }

    /// Dense principal submatrix on the given (ascending) index subset.
    /// Entries coupling the subset to its complement are dropped; callers
    /// use this for parity blocks, where no such entries exist.
    pub fn dense_submatrix(&self, indices: &[usize]) -> DMatrix<f64> {
        let mut pos = vec![usize::MAX; self.dim];
        for (local, &global) in indices.iter().enumerate() {
            pos[global] = local;
        }
        let mut m = DMatrix::zeros(indices.len(), indices.len());
        for (local_r, &global_r) in indices.iter().enumerate() {
            for k in self.row_ptr[global_r]..self.row_ptr[global_r + 1] {
                let local_c = pos[self.cols[k] as usize];
                if local_c != usize::MAX {
                    m[(local_r, local_c)] += self.vals[k];
                }
            }
        }
        m
    }

    /// Max |A_ij| over entries coupling the index subset to its complement.
    pub fn max_offblock(&self, indices: &[usize]) -> f64 {
        let mut inside = vec![false; self.dim];
        for &g in indices {
            inside[g] = true;
        }
        let mut worst: f64 = 0.0;
        for r in 0..self.dim {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                if inside[r] != inside[self.cols[k] as usize] {
                    worst = worst.max(self.vals[k].abs());
                }
            }
        }
        worst
    }
}

#[derive(Debug, Clone)]
pub enum Storage {
    Dense(DMatrix<f64>),
    Sparse(CsrMatrix),
    Diagonal(Vec<f64>),
}

/// A real-stored operator in the `HilbertBasis` ordering.
///
/// When `imaginary` is set the physical operator is `A = −i·S` with `S` the
/// stored real (antisymmetric) matrix, i.e. the storage holds `iA`.
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    pub dimension: usize,
    pub symmetry: Symmetry,
    pub imaginary: bool,
    pub storage: Storage,
}

impl OperatorMatrix {
    pub fn dense(m: DMatrix<f64>, symmetry: Symmetry, imaginary: bool) -> Self {
        assert_eq!(m.nrows(), m.ncols());
        OperatorMatrix { dimension: m.nrows(), symmetry, imaginary, storage: Storage::Dense(m) }
    }

    pub fn sparse(m: CsrMatrix, symmetry: Symmetry, imaginary: bool) -> Self {
        OperatorMatrix { dimension: m.dim, symmetry, imaginary, storage: Storage::Sparse(m) }
    }

    pub fn diagonal(d: Vec<f64>) -> Self {
        OperatorMatrix {
            dimension: d.len(),
            symmetry: Symmetry::Symmetric,
            imaginary: false,
            storage: Storage::Diagonal(d),
        }
    }

    /// Stored real matrix as dense (tag not applied).
    pub fn to_dense(&self) -> DMatrix<f64> {
        match &self.storage {
            Storage::Dense(m) => m.clone(),
            Storage::Sparse(s) => s.to_dense(),
            Storage::Diagonal(d) => DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(d)),
        }
    }

    /// The physical operator as a complex dense matrix (applies the tag).
    pub fn to_complex_dense(&self) -> DMatrix<C64> {
        let s = self.to_dense();
        let factor = if self.imaginary { C64::new(0.0, -1.0) } else { C64::new(1.0, 0.0) };
        DMatrix::from_fn(self.dimension, self.dimension, |r, c| factor * s[(r, c)])
    }

    /// y = S x with the stored real matrix.
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        match &self.storage {
            Storage::Dense(m) => {
                for r in 0..self.dimension {
                    let mut acc = 0.0;
                    for c in 0..self.dimension {
                        acc += m[(r, c)] * x[c];
                    }
                    y[r] = acc;
                }
            }
            Storage::Sparse(s) => s.matvec(x, y),
            Storage::Diagonal(d) => {
                for r in 0..self.dimension {
                    y[r] = d[r] * x[r];
                }
            }
        }
    }

    /// Dense principal submatrix of the stored matrix on an index subset.
    pub fn dense_submatrix(&self, indices: &[usize]) -> DMatrix<f64> {
        match &self.storage {
            Storage::Sparse(s) => s.dense_submatrix(indices),
            _ => {
                let full = self.to_dense();
                DMatrix::from_fn(indices.len(), indices.len(), |r, c| {
                    full[(indices[r], indices[c])]
                })
            }
        }
    }

    /// S x for a complex vector (stored matrix only; tag not applied).
    pub fn matvec_complex(&self, x: &[C64]) -> Vec<C64> {
        let (re_in, im_in): (Vec<f64>, Vec<f64>) = x.iter().map(|z| (z.re, z.im)).unzip();
        let mut re_out = vec![0.0; self.dimension];
        let mut im_out = vec![0.0; self.dimension];
        self.matvec(&re_in, &mut re_out);
        self.matvec(&im_in, &mut im_out);
        re_out.into_iter().zip(im_out).map(|(re, im)| C64::new(re, im)).collect()
    }

    /// ⟨c|A|c⟩ for the physical (tag-aware) operator; real by Hermiticity.
    ///
    /// With A = S real symmetric this is Re(c†Sc); with A = −iS and S real
    /// antisymmetric it is Im(c†Sc).
    pub fn expectation(&self, c: &[C64]) -> f64 {
        let sc = self.matvec_complex(c);
        let mut acc = C64::new(0.0, 0.0);
        for (a, b) in c.iter().zip(sc.iter()) {
            acc += a.conj() * b;
        }
        if self.imaginary {
            acc.im
        } else {
            acc.re
        }
    }

    /// vᵀ S v for a real vector (tag-aware physical expectation of a real
    /// state: identically 0 for tagged operators, handled by the caller via
    /// `expectation` when exactness matters).
    pub fn quadratic_form(&self, v: &[f64]) -> f64 {
        let mut sv = vec![0.0; self.dimension];
        self.matvec(v, &mut sv);
        v.iter().zip(sv.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn max_abs(&self) -> f64 {
        match &self.storage {
            Storage::Dense(m) => m.iter().fold(0.0f64, |w, v| w.max(v.abs())),
            Storage::Sparse(s) => s.vals.iter().fold(0.0f64, |w, v| w.max(v.abs())),
            Storage::Diagonal(d) => d.iter().fold(0.0f64, |w, v| w.max(v.abs())),
        }
    }

    /// Verifies the symmetry tag against the stored entries.
    pub fn symmetry_defect(&self) -> f64 {
        let m = self.to_dense();
        let mut worst: f64 = 0.0;
        for r in 0..self.dimension {
            for c in 0..r {
                let d = match self.symmetry {
                    Symmetry::Symmetric => m[(r, c)] - m[(c, r)],
                    Symmetry::Antisymmetric => m[(r, c)] + m[(c, r)],
                    Symmetry::General => 0.0,
                };
                worst = worst.max(d.abs());
            }
        }
        if self.symmetry == Symmetry::Antisymmetric {
            for r in 0..self.dimension {
                worst = worst.max(m[(r, r)].abs());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csr_roundtrips_triplets() {
        let t = vec![(0, 1, 2.0), (1, 0, 2.0), (0, 1, 0.5), (2, 2, -1.0)];
        let m = CsrMatrix::from_triplets(3, &t);
        let d = m.to_dense();
        assert_eq!(d[(0, 1)], 2.5);
        assert_eq!(d[(1, 0)], 2.0);
        assert_eq!(d[(2, 2)], -1.0);
        assert_eq!(d[(0, 0)], 0.0);
    }

    #[test]
    fn sparse_and_dense_matvec_agree() {
        let t = vec![(0, 0, 1.0), (0, 2, 3.0), (1, 1, -2.0), (2, 0, 3.0)];
        let s = CsrMatrix::from_triplets(3, &t);
        let op = OperatorMatrix::sparse(s, Symmetry::General, false);
        let x = [1.0, 2.0, 3.0];
        let mut y_sparse = [0.0; 3];
        op.matvec(&x, &mut y_sparse);
        let dense = OperatorMatrix::dense(op.to_dense(), Symmetry::General, false);
        let mut y_dense = [0.0; 3];
        dense.matvec(&x, &mut y_dense);
        assert_eq!(y_sparse, y_dense);
    }

    #[test]
    fn tagged_expectation_is_imaginary_part() {
        // S = [[0,1],[-1,0]] antisymmetric, A = −iS has eigenvalues ±1 with
        // eigenvector (1, ±i)/√2; ⟨A⟩ in (1,i)/√2 must be +1.
        let s = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        let op = OperatorMatrix::dense(s, Symmetry::Antisymmetric, true);
        let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();
        let c = [C64::new(inv_sqrt2, 0.0), C64::new(0.0, inv_sqrt2)];
        assert!((op.expectation(&c) - 1.0).abs() < 1e-15);
        // and exactly 0 in a real state
        let c = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
        assert_eq!(op.expectation(&c), 0.0);
    }

    #[test]
    fn submatrix_extracts_blocks() {
        let t = vec![(0, 0, 1.0), (1, 1, 2.0), (2, 2, 3.0), (0, 2, 9.0), (2, 0, 9.0)];
        let s = CsrMatrix::from_triplets(3, &t);
        let block = s.dense_submatrix(&[0, 2]);
        assert_eq!(block[(0, 0)], 1.0);
        assert_eq!(block[(1, 1)], 3.0);
        assert_eq!(block[(0, 1)], 9.0);
        assert_eq!(s.max_offblock(&[0, 2]), 0.0);
        assert_eq!(s.max_offblock(&[0, 1]), 9.0);
    }
}
