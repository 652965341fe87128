//! Truncated product basis |m⟩_q ⊗ |n⟩_b.

/// One basis ket |m, n⟩: quasispin projection m and Fock occupation n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisState {
    pub m: f64,
    pub n: usize,
}

/// Ordered basis of the truncated qubit–field Hilbert space.
///
/// States are enumerated m-major, n-minor: all Fock states of m = −j first,
/// then m = −j+1, and so on. With this canonical order the flat index is
/// `(m+j)(n_max+1) + n`, parity blocks are index-computable, and serialized
/// eigenvectors are reproducible.
#[derive(Debug, Clone)]
pub struct HilbertBasis {
    pub j: f64,
    pub n_max: usize,
    pub states: Vec<BasisState>,
}

/// Enumerates the basis for quasispin j (2j a non-negative integer) and
/// Fock cutoff n_max, with parity labels per (−1)^n (−1)^(m+j).
pub fn build_basis(j: f64, n_max: usize) -> HilbertBasis {
    let two_j = (2.0 * j).round();
    assert!(
        two_j >= 0.0 && (2.0 * j - two_j).abs() < 1e-12,
        "quasispin j must be a non-negative half-integer, got {j}"
    );
    let m_count = two_j as usize + 1;
    let mut states = Vec::with_capacity(m_count * (n_max + 1));
    for k in 0..m_count {
        let m = k as f64 - j;
        for n in 0..=n_max {
            states.push(BasisState { m, n });
        }
    }
    HilbertBasis { j, n_max, states }
}

impl HilbertBasis {
    pub fn dimension(&self) -> usize {
        self.states.len()
    }

    /// Number of quasispin projections, 2j+1.
    pub fn m_count(&self) -> usize {
        (2.0 * self.j).round() as usize + 1
    }

    /// Flat index of |m, n⟩; `m_index = m + j` counts projections from −j up.
    pub fn index_of(&self, m_index: usize, n: usize) -> usize {
        debug_assert!(m_index < self.m_count() && n <= self.n_max);
        m_index * (self.n_max + 1) + n
    }

    /// Inverse of `index_of`.
    pub fn state_of(&self, index: usize) -> BasisState {
        self.states[index]
    }

    /// Index of the qubit ground ⊗ field vacuum ket |m=−j, n=0⟩.
    pub fn vacuum_index(&self) -> usize {
        0
    }

    /// Generalized parity (−1)^n (−1)^(n*) of a basis ket, with
    /// n* = m + j the excited-qubit count.
    pub fn parity_of(&self, index: usize) -> i8 {
        let n = index % (self.n_max + 1);
        let m_index = index / (self.n_max + 1);
        if (n + m_index) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Indices of all kets with the requested parity, ascending.
    pub fn parity_indices(&self, parity: i8) -> Vec<usize> {
        (0..self.dimension()).filter(|&i| self.parity_of(i) == parity).collect()
    }
}
