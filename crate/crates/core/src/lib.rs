//! Simulation and analysis toolkit for the extended Rabi model: one or a few
//! qubits coupled to a single soft bosonic mode,
//!
//! ```text
//! H = ω (b†b + R Jz) + 2√(NR) { λ [(b†+b) Jx − iδ (b†−b) Jy] + μ (b†+b)(Jz + γj) }
//! ```
//!
//! with `R = ω_q/ω` acting as a size parameter (the scaled quadratures obey
//! `[q,p] = i/NR`, so `R → ∞` is the classical limit). The crate covers
//!
//! * [`model`] — parameters, the truncated `|m,n⟩` product basis, operator
//!   matrices, and two independent Hamiltonian assembly routes;
//! * [`spectrum`] — dense (parity-blocked) diagonalization, adaptive Fock
//!   cutoffs, smoothed level densities, strength functions;
//! * [`semiclassics`] — the classical Hamiltonian, stationary points and
//!   their Hessian classification, vacuum phases, level densities from
//!   phase-space areas, ESQPT critical lines;
//! * [`quench`] — vacuum quench dynamics, survival probabilities, spectral
//!   infinite-time averages, reduced densities, Bloch vector and purity;
//! * [`phase_space`] — Wigner functions of the reduced field state and the
//!   phase-space overlap form of the field survival probability.
//!
//! Everything is kept real: the Hamiltonian is real symmetric in the
//! `|m,n⟩` basis, and the purely imaginary operators (`Jy`, `p`) are stored
//! as real matrices with an imaginary-unit tag.

pub mod error;
pub mod model;
pub mod phase_space;
pub mod quench;
pub mod semiclassics;
pub mod spectrum;

pub use error::{Error, Result};

/// Complex amplitude type used for state coefficients.
pub type C64 = num_complex::Complex64;
