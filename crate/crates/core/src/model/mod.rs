//! Model parameters, truncated Hilbert space, operators, Hamiltonian assembly.

mod basis;
mod hamiltonian;
mod op;
mod operators;
mod params;

pub use basis::{build_basis, BasisState, HilbertBasis};
pub use hamiltonian::{build_hamiltonian, build_hamiltonian_coordinate_form, scaled_energy};
pub use op::{CsrMatrix, OperatorMatrix, Storage, Symmetry};
pub use operators::{
    boson_operator, m_operator, parity_operator, quasispin_operator, BosonKind, MSign,
    SpinComponent,
};
pub use params::{validate_params, ModelParams};
