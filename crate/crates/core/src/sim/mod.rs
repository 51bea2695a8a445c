//! Dense statevector engine.

mod dense;
mod gates;
mod ising;
mod state;

pub use dense::{
    build_dense_unitary, embed_single, expm_evolve, matrix_of, phase_distance, CMatrix,
    DenseHamiltonian, Operation, MAX_DENSE_QUBITS,
};
pub use gates::{
    mat2_mul, DiagonalTwoQubitGate, Generator, Mat2, RotationGate, SingleQubitGate,
};
pub use ising::{
    evolve_diagonal, evolve_driven_diagonal, evolve_ising_diagonal, pair_count, pairs, IsingSpec,
};
pub(crate) use ising::pair_offset;
pub use state::{fidelity, Statevector, MAX_QUBITS};
