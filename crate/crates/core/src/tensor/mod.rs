//! Dense complex linear algebra for small multi-qubit systems.
//!
//! Basis convention: qubit 0 is the leftmost label `A₁` and the most
//! significant bit of a computational-basis index. For `n` qubits, qubit `q`
//! occupies bit `n - 1 - q`, so `|q₀q₁…⟩` has index `Σ q_i 2^{n-1-i}`.

mod eigen;
mod matrix;
mod state;

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, trace_norm_hermitian, HermitianEigen};
pub use matrix::{kron, CMatrix};
pub use state::{
    outer, partial_trace, partial_transpose, partial_transpose_matrix, DensityMatrix, QubitSubset, StateVector,
};

pub use num_complex::Complex64 as Complex;

/// Bit mask selecting `qubit` in an `n`-qubit basis index.
#[inline]
pub(crate) fn qubit_mask(qubit: usize, num_qubits: usize) -> usize {
    1 << (num_qubits - 1 - qubit)
}
