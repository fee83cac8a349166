//! Negativity across a bipartition.
//!
//! `𝒩(ρ) = (‖ρ^{T_A}‖₁ − 1)/(d − 1)` where `A` is the focus (transposed)
//! subsystem and `d = 2^|A|`. For unit-trace `ρ` this equals
//! `2 Σ|λ⁻|/(d − 1)` over the negative partial-transpose eigenvalues, which is
//! the form computed here so that separable inputs come out exactly zero.

use crate::error::{Error, Result};
use crate::tensor::{
    hermitian_eigenvalues, outer, partial_trace, partial_transpose, DensityMatrix, QubitSubset, StateVector,
};
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativityValue {
    pub value: f64,
    /// Dimension of the transposed subsystem.
    pub focus_dim: usize,
}

fn check_proper(focus: &QubitSubset, num_qubits: usize) -> Result<()> {
    focus.validate_for(num_qubits)?;
    if focus.is_empty() || focus.len() >= num_qubits {
        return Err(Error::ImproperFocus);
    }
    Ok(())
}

/// Sum of `|λ|` over partial-transpose eigenvalues below the clamp window.
fn negative_mass(eigenvalues: &[f64]) -> f64 {
    eigenvalues
        .iter()
        .filter(|&&l| l < -tolerance::NEGATIVE_EIGEN_CLAMP)
        .map(|l| -l)
        .sum()
}

/// Negativity of `rho` with the qubits in `focus` transposed.
///
/// The input must be a valid density matrix; since [`DensityMatrix`] can only
/// be built through validating constructors, non-PSD inputs never reach here.
pub fn negativity(rho: &DensityMatrix, focus: &QubitSubset) -> Result<NegativityValue> {
    check_proper(focus, rho.num_qubits())?;
    let pt = partial_transpose(rho, focus)?;
    let eigenvalues = hermitian_eigenvalues(&pt)?;
    let focus_dim = 1usize << focus.len();
    let value = 2.0 * negative_mass(&eigenvalues) / (focus_dim - 1) as f64;
    Ok(NegativityValue { value, focus_dim })
}

/// `(‖ρ^{T_A}‖₁ − 1)/(d − 1)` evaluated literally, without clamping.
pub fn negativity_from_trace_norm(rho: &DensityMatrix, focus: &QubitSubset) -> Result<f64> {
    check_proper(focus, rho.num_qubits())?;
    let pt = partial_transpose(rho, focus)?;
    let norm: f64 = hermitian_eigenvalues(&pt)?.iter().map(|l| l.abs()).sum();
    Ok((norm - 1.0) / ((1usize << focus.len()) - 1) as f64)
}

/// Pure-state shortcut for a single-qubit focus: `2√(λ₁λ₂)` from the focus
/// qubit's reduced state.
pub fn pure_state_negativity(psi: &StateVector, focus: &QubitSubset) -> Result<NegativityValue> {
    if focus.len() != 1 {
        return Err(Error::MultiQubitFocus(focus.len()));
    }
    check_proper(focus, psi.num_qubits())?;
    let reduced = partial_trace(&outer(psi)?, focus)?;
    let m = reduced.matrix();
    // λ₁λ₂ = det of the 2×2 reduced state
    let det = m[(0, 0)].re * m[(1, 1)].re - m[(0, 1)].norm_sqr();
    Ok(NegativityValue {
        value: 2.0 * det.max(0.0).sqrt(),
        focus_dim: 2,
    })
}
