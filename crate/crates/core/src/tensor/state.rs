use super::{hermitian_eigenvalues, kron, qubit_mask, CMatrix, Complex};
use crate::error::{Error, Result};
use crate::tolerance;

fn qubits_for_len(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    Ok(len.trailing_zeros() as usize)
}

/// Normalized pure state of `n ≥ 1` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex>,
}

impl StateVector {
    /// Validates length, finiteness and normalization (`|‖ψ‖² − 1| ≤ 1e-9`).
    pub fn new(amplitudes: Vec<Complex>) -> Result<Self> {
        let num_qubits = qubits_for_len(amplitudes.len())?;
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("state vector"));
        }
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > tolerance::API_NORM {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self { num_qubits, amplitudes })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm. Intended for
    /// samplers; constructors of named families validate instead.
    pub fn normalized(amplitudes: Vec<Complex>) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::NotNormalized { norm_sqr: norm * norm });
        }
        Self::new(amplitudes.into_iter().map(|z| z / norm).collect())
    }

    /// Computational basis state `|bits⟩`, `bits[0]` being qubit 0.
    pub fn basis(bits: &[u8]) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::NotPowerOfTwo(1));
        }
        let mut index = 0;
        for &b in bits {
            if b > 1 {
                return Err(Error::InvalidParameter(format!("bit value {b}")));
            }
            index = (index << 1) | b as usize;
        }
        let mut amps = vec![Complex::new(0.0, 0.0); 1 << bits.len()];
        amps[index] = Complex::new(1.0, 0.0);
        Self::new(amps)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `self ⊗ other`, with `self` on the leading qubits.
    pub fn tensor(&self, other: &Self) -> Self {
        let v = kron(&CMatrix::column(&self.amplitudes), &CMatrix::column(&other.amplitudes));
        Self {
            num_qubits: self.num_qubits + other.num_qubits,
            amplitudes: v.as_slice().to_vec(),
        }
    }

    /// Applies a 2×2 matrix to one qubit.
    pub fn apply_single_qubit(&self, qubit: usize, gate: &CMatrix) -> Result<Self> {
        if qubit >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                index: qubit,
                num_qubits: self.num_qubits,
            });
        }
        if gate.rows() != 2 || gate.cols() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: gate.rows(),
            });
        }
        let mask = qubit_mask(qubit, self.num_qubits);
        let mut out = self.amplitudes.clone();
        for i in 0..self.amplitudes.len() {
            if i & mask != 0 {
                continue;
            }
            let a0 = self.amplitudes[i];
            let a1 = self.amplitudes[i | mask];
            out[i] = gate[(0, 0)] * a0 + gate[(0, 1)] * a1;
            out[i | mask] = gate[(1, 0)] * a0 + gate[(1, 1)] * a1;
        }
        Self::new(out)
    }

    /// Largest amplitude-wise distance.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.amplitudes.len() != other.amplitudes.len() {
            return f64::INFINITY;
        }
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Hermitian, unit-trace, positive-semidefinite operator on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    num_qubits: usize,
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Validates every density-matrix invariant, including an eigensolve for
    /// positivity.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let num_qubits = qubits_for_len(matrix.rows())?;
        let asymmetry = matrix.hermitian_asymmetry();
        if asymmetry > tolerance::API_NORM {
            return Err(Error::NotHermitian { asymmetry });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tolerance::API_NORM {
            return Err(Error::BadTrace { trace });
        }
        let min_eigenvalue = hermitian_eigenvalues(&matrix)?[0];
        if min_eigenvalue < tolerance::PSD_FLOOR {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self { num_qubits, matrix })
    }

    /// For matrices built by this module from already-valid inputs.
    fn trusted(num_qubits: usize, matrix: CMatrix) -> Self {
        debug_assert_eq!(matrix.rows(), 1 << num_qubits);
        Self { num_qubits, matrix }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// `tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        // tr(ρ²) = Σ_ij |ρ_ij|² for Hermitian ρ
        self.matrix.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Ordered set of distinct qubit positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QubitSubset(Vec<usize>);

impl QubitSubset {
    pub fn new(indices: impl Into<Vec<usize>>) -> Result<Self> {
        let indices = indices.into();
        for (pos, &q) in indices.iter().enumerate() {
            if indices[..pos].contains(&q) {
                return Err(Error::DuplicateQubit(q));
            }
        }
        Ok(Self(indices))
    }

    pub fn single(qubit: usize) -> Self {
        Self(vec![qubit])
    }

    pub fn all(num_qubits: usize) -> Self {
        Self((0..num_qubits).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, qubit: usize) -> bool {
        self.0.contains(&qubit)
    }

    pub fn validate_for(&self, num_qubits: usize) -> Result<()> {
        match self.0.iter().find(|&&q| q >= num_qubits) {
            Some(&index) => Err(Error::QubitOutOfRange { index, num_qubits }),
            None => Ok(()),
        }
    }
}

/// `|ψ⟩⟨ψ|`.
pub fn outer(psi: &StateVector) -> Result<DensityMatrix> {
    let norm_sqr = psi.norm_sqr();
    if (norm_sqr - 1.0).abs() > tolerance::API_NORM {
        return Err(Error::NotNormalized { norm_sqr });
    }
    let amps = psi.amplitudes();
    let d = amps.len();
    let mut m = CMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            m[(i, j)] = amps[i] * amps[j].conj();
        }
    }
    Ok(DensityMatrix::trusted(psi.num_qubits(), m))
}

/// Reduced state on `keep`; output qubit `i` is input qubit `keep[i]`.
pub fn partial_trace(rho: &DensityMatrix, keep: &QubitSubset) -> Result<DensityMatrix> {
    let n = rho.num_qubits();
    if keep.is_empty() {
        return Err(Error::EmptySubset);
    }
    keep.validate_for(n)?;
    let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(*q)).collect();
    let m = keep.len();

    // Full-register index for (kept bits, traced bits).
    let compose = |kept_bits: usize, traced_bits: usize| -> usize {
        let mut idx = 0;
        for (pos, &q) in keep.indices().iter().enumerate() {
            if kept_bits & (1 << (m - 1 - pos)) != 0 {
                idx |= qubit_mask(q, n);
            }
        }
        for (pos, &q) in traced.iter().enumerate() {
            if traced_bits & (1 << (traced.len() - 1 - pos)) != 0 {
                idx |= qubit_mask(q, n);
            }
        }
        idx
    };

    let dk = 1 << m;
    let dt = 1 << traced.len();
    let full = rho.matrix();
    let mut out = CMatrix::zeros(dk, dk);
    for r in 0..dk {
        for c in 0..dk {
            let mut acc = Complex::new(0.0, 0.0);
            for t in 0..dt {
                acc += full[(compose(r, t), compose(c, t))];
            }
            out[(r, c)] = acc;
        }
    }
    Ok(DensityMatrix::trusted(m, out))
}

/// Transposes the indices of the qubits in `subset`. The result is Hermitian
/// but generally not positive, so it is returned as a plain matrix.
pub fn partial_transpose(rho: &DensityMatrix, subset: &QubitSubset) -> Result<CMatrix> {
    partial_transpose_matrix(rho.matrix(), subset)
}

/// Partial transpose of any square `2ⁿ × 2ⁿ` matrix; applying it twice
/// returns the input exactly.
pub fn partial_transpose_matrix(m: &CMatrix, subset: &QubitSubset) -> Result<CMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let d = m.rows();
    let n = qubits_for_len(d)?;
    subset.validate_for(n)?;
    let mask: usize = subset.indices().iter().map(|&q| qubit_mask(q, n)).sum();
    let mut out = CMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            // swap the masked bits between row and column index
            let ni = (i & !mask) | (j & mask);
            let nj = (j & !mask) | (i & mask);
            out[(ni, nj)] = m[(i, j)];
        }
    }
    Ok(out)
}
