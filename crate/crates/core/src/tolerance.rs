//! Numeric policy. Every threshold used by the library lives here.

/// Norm and trace deviation accepted at API boundaries (user-supplied states,
/// family parameters).
pub const API_NORM: f64 = 1e-9;

/// Internal normalization/Hermiticity/trace tolerance for matrices the library
/// builds itself.
pub const INTERNAL: f64 = 1e-12;

/// Largest entrywise asymmetry `|m_ij - conj(m_ji)|` the eigensolver will
/// symmetrize away. Anything beyond is rejected.
pub const HERMITIAN_ASYMMETRY: f64 = 1e-10;

/// Smallest eigenvalue a density matrix may have.
pub const PSD_FLOOR: f64 = -1e-10;

/// Jacobi stopping threshold on the off-diagonal Frobenius norm, relative to
/// `max(1, ‖m‖_F)`.
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-13;

pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Partial-transpose eigenvalues in `[-NEGATIVE_EIGEN_CLAMP, 0)` count as zero.
pub const NEGATIVE_EIGEN_CLAMP: f64 = 1e-12;

/// Residuals in `[-RESIDUAL_CLAMP, 0)` are clamped to zero before being raised
/// to a fractional power; below that the strong monogamy score is not
/// applicable.
pub const RESIDUAL_CLAMP: f64 = 1e-9;
