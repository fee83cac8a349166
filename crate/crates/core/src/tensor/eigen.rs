//! Cyclic Jacobi eigensolver for small Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `m_pq`, then applies the
//! classical real Jacobi rotation that zeroes it. Matrices here are at most
//! 16×16, so robustness matters more than speed.

use super::{CMatrix, Complex};
use crate::error::{Error, Result};
use crate::tolerance;

/// Eigenvalues in ascending order with matching unit eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

/// Checks Hermiticity and returns the symmetrized matrix `(M + M†)/2`.
fn symmetrized(m: &CMatrix) -> Result<CMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let asymmetry = m.hermitian_asymmetry();
    if !asymmetry.is_finite() || asymmetry > tolerance::HERMITIAN_ASYMMETRY {
        return Err(Error::NotHermitian { asymmetry });
    }
    let n = m.rows();
    let mut out = m.clone();
    for i in 0..n {
        out[(i, i)] = Complex::new(m[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            out[(i, j)] = avg;
            out[(j, i)] = avg.conj();
        }
    }
    Ok(out)
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn jacobi(m: &CMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<CMatrix>)> {
    let mut a = symmetrized(m)?;
    let n = a.rows();
    let mut v = want_vectors.then(|| CMatrix::identity(n));
    let threshold = tolerance::JACOBI_OFF_DIAGONAL * a.frobenius_norm().max(1.0);

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= threshold {
            break;
        }
        if sweeps == tolerance::JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_norm: off });
        }
        sweeps += 1;

        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                if g == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                // D = diag(1, e^{-iφ}) makes the pivot real; J is the real rotation.
                let phase = apq / g;
                let theta = (aqq - app) / (2.0 * g);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // U = D·J restricted to the (p, q) block.
                let u_pp = Complex::new(c, 0.0);
                let u_pq = Complex::new(s, 0.0);
                let u_qp = phase.conj() * (-s);
                let u_qq = phase.conj() * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * u_pp + akq * u_qp;
                    a[(k, q)] = akp * u_pq + akq * u_qq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
                a[(p, q)] = Complex::new(0.0, 0.0);
                a[(q, p)] = Complex::new(0.0, 0.0);
                a[(p, p)] = Complex::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex::new(a[(q, q)].re, 0.0);

                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * u_pp + vkq * u_qp;
                        v[(k, q)] = vkp * u_pq + vkq * u_qq;
                    }
                }
            }
        }
    }

    let values = (0..n).map(|i| a[(i, i)].re).collect();
    Ok((values, v))
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    let (mut values, _) = jacobi(m, false)?;
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Full eigendecomposition, eigenvalues ascending.
pub fn hermitian_eigen(m: &CMatrix) -> Result<HermitianEigen> {
    let (values, vectors) = jacobi(m, true)?;
    let vectors = vectors.expect("vectors requested");
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let n = values.len();
    let mut sorted_vectors = CMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            sorted_vectors[(row, new_col)] = vectors[(row, old_col)];
        }
    }
    Ok(HermitianEigen {
        values: order.iter().map(|&i| values[i]).collect(),
        vectors: sorted_vectors,
    })
}

/// `Σ|λᵢ|` for a Hermitian matrix, i.e. `tr √(M M†)`.
pub fn trace_norm_hermitian(m: &CMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(m)?.iter().map(|l| l.abs()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell_pt() -> CMatrix {
        // partial transpose of (|00⟩+|11⟩)(⟨00|+⟨11|)/2 on qubit 0
        let mut m = CMatrix::zeros(4, 4);
        m[(0, 0)] = Complex::new(0.5, 0.0);
        m[(3, 3)] = Complex::new(0.5, 0.0);
        m[(1, 2)] = Complex::new(0.5, 0.0);
        m[(2, 1)] = Complex::new(0.5, 0.0);
        m
    }

    #[test]
    fn diagonal_spectrum_is_sorted() {
        let m = CMatrix::from_real_rows(&[&[3.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 2.0]]).unwrap();
        assert_eq!(hermitian_eigenvalues(&m).unwrap(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn pauli_x_spectrum() {
        let x = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let ev = hermitian_eigenvalues(&x).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pauli_y_spectrum() {
        let mut y = CMatrix::zeros(2, 2);
        y[(0, 1)] = Complex::new(0.0, -1.0);
        y[(1, 0)] = Complex::new(0.0, 1.0);
        let ev = hermitian_eigenvalues(&y).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn bell_partial_transpose_spectrum() {
        let ev = hermitian_eigenvalues(&bell_pt()).unwrap();
        let expected = [-0.5, 0.5, 0.5, 0.5];
        for (got, want) in ev.iter().zip(expected) {
            assert!((got - want).abs() < 1e-14, "{ev:?}");
        }
    }

    #[test]
    fn trace_norms() {
        assert!((trace_norm_hermitian(&bell_pt()).unwrap() - 2.0).abs() < 1e-14);
        assert_eq!(trace_norm_hermitian(&CMatrix::zeros(4, 4)).unwrap(), 0.0);
        let rho = CMatrix::diagonal(&[Complex::new(0.25, 0.0), Complex::new(0.75, 0.0)]);
        assert!((trace_norm_hermitian(&rho).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(hermitian_eigenvalues(&m), Err(Error::NotHermitian { .. })));
        let nonsquare = CMatrix::zeros(2, 3);
        assert!(matches!(
            hermitian_eigenvalues(&nonsquare),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn tiny_asymmetry_is_symmetrized() {
        let mut m = CMatrix::from_real_rows(&[&[1.0, 0.5], &[0.5, -1.0]]).unwrap();
        m[(0, 1)] += Complex::new(1e-12, 0.0);
        assert!(hermitian_eigenvalues(&m).is_ok());
    }

    #[test]
    fn complex_eigenvectors_satisfy_residual() {
        let mut m = CMatrix::zeros(3, 3);
        m[(0, 0)] = Complex::new(2.0, 0.0);
        m[(1, 1)] = Complex::new(-1.0, 0.0);
        m[(2, 2)] = Complex::new(0.5, 0.0);
        m[(0, 1)] = Complex::new(0.3, 0.7);
        m[(1, 0)] = Complex::new(0.3, -0.7);
        m[(1, 2)] = Complex::new(-0.2, 0.1);
        m[(2, 1)] = Complex::new(-0.2, -0.1);
        let eig = hermitian_eigen(&m).unwrap();
        for (col, &lambda) in eig.values.iter().enumerate() {
            let v: Vec<Complex> = (0..3).map(|r| eig.vectors[(r, col)]).collect();
            let mv = m.matmul(&CMatrix::column(&v)).unwrap();
            let resid: f64 = (0..3)
                .map(|r| (mv[(r, 0)] - v[r] * lambda).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(resid < 1e-12, "residual {resid}");
        }
        let sum: f64 = eig.values.iter().sum();
        assert!((sum - 1.5).abs() < 1e-12);
    }
}
