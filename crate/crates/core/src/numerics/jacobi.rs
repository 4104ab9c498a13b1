//! Symmetric eigendecomposition by cyclic Jacobi rotations, and the SPD
//! primitives built on it (positive-definiteness tests, matrix square root).

use crate::error::{Error, Result};
use crate::numerics::matrix::DenseMatrix;

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition `M = V diag(λ) Vᵀ` of a symmetric matrix.
///
/// Returns eigenvalues in ascending order with the matching orthonormal
/// eigenvector columns. The input must be symmetric to 1e-9 relative; the
/// strictly lower triangle is mirrored from the upper before iterating.
pub fn sym_eigen(m: &DenseMatrix) -> Result<(Vec<f64>, DenseMatrix)> {
    let n = m.require_square()?;
    if !m.is_symmetric(1e-9) {
        return Err(Error::NotSymmetric {
            asymmetry: m.asymmetry(),
        });
    }
    let mut a = m.symmetrized();
    let mut v = DenseMatrix::identity(n);

    for _sweep in 0..MAX_SWEEPS {
        let mut off = 0.0_f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a.get(p, q).powi(2);
            }
        }
        if off.sqrt() <= 1e-30 + f64::EPSILON * a.max_abs() * (n as f64) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                // Stable rotation: t = sgn(θ)/(|θ| + sqrt(θ²+1)).
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, c * apk - s * aqk);
                    a.set(q, k, s * apk + c * aqk);
                }
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).partial_cmp(&a.get(j, j)).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i)).collect();
    let mut vectors = DenseMatrix::zeros(n, n);
    for (new_c, &old_c) in order.iter().enumerate() {
        for r in 0..n {
            vectors.set(r, new_c, v.get(r, old_c));
        }
    }
    Ok((eigenvalues, vectors))
}

/// Eigenvalues of a symmetric matrix, ascending.
pub fn sym_eigenvalues(m: &DenseMatrix) -> Result<Vec<f64>> {
    sym_eigen(m).map(|(vals, _)| vals)
}

/// Smallest eigenvalue of a symmetric matrix.
pub fn min_sym_eigenvalue(m: &DenseMatrix) -> Result<f64> {
    Ok(sym_eigenvalues(m)?[0])
}

/// Whether a square matrix is symmetric (1e-9 relative) with all
/// eigenvalues strictly positive.
pub fn is_spd(m: &DenseMatrix) -> bool {
    min_sym_eigenvalue(m).map(|l| l > 0.0).unwrap_or(false)
}

/// Symmetric positive definite square root `S` with `S·S = B`.
pub fn spd_sqrt(b: &DenseMatrix) -> Result<DenseMatrix> {
    let n = b.require_square()?;
    let (vals, vecs) = sym_eigen(b)?;
    if vals[0] <= 0.0 {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: vals[0],
        });
    }
    let mut s = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0.0;
            for k in 0..n {
                acc += vecs.get(i, k) * vals[k].sqrt() * vecs.get(j, k);
            }
            s.set(i, j, acc);
        }
    }
    Ok(s.symmetrized())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_symmetric_spectrum() {
        // [[2,1],[1,2]] has eigenvalues 1 and 3.
        let m = DenseMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let vals = sym_eigenvalues(&m).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-12);
        assert!((vals[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn eigenvectors_reconstruct() {
        let m = DenseMatrix::from_rows(&[
            vec![4.0, 1.0, -2.0],
            vec![1.0, 2.0, 0.0],
            vec![-2.0, 0.0, 3.0],
        ])
        .unwrap();
        let (vals, v) = sym_eigen(&m).unwrap();
        let lam = DenseMatrix::diagonal(&vals);
        let rebuilt = v.matmul(&lam).matmul(&v.transpose());
        assert!(rebuilt.sub(&m).max_abs() < 1e-12);
        let orth = v.matmul(&v.transpose()).sub(&DenseMatrix::identity(3)).max_abs();
        assert!(orth < 1e-12);
    }

    #[test]
    fn sqrt_of_diagonal_is_diagonal() {
        let b = DenseMatrix::diagonal(&[1.0, 10.0]);
        let s = spd_sqrt(&b).unwrap();
        assert!((s.get(0, 0) - 1.0).abs() < 1e-14);
        assert!((s.get(1, 1) - 10.0_f64.sqrt()).abs() < 1e-14);
        assert!(s.get(0, 1).abs() < 1e-14);
    }

    #[test]
    fn sqrt_squares_back_and_identity_fixed() {
        let s = spd_sqrt(&DenseMatrix::identity(3)).unwrap();
        assert!(s.sub(&DenseMatrix::identity(3)).max_abs() < 1e-14);

        let b = DenseMatrix::from_rows(&[vec![2.0, 0.5], vec![0.5, 1.0]]).unwrap();
        let s = spd_sqrt(&b).unwrap();
        assert!(s.matmul(&s).sub(&b).max_abs() < 1e-10);
        assert!(s.is_symmetric(1e-12));
    }

    #[test]
    fn rejects_indefinite() {
        let b = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        assert!(matches!(
            spd_sqrt(&b),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }
}
