//! LU factorisation with partial pivoting, plus solve/inverse/determinant.

use crate::error::{Error, Result};
use crate::numerics::matrix::DenseMatrix;

/// LU factorisation `PA = LU` of a square matrix.
pub struct Lu {
    lu: DenseMatrix,
    pivots: Vec<usize>,
    sign: f64,
}

impl Lu {
    pub fn factor(a: &DenseMatrix) -> Result<Self> {
        let n = a.require_square()?;
        let mut lu = a.clone();
        let mut pivots: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        // Absolute singularity cutoff tied to the matrix scale.
        let tiny = f64::EPSILON * (n as f64) * lu.max_abs().max(f64::MIN_POSITIVE);

        for k in 0..n {
            let mut p = k;
            let mut best = lu.get(k, k).abs();
            for r in (k + 1)..n {
                let v = lu.get(r, k).abs();
                if v > best {
                    best = v;
                    p = r;
                }
            }
            if best <= tiny {
                return Err(Error::SingularSystem(format!(
                    "pivot {best:.3e} at column {k} below cutoff {tiny:.3e}"
                )));
            }
            if p != k {
                for c in 0..n {
                    let t = lu.get(k, c);
                    lu.set(k, c, lu.get(p, c));
                    lu.set(p, c, t);
                }
                pivots.swap(k, p);
                sign = -sign;
            }
            let piv = lu.get(k, k);
            for r in (k + 1)..n {
                let m = lu.get(r, k) / piv;
                lu.set(r, k, m);
                if m != 0.0 {
                    for c in (k + 1)..n {
                        lu.set(r, c, lu.get(r, c) - m * lu.get(k, c));
                    }
                }
            }
        }
        Ok(Self { lu, pivots, sign })
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.lu.rows();
        assert_eq!(b.len(), n, "rhs length mismatch");
        let mut x: Vec<f64> = self.pivots.iter().map(|&p| b[p]).collect();
        for r in 1..n {
            for c in 0..r {
                x[r] -= self.lu.get(r, c) * x[c];
            }
        }
        for r in (0..n).rev() {
            for c in (r + 1)..n {
                x[r] -= self.lu.get(r, c) * x[c];
            }
            x[r] /= self.lu.get(r, r);
        }
        x
    }

    pub fn solve_matrix(&self, b: &DenseMatrix) -> DenseMatrix {
        let n = self.lu.rows();
        assert_eq!(b.rows(), n, "rhs row mismatch");
        let mut out = DenseMatrix::zeros(n, b.cols());
        for c in 0..b.cols() {
            let col: Vec<f64> = (0..n).map(|r| b.get(r, c)).collect();
            let x = self.solve(&col);
            for r in 0..n {
                out.set(r, c, x[r]);
            }
        }
        out
    }

    pub fn determinant(&self) -> f64 {
        let n = self.lu.rows();
        (0..n).fold(self.sign, |acc, i| acc * self.lu.get(i, i))
    }
}

/// Solves `Ax = b` for square `A`.
pub fn solve(a: &DenseMatrix, b: &[f64]) -> Result<Vec<f64>> {
    Ok(Lu::factor(a)?.solve(b))
}

/// Solves `AX = B` column by column.
pub fn solve_matrix(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    Ok(Lu::factor(a)?.solve_matrix(b))
}

pub fn inverse(a: &DenseMatrix) -> Result<DenseMatrix> {
    let n = a.require_square()?;
    solve_matrix(a, &DenseMatrix::identity(n))
}

pub fn determinant(a: &DenseMatrix) -> Result<f64> {
    match Lu::factor(a) {
        Ok(lu) => Ok(lu.determinant()),
        // Exactly singular still has a well-defined zero determinant, but the
        // factorisation bails early; callers that need det of singular
        // matrices do not exist in this crate, so report the error.
        Err(e) => Err(e),
    }
}
