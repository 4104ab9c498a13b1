//! Kronecker product/sum operators on matrices.
//!
//! The operator convention is `(M ⊗ M') · X = M' X Mᵀ`, so the Kronecker
//! sum `M ⊕ M' = M ⊗ I + I ⊗ M'` acts as `X ↦ X Mᵀ + M' X`. With row-major
//! vectorisation the explicit matrix of `(M ⊗ M')` is the standard
//! Kronecker matrix `M' ⊗ M` of dimension d².

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::eigen::{self, ComplexSpectrum};
use crate::numerics::matrix::DenseMatrix;

/// Which Kronecker operator a spectrum request refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KronKind {
    Product,
    Sum,
}

fn check_same_square(m: &DenseMatrix, m2: &DenseMatrix, x: Option<&DenseMatrix>) -> Result<usize> {
    let d = m.require_square()?;
    let d2 = m2.require_square()?;
    if d != d2 {
        return Err(Error::DimensionMismatch(format!(
            "operands are {d}x{d} and {d2}x{d2}"
        )));
    }
    if let Some(x) = x {
        let dx = x.require_square()?;
        if dx != d {
            return Err(Error::DimensionMismatch(format!(
                "argument is {dx}x{dx}, operator acts on {d}x{d}"
            )));
        }
    }
    Ok(d)
}

/// `(M ⊗ M') · X = M' X Mᵀ`.
pub fn kron_product_apply(
    m: &DenseMatrix,
    m2: &DenseMatrix,
    x: &DenseMatrix,
) -> Result<DenseMatrix> {
    check_same_square(m, m2, Some(x))?;
    Ok(m2.matmul(x).matmul(&m.transpose()))
}

/// `(M ⊕ M') · X = X Mᵀ + M' X`.
pub fn kron_sum_apply(m: &DenseMatrix, m2: &DenseMatrix, x: &DenseMatrix) -> Result<DenseMatrix> {
    check_same_square(m, m2, Some(x))?;
    Ok(x.matmul(&m.transpose()).add(&m2.matmul(x)))
}

/// Standard Kronecker matrix `A ⊗ B` with entries `A_ik B_jl`.
pub fn kron_matrix(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let (ar, ac) = (a.rows(), a.cols());
    let (br, bc) = (b.rows(), b.cols());
    let mut out = DenseMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for k in 0..ac {
            let aik = a.get(i, k);
            if aik == 0.0 {
                continue;
            }
            for j in 0..br {
                for l in 0..bc {
                    out.set(i * br + j, k * bc + l, aik * b.get(j, l));
                }
            }
        }
    }
    out
}

/// Explicit d²×d² matrix of `(M ⊗ M')` acting on row-major vectorised X.
pub fn kron_product_matrix(m: &DenseMatrix, m2: &DenseMatrix) -> Result<DenseMatrix> {
    check_same_square(m, m2, None)?;
    Ok(kron_matrix(m2, m))
}

/// Explicit d²×d² matrix of `(M ⊕ M')` acting on row-major vectorised X.
pub fn kron_sum_matrix(m: &DenseMatrix, m2: &DenseMatrix) -> Result<DenseMatrix> {
    let d = check_same_square(m, m2, None)?;
    let id = DenseMatrix::identity(d);
    Ok(kron_matrix(m2, &id).add(&kron_matrix(&id, m)))
}

/// Spectrum of the Kronecker product (pairwise eigenvalue products) or sum
/// (pairwise eigenvalue sums); cardinality d².
pub fn kron_spectrum(m: &DenseMatrix, m2: &DenseMatrix, kind: KronKind) -> Result<ComplexSpectrum> {
    check_same_square(m, m2, None)?;
    let sm = eigen::eigenvalues(m)?;
    let sm2 = eigen::eigenvalues(m2)?;
    let mut values = Vec::with_capacity(sm.len() * sm2.len());
    for a in sm.values() {
        for b in sm2.values() {
            values.push(match kind {
                KronKind::Product => a * b,
                KronKind::Sum => a + b,
            });
        }
    }
    Ok(ComplexSpectrum::from_unsorted(values))
}
