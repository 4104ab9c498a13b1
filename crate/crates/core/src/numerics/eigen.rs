//! Eigenvalues of small dense real matrices.
//!
//! Closed forms handle dimensions 1 and 2; everything larger goes through
//! Householder reduction to upper Hessenberg form followed by Francis
//! double-shift QR iteration with deflation (the classical EISPACK `hqr`
//! recipe). Eigenvectors, needed only for distinct real spectra, come from
//! inverse iteration with a slightly perturbed shift.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::lu::Lu;
use crate::numerics::matrix::{DenseMatrix, MAX_DIM};

/// Total QR sweep budget across all deflation windows.
const SWEEP_BUDGET: usize = 200;

/// Eigenvalues of a real matrix, with multiplicity.
///
/// Values are stored in a deterministic order: ascending modulus, ties
/// broken by descending real part, then descending imaginary part. Complex
/// values of a real matrix occur in conjugate pairs.
#[derive(Debug, Clone)]
pub struct ComplexSpectrum {
    values: Vec<Complex64>,
}

impl ComplexSpectrum {
    pub(crate) fn from_unsorted(mut values: Vec<Complex64>) -> Self {
        values.sort_by(|a, b| {
            a.norm()
                .total_cmp(&b.norm())
                .then(b.re.total_cmp(&a.re))
                .then(b.im.total_cmp(&a.im))
        });
        Self { values }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, z| m.max(z.norm()))
    }

    pub fn max_real_part(&self) -> f64 {
        self.values
            .iter()
            .fold(f64::NEG_INFINITY, |m, z| m.max(z.re))
    }

    /// All imaginary parts below `tol` in magnitude.
    pub fn is_real(&self, tol: f64) -> bool {
        self.values.iter().all(|z| z.im.abs() <= tol)
    }
}

#[inline]
fn sign(magnitude: f64, carrier: f64) -> f64 {
    if carrier >= 0.0 {
        magnitude.abs()
    } else {
        -magnitude.abs()
    }
}

/// All eigenvalues of a square matrix of dimension ≤ 16.
pub fn eigenvalues(m: &DenseMatrix) -> Result<ComplexSpectrum> {
    let n = m.require_square()?;
    if n > MAX_DIM {
        return Err(Error::DimensionTooLarge { dim: n, max: MAX_DIM });
    }
    match n {
        0 => Ok(ComplexSpectrum::from_unsorted(vec![])),
        1 => Ok(ComplexSpectrum::from_unsorted(vec![Complex64::new(
            m.get(0, 0),
            0.0,
        )])),
        2 => Ok(ComplexSpectrum::from_unsorted(eig2x2(
            m.get(0, 0),
            m.get(0, 1),
            m.get(1, 0),
            m.get(1, 1),
        ))),
        _ => {
            let mut h = m.clone();
            hessenberg(&mut h);
            francis_eigenvalues(&mut h).map(ComplexSpectrum::from_unsorted)
        }
    }
}

/// Largest eigenvalue modulus.
pub fn spectral_radius(m: &DenseMatrix) -> Result<f64> {
    Ok(eigenvalues(m)?.spectral_radius())
}

/// Closed-form eigenvalues of `[[a, b], [c, d]]`.
fn eig2x2(a: f64, b: f64, c: f64, d: f64) -> Vec<Complex64> {
    let half_tr = 0.5 * (a + d);
    let det = a * d - b * c;
    let disc = half_tr * half_tr - det;
    if disc >= 0.0 {
        let s = disc.sqrt();
        // Take the larger-magnitude root first to avoid cancellation.
        let l1 = half_tr + sign(s, half_tr);
        let l2 = if l1 != 0.0 { det / l1 } else { half_tr - sign(s, half_tr) };
        vec![Complex64::new(l1, 0.0), Complex64::new(l2, 0.0)]
    } else {
        let s = (-disc).sqrt();
        vec![Complex64::new(half_tr, s), Complex64::new(half_tr, -s)]
    }
}

/// Householder reduction to upper Hessenberg form, in place.
fn hessenberg(h: &mut DenseMatrix) {
    let n = h.rows();
    let scale = h.max_abs().max(f64::MIN_POSITIVE);
    for c in 0..n.saturating_sub(2) {
        let mut norm2 = 0.0;
        for r in (c + 1)..n {
            norm2 += h.get(r, c) * h.get(r, c);
        }
        let sigma = norm2.sqrt();
        if sigma <= f64::EPSILON * scale {
            for r in (c + 2)..n {
                h.set(r, c, 0.0);
            }
            continue;
        }
        let x0 = h.get(c + 1, c);
        let alpha = -sign(sigma, x0);
        let mut u = vec![0.0; n - c - 1];
        u[0] = x0 - alpha;
        for r in (c + 2)..n {
            u[r - c - 1] = h.get(r, c);
        }
        let unorm2: f64 = u.iter().map(|v| v * v).sum();
        if unorm2 <= f64::MIN_POSITIVE {
            continue;
        }
        // A <- H A with H = I - 2uuᵀ/uᵀu acting on rows c+1..n.
        for j in 0..n {
            let mut dot = 0.0;
            for r in (c + 1)..n {
                dot += u[r - c - 1] * h.get(r, j);
            }
            let f = 2.0 * dot / unorm2;
            for r in (c + 1)..n {
                h.set(r, j, h.get(r, j) - f * u[r - c - 1]);
            }
        }
        // A <- A H acting on columns c+1..n.
        for i in 0..n {
            let mut dot = 0.0;
            for j in (c + 1)..n {
                dot += h.get(i, j) * u[j - c - 1];
            }
            let f = 2.0 * dot / unorm2;
            for j in (c + 1)..n {
                h.set(i, j, h.get(i, j) - f * u[j - c - 1]);
            }
        }
        for r in (c + 2)..n {
            h.set(r, c, 0.0);
        }
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix; consumes `h`.
fn francis_eigenvalues(h: &mut DenseMatrix) -> Result<Vec<Complex64>> {
    let n = h.rows();
    let mut eigs = vec![Complex64::new(0.0, 0.0); n];

    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += h.get(i, j).abs();
        }
    }
    if anorm == 0.0 {
        return Ok(eigs);
    }

    let mut sweeps = 0usize;
    let mut t = 0.0;
    let mut nn = n as isize - 1;
    while nn >= 0 {
        let mut its = 0;
        'window: loop {
            let nnu = nn as usize;
            // Look for a negligible subdiagonal element.
            let mut l = nnu;
            while l >= 1 {
                let mut s = h.get(l - 1, l - 1).abs() + h.get(l, l).abs();
                if s == 0.0 {
                    s = anorm;
                }
                if h.get(l, l - 1).abs() <= f64::EPSILON * s {
                    h.set(l, l - 1, 0.0);
                    break;
                }
                l -= 1;
            }

            let mut x = h.get(nnu, nnu);
            if l == nnu {
                // One real root.
                eigs[nnu] = Complex64::new(x + t, 0.0);
                nn -= 1;
                break 'window;
            }
            let mut y = h.get(nnu - 1, nnu - 1);
            let mut w = h.get(nnu, nnu - 1) * h.get(nnu - 1, nnu);
            if l == nnu - 1 {
                // A 2x2 trailing block yields a real or conjugate pair.
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let z = q.abs().sqrt();
                let xs = x + t;
                if q >= 0.0 {
                    let zz = p + sign(z, p);
                    let e1 = xs + zz;
                    let e2 = if zz != 0.0 { xs - w / zz } else { e1 };
                    eigs[nnu - 1] = Complex64::new(e1, 0.0);
                    eigs[nnu] = Complex64::new(e2, 0.0);
                } else {
                    eigs[nnu - 1] = Complex64::new(xs + p, z);
                    eigs[nnu] = Complex64::new(xs + p, -z);
                }
                nn -= 2;
                break 'window;
            }

            if sweeps >= SWEEP_BUDGET {
                return Err(Error::EigenNonConvergence {
                    budget: SWEEP_BUDGET,
                });
            }
            if its == 10 || its == 20 {
                // Exceptional shift.
                t += x;
                for i in 0..=nnu {
                    h.set(i, i, h.get(i, i) - x);
                }
                let s = h.get(nnu, nnu - 1).abs() + h.get(nnu - 1, nnu - 2).abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            sweeps += 1;

            // Find two consecutive small subdiagonal elements.
            let mut m = nnu - 2;
            let mut p = 0.0;
            let mut q = 0.0;
            let mut r = 0.0;
            while m >= l {
                let z = h.get(m, m);
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / h.get(m + 1, m) + h.get(m, m + 1);
                q = h.get(m + 1, m + 1) - z - rr - ss;
                r = h.get(m + 2, m + 1);
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = h.get(m, m - 1).abs() * (q.abs() + r.abs());
                let v = p.abs() * (h.get(m - 1, m - 1).abs() + z.abs() + h.get(m + 1, m + 1).abs());
                if u <= f64::EPSILON * v {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2)..=nnu {
                h.set(i, i - 2, 0.0);
                if i != m + 2 {
                    h.set(i, i - 3, 0.0);
                }
            }

            // Double QR step on rows l..=nn and columns l..=nn.
            for k in m..=(nnu - 1) {
                if k != m {
                    p = h.get(k, k - 1);
                    q = h.get(k + 1, k - 1);
                    r = if k != nnu - 1 { h.get(k + 2, k - 1) } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = sign((p * p + q * q + r * r).sqrt(), p);
                if s == 0.0 {
                    continue;
                }
                if k == m {
                    if l != m {
                        h.set(k, k - 1, -h.get(k, k - 1));
                    }
                } else {
                    h.set(k, k - 1, -s * x);
                }
                p += s;
                x = p / s;
                y = q / s;
                let z = r / s;
                q /= p;
                r /= p;
                for j in k..=nnu {
                    let mut pp = h.get(k, j) + q * h.get(k + 1, j);
                    if k != nnu - 1 {
                        pp += r * h.get(k + 2, j);
                        h.set(k + 2, j, h.get(k + 2, j) - pp * z);
                    }
                    h.set(k + 1, j, h.get(k + 1, j) - pp * y);
                    h.set(k, j, h.get(k, j) - pp * x);
                }
                let mmin = nnu.min(k + 3);
                for i in l..=mmin {
                    let mut pp = x * h.get(i, k) + y * h.get(i, k + 1);
                    if k != nnu - 1 {
                        pp += z * h.get(i, k + 2);
                        h.set(i, k + 2, h.get(i, k + 2) - pp * r);
                    }
                    h.set(i, k + 1, h.get(i, k + 1) - pp * q);
                    h.set(i, k, h.get(i, k) - pp);
                }
            }
        }
    }
    Ok(eigs)
}

/// Eigenvector of a real eigenvalue by inverse iteration.
///
/// The shift is perturbed off the exact eigenvalue so the factorisation
/// stays regular; a handful of iterations reaches machine precision for
/// well-separated eigenvalues.
pub(crate) fn real_eigenvector(a: &DenseMatrix, lambda: f64) -> Result<Vec<f64>> {
    let n = a.require_square()?;
    let scale = a.max_abs().max(1.0);

    let mut lu = None;
    for pert in [1e-13, 1e-10, 1e-7] {
        let mut shifted = a.clone();
        let shift = lambda + pert * scale;
        for i in 0..n {
            shifted.set(i, i, shifted.get(i, i) - shift);
        }
        if let Ok(f) = Lu::factor(&shifted) {
            lu = Some(f);
            break;
        }
    }
    let lu = lu.ok_or_else(|| {
        Error::SingularSystem(format!("inverse iteration shift at eigenvalue {lambda}"))
    })?;

    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    for _ in 0..4 {
        let w = lu.solve(&v);
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::SingularSystem(
                "inverse iteration collapsed to zero vector".into(),
            ));
        }
        v = w.iter().map(|x| x / norm).collect();
    }

    let av = a.matvec(&v);
    let residual = av
        .iter()
        .zip(&v)
        .map(|(a, b)| (a - lambda * b).abs())
        .fold(0.0_f64, f64::max);
    if residual > 1e-8 * scale {
        return Err(Error::EigenNonConvergence { budget: 4 });
    }
    Ok(v)
}

/// Real distinct eigenvalues with eigenvectors, sorted by ascending modulus
/// (ties by descending real part).
///
/// Errors when the spectrum has complex members or near-coincident values;
/// the block-diagonalisation and Bauer-Fike paths only support simple real
/// spectra.
pub(crate) fn real_eigen_pairs(a: &DenseMatrix) -> Result<Vec<(f64, Vec<f64>)>> {
    let spectrum = eigenvalues(a)?;
    let scale = spectrum.spectral_radius().max(1.0);
    if !spectrum.is_real(1e-10 * scale) {
        return Err(Error::UnsupportedSpectrum(
            "complex eigenvalues present".into(),
        ));
    }
    let mut vals: Vec<f64> = spectrum.values().iter().map(|z| z.re).collect();
    vals.sort_by(|a, b| a.abs().total_cmp(&b.abs()).then(b.total_cmp(a)));
    for pair in vals.windows(2) {
        if (pair[0] - pair[1]).abs() <= 1e-8 * scale {
            return Err(Error::UnsupportedSpectrum(format!(
                "near-coincident eigenvalues {} and {}",
                pair[0], pair[1]
            )));
        }
    }
    vals.iter()
        .map(|&l| real_eigenvector(a, l).map(|v| (l, v)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_spectrum(actual: &ComplexSpectrum, expected: &[Complex64], tol: f64) {
        assert_eq!(actual.len(), expected.len());
        let mut exp = ComplexSpectrum::from_unsorted(expected.to_vec());
        for (a, e) in actual.values().iter().zip(exp.values.drain(..)) {
            assert!(
                (a - e).norm() < tol,
                "eigenvalue {a} does not match expected {e}"
            );
        }
    }

    #[test]
    fn triangular_matrix_has_diagonal_spectrum() {
        let m = DenseMatrix::from_rows(&[vec![-1.0, 1.0], vec![0.0, -10.0]]).unwrap();
        let s = eigenvalues(&m).unwrap();
        assert_spectrum(
            &s,
            &[Complex64::new(-1.0, 0.0), Complex64::new(-10.0, 0.0)],
            1e-14,
        );
    }

    #[test]
    fn rotation_matrix_has_imaginary_pair() {
        let m = DenseMatrix::from_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]).unwrap();
        let s = eigenvalues(&m).unwrap();
        assert_spectrum(&s, &[Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)], 1e-14);
    }

    #[test]
    fn symmetric_2x2_closed_form() {
        let m = DenseMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let s = eigenvalues(&m).unwrap();
        assert_spectrum(&s, &[Complex64::new(1.0, 0.0), Complex64::new(3.0, 0.0)], 1e-14);
    }

    #[test]
    fn qr_matches_closed_form_on_embedded_2x2() {
        // Embed a 2x2 into a block-diagonal 3x3 so the Francis path runs.
        let m = DenseMatrix::from_rows(&[
            vec![2.0, 1.0, 0.0],
            vec![1.0, 2.0, 0.0],
            vec![0.0, 0.0, -4.0],
        ])
        .unwrap();
        let s = eigenvalues(&m).unwrap();
        assert_spectrum(
            &s,
            &[
                Complex64::new(1.0, 0.0),
                Complex64::new(3.0, 0.0),
                Complex64::new(-4.0, 0.0),
            ],
            1e-12,
        );
    }

    #[test]
    fn companion_matrix_roots() {
        // Companion matrix of (x-1)(x-2)(x-3)(x-4) = x⁴ -10x³ +35x² -50x +24.
        let m = DenseMatrix::from_rows(&[
            vec![10.0, -35.0, 50.0, -24.0],
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0, 0.0],
        ])
        .unwrap();
        let s = eigenvalues(&m).unwrap();
        assert_spectrum(
            &s,
            &[
                Complex64::new(1.0, 0.0),
                Complex64::new(2.0, 0.0),
                Complex64::new(3.0, 0.0),
                Complex64::new(4.0, 0.0),
            ],
            1e-9,
        );
    }

    #[test]
    fn complex_pairs_in_larger_matrix() {
        // Block diag(rotation by 90°, -3, -5) has spectrum {±i, -3, -5}.
        let m = DenseMatrix::from_rows(&[
            vec![0.0, 1.0, 0.0, 0.0],
            vec![-1.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, -3.0, 0.5],
            vec![0.0, 0.0, 0.0, -5.0],
        ])
        .unwrap();
        let s = eigenvalues(&m).unwrap();
        assert_spectrum(
            &s,
            &[
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(-3.0, 0.0),
                Complex64::new(-5.0, 0.0),
            ],
            1e-10,
        );
    }

    #[test]
    fn residual_check_on_random_diagonalizable() {
        // Fixed seed-free deterministic example: a shifted upper triangular
        // plus mild coupling, eigenvalues found must satisfy det(A-λI)≈0 via
        // eigenvector residual.
        let a = DenseMatrix::from_rows(&[
            vec![-1.0, 0.3, 0.1],
            vec![0.0, -4.0, 0.2],
            vec![0.0, 0.0, -9.0],
        ])
        .unwrap();
        for (l, v) in real_eigen_pairs(&a).unwrap() {
            let av = a.matvec(&v);
            let res = av
                .iter()
                .zip(&v)
                .map(|(x, y)| (x - l * y).abs())
                .fold(0.0_f64, f64::max);
            assert!(res < 1e-10, "residual {res} for eigenvalue {l}");
        }
    }

    #[test]
    fn spectral_radius_examples() {
        assert!((spectral_radius(&DenseMatrix::identity(2)).unwrap() - 1.0).abs() < 1e-15);

        let d = DenseMatrix::diagonal(&[-1.0, -10.0]);
        let m = d.plus_scaled_identity(0.09);
        assert!((spectral_radius(&m).unwrap() - 0.91).abs() < 1e-14);

        let m = d.plus_scaled_identity(0.25);
        assert!((spectral_radius(&m).unwrap() - 1.5).abs() < 1e-14);
    }

    #[test]
    fn dimension_guard() {
        let m = DenseMatrix::zeros(17, 17);
        assert!(matches!(
            eigenvalues(&m),
            Err(Error::DimensionTooLarge { .. })
        ));
        let m = DenseMatrix::zeros(2, 3);
        assert!(matches!(eigenvalues(&m), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn repeated_eigenvalues_rejected_for_pairs() {
        let m = DenseMatrix::diagonal(&[-2.0, -2.0]);
        assert!(matches!(
            real_eigen_pairs(&m),
            Err(Error::UnsupportedSpectrum(_))
        ));
    }
}
