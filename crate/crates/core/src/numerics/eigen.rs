//! Cyclic Jacobi eigensolver for complex Hermitian matrices.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, ZERO};
use super::state::Spectrum;
use crate::error::{Error, Result};

const OFF_DIAGONAL_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;
const HERMITIAN_TOL: f64 = 1e-8;
const RECONSTRUCTION_TOL: f64 = 1e-9;

/// Eigenvalues in descending order with matching eigenvector columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k)
    }
}

fn check_hermitian(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let residual = m.hermitian_residual();
    if residual > HERMITIAN_TOL * m.frobenius_norm().max(1.0) {
        return Err(Error::NotHermitian { residual });
    }
    Ok(m.hermitian_part())
}

/// Full eigendecomposition with a reconstruction check.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let a = check_hermitian(m)?;
    let n = a.rows();
    let (values, vectors) = jacobi(a.as_slice().to_vec(), n, true);
    let vectors = vectors.expect("vectors requested");

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
    let values: Vec<f64> = order.iter().map(|&k| values[k]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| vectors[i * n + order[j]]);

    let lambda = ComplexMatrix::from_real_diag(&values);
    let rebuilt = vectors.conjugate(&lambda);
    let residual = m.hermitian_part().distance(&rebuilt);
    if residual > RECONSTRUCTION_TOL * m.frobenius_norm() {
        return Err(Error::NoConvergence { residual });
    }
    Ok(HermitianEigen { values, vectors })
}

/// Eigenvalues of a Hermitian matrix, sorted descending.
pub fn hermitian_spectrum(m: &ComplexMatrix) -> Result<Spectrum> {
    Ok(Spectrum::from_sorted(hermitian_eigen(m)?.values))
}

/// Eigenvalues without eigenvectors or the reconstruction check; the caller
/// guarantees `m` is Hermitian. Used in inner optimization loops.
pub(crate) fn hermitian_eigenvalues_fast(m: &ComplexMatrix) -> Vec<f64> {
    debug_assert!(m.is_square());
    let (mut values, _) = jacobi(m.as_slice().to_vec(), m.rows(), false);
    values.sort_by(|a, b| b.total_cmp(a));
    values
}

fn jacobi(
    mut a: Vec<Complex64>,
    n: usize,
    want_vectors: bool,
) -> (Vec<f64>, Option<Vec<Complex64>>) {
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n).as_slice().to_vec());
    let scale = a.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    if scale == 0.0 {
        return (vec![0.0; n], v);
    }

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= OFF_DIAGONAL_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let abs = apq.norm();
                if abs <= 1e-300 || abs < 1e-18 * scale {
                    continue;
                }
                let phase = apq / abs;
                let tau = (a[q * n + q].re - a[p * n + p].re) / (2.0 * abs);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // J = diag(1, e^{-i phi}) * [[c, s], [-s, c]]
                let jpp = Complex64::new(c, 0.0);
                let jpq = Complex64::new(s, 0.0);
                let jqp = -phase.conj() * s;
                let jqq = phase.conj() * c;

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * jpp + akq * jqp;
                    a[k * n + q] = akp * jpq + akq * jqq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = jpp.conj() * apk + jqp.conj() * aqk;
                    a[q * n + k] = jpq.conj() * apk + jqq.conj() * aqk;
                }
                a[p * n + q] = ZERO;
                a[q * n + p] = ZERO;
                a[p * n + p].im = 0.0;
                a[q * n + q].im = 0.0;

                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = vkp * jpp + vkq * jqp;
                        v[k * n + q] = vkp * jpq + vkq * jqq;
                    }
                }
            }
        }
    }
    ((0..n).map(|i| a[i * n + i].re).collect(), v)
}
