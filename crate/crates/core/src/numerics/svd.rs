//! Singular values via Householder QR followed by one-sided Jacobi on `R`.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, ZERO};

const MAX_SWEEPS: usize = 60;
const ORTHOGONALITY_TOL: f64 = 1e-15;

/// Singular values in descending order (`min(rows, cols)` of them).
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let a = if m.rows() >= m.cols() {
        m.clone()
    } else {
        m.adjoint()
    };
    let r = qr_r_factor(&a);
    let mut values = one_sided_jacobi(r);
    values.sort_by(|x, y| y.total_cmp(x));
    values
}

/// Number of singular values above `rel_tol * sigma_max`.
pub fn numerical_rank(m: &ComplexMatrix, rel_tol: f64) -> usize {
    let sv = singular_values(m);
    match sv.first() {
        Some(&max) if max > 0.0 => sv.iter().filter(|&&s| s > rel_tol * max).count(),
        _ => 0,
    }
}

/// Column-major square `R` factor of a tall matrix.
fn qr_r_factor(a: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    let (m, n) = (a.rows(), a.cols());
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| a.column(j)).collect();
    for k in 0..n {
        let alpha = cols[k][k..]
            .iter()
            .map(Complex64::norm_sqr)
            .sum::<f64>()
            .sqrt();
        if alpha == 0.0 {
            continue;
        }
        let x0 = cols[k][k];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let mut v: Vec<Complex64> = cols[k][k..].to_vec();
        v[0] += phase * alpha;
        let v_norm2: f64 = v.iter().map(Complex64::norm_sqr).sum();
        for col in cols.iter_mut().skip(k) {
            let w: Complex64 = v.iter().zip(&col[k..]).map(|(vi, ci)| vi.conj() * ci).sum();
            let f = w * (2.0 / v_norm2);
            for (ci, vi) in col[k..].iter_mut().zip(&v) {
                *ci -= vi * f;
            }
        }
        for x in cols[k][k + 1..m].iter_mut() {
            *x = ZERO;
        }
    }
    cols.into_iter().map(|c| c[..n].to_vec()).collect()
}

fn one_sided_jacobi(mut cols: Vec<Vec<Complex64>>) -> Vec<f64> {
    let n = cols.len();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha: f64 = cols[p].iter().map(Complex64::norm_sqr).sum();
                let beta: f64 = cols[q].iter().map(Complex64::norm_sqr).sum();
                let gamma: Complex64 = cols[p]
                    .iter()
                    .zip(&cols[q])
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let g = gamma.norm();
                if g == 0.0 || g <= ORTHOGONALITY_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let tau = (beta - alpha) / (2.0 * g);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let e = phase.conj();
                let (left, right) = cols.split_at_mut(q);
                for (bp, bq) in left[p].iter_mut().zip(right[0].iter_mut()) {
                    let (xp, xq) = (*bp, *bq);
                    *bp = xp * c - e * xq * s;
                    *bq = xp * s + e * xq * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    cols.iter()
        .map(|c| c.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt())
        .collect()
}
