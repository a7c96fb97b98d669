//! Dense complex linear algebra sized for channels of dimension up to ~100.

mod eigen;
mod matrix;
mod state;
mod svd;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub(crate) use eigen::hermitian_eigenvalues_fast;
pub use eigen::{hermitian_eigen, hermitian_spectrum, HermitianEigen};
pub use matrix::{inner, norm, tensor, ComplexMatrix, ONE, ZERO};
pub(crate) use state::partial_trace_matrix;
pub use state::{
    partial_trace, random_density_matrix_with, random_pure_state, random_pure_state_with,
    shannon_entropy, von_neumann_entropy, DensityMatrix, Keep, LogBase, PureState, Spectrum,
};
pub use svd::{numerical_rank, singular_values};

use crate::error::{Error, Result};

const COMMUTE_TOL: f64 = 1e-9;
const DIAGONAL_TOL: f64 = 1e-9;
const ATTEMPTS: u64 = 5;
const COMBINATION_SEED: u64 = 0x5eed_ba51;

/// Unitary `Q` whose columns diagonalize every matrix in `unitaries`.
///
/// Diagonalizes a random real combination of the Hermitian and
/// anti-Hermitian parts; a degenerate draw is retried with the next seed.
pub fn simultaneous_eigenbasis(unitaries: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    let n = match unitaries.first() {
        Some(u) => u.rows(),
        None => return Err(Error::InvalidState("no matrices to diagonalize".into())),
    };
    for (k, u) in unitaries.iter().enumerate() {
        if u.rows() != n || !u.is_square() {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: u.rows(),
            });
        }
        let residual = u.unitarity_residual();
        if residual > 1e-9 {
            return Err(Error::NotUnitary {
                element: k,
                residual,
            });
        }
    }
    for i in 0..unitaries.len() {
        for j in (i + 1)..unitaries.len() {
            let (a, b) = (&unitaries[i], &unitaries[j]);
            let residual = (&(a * b) - &(b * a)).frobenius_norm();
            if residual > COMMUTE_TOL {
                return Err(Error::NotCommuting {
                    first: i,
                    second: j,
                    residual,
                });
            }
        }
    }

    let half = Complex64::new(0.5, 0.0);
    let minus_half_i = Complex64::new(0.0, -0.5);
    let mut worst = f64::INFINITY;
    for attempt in 0..ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(COMBINATION_SEED + attempt);
        let mut h = ComplexMatrix::zeros(n, n);
        for u in unitaries {
            let ud = u.adjoint();
            let c: f64 = rng.random_range(-1.0..1.0);
            let d: f64 = rng.random_range(-1.0..1.0);
            // c (U + U^dagger) / 2 + d (U - U^dagger) / 2i
            h.add_scaled(u, half * c + minus_half_i * d);
            h.add_scaled(&ud, half * c - minus_half_i * d);
        }
        let q = hermitian_eigen(&h)?.vectors;
        let qd = q.adjoint();
        worst = unitaries
            .iter()
            .map(|u| (&(&qd * u) * &q).off_diagonal_norm())
            .fold(0.0, f64::max);
        if worst <= DIAGONAL_TOL {
            return Ok(q);
        }
    }
    Err(Error::NoConvergence { residual: worst })
}
