//! Quantum states, spectra and entropies.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::eigen::hermitian_spectrum;
use super::matrix::{norm, ComplexMatrix, ZERO};
use crate::error::{Error, Result};

const STATE_TOL: f64 = 1e-10;
const SPECTRUM_TOL: f64 = 1e-9;
const PURE_NORM_TOL: f64 = 1e-12;

/// Logarithm base for entropies and capacities.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum LogBase {
    /// Bits.
    #[default]
    #[serde(rename = "2")]
    Two,
    /// Nats.
    #[serde(rename = "e")]
    E,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Two => x.log2(),
            LogBase::E => x.ln(),
        }
    }

    pub fn unit(self) -> &'static str {
        match self {
            LogBase::Two => "bits",
            LogBase::E => "nats",
        }
    }
}

impl FromStr for LogBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2" => Ok(LogBase::Two),
            "e" => Ok(LogBase::E),
            other => Err(Error::Validation(format!(
                "log base must be 2 or e, got {other:?}"
            ))),
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogBase::Two => "2",
            LogBase::E => "e",
        })
    }
}

/// `-sum p log p` with `0 log 0 = 0`; tiny negative roundoff is treated as zero.
pub fn shannon_entropy(p: &[f64], base: LogBase) -> f64 {
    -p.iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| {
            let x = x.min(1.0);
            x * base.log(x)
        })
        .sum::<f64>()
}

/// Real eigenvalues sorted in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub fn new(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Self { values }
    }

    pub(crate) fn from_sorted(values: Vec<f64>) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] >= w[1]));
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Eigenvalues of a density matrix, clamped into `[0, 1]`.
    ///
    /// Fails if the values do not sum to one or one is below `-1e-9`.
    pub fn as_probabilities(&self) -> Result<Vec<f64>> {
        if let Some(&v) = self.values.iter().find(|&&v| v < -SPECTRUM_TOL) {
            return Err(Error::InvalidState(format!("negative eigenvalue {v:.3e}")));
        }
        let total: f64 = self.values.iter().sum();
        if (total - 1.0).abs() > SPECTRUM_TOL {
            return Err(Error::InvalidState(format!("eigenvalues sum to {total}")));
        }
        Ok(self.values.iter().map(|v| v.clamp(0.0, 1.0)).collect())
    }

    pub fn entropy(&self, base: LogBase) -> Result<f64> {
        Ok(shannon_entropy(&self.as_probabilities()?, base))
    }
}

/// Normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = norm(&amplitudes);
        if amplitudes.is_empty() || (n - 1.0).abs() > PURE_NORM_TOL {
            return Err(Error::InvalidState(format!("state vector has norm {n}")));
        }
        Ok(Self { amplitudes })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = norm(&amplitudes);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::InvalidState("cannot normalize zero vector".into()));
        }
        for a in &mut amplitudes {
            *a /= n;
        }
        Ok(Self { amplitudes })
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[k] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn tensor(&self, other: &PureState) -> PureState {
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        PureState { amplitudes }
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_matrix_unchecked(ComplexMatrix::outer(&self.amplitudes))
    }
}

/// Haar-random pure state: normalized vector of standard complex Gaussians.
pub fn random_pure_state(dim: usize, seed: u64) -> PureState {
    random_pure_state_with(dim, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_pure_state_with<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> PureState {
    assert!(dim >= 1, "dimension must be positive");
    loop {
        let amplitudes: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        if let Ok(state) = PureState::normalized(amplitudes) {
            return state;
        }
    }
}

/// Random full-rank mixed state `G G^dagger / Tr(G G^dagger)` with Gaussian `G`.
pub fn random_density_matrix_with<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix {
    let g = ComplexMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let w = &g * &g.adjoint();
    let tr = w.trace().re;
    DensityMatrix::from_matrix_unchecked(w.scale_real(1.0 / tr).hermitian_part())
}

/// Positive semidefinite, unit-trace Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let residual = matrix.hermitian_residual();
        if residual > STATE_TOL {
            return Err(Error::InvalidState(format!(
                "not Hermitian (residual {residual:.3e})"
            )));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvalidState(format!("trace is {tr}")));
        }
        let spectrum = hermitian_spectrum(&matrix)?;
        if let Some(&min) = spectrum.values().last() {
            if min < -STATE_TOL {
                return Err(Error::InvalidState(format!(
                    "negative eigenvalue {min:.3e}"
                )));
            }
        }
        Ok(Self { matrix })
    }

    /// Skips validation for matrices that are states by construction.
    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        Self { matrix }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        hermitian_spectrum(&self.matrix)
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        Self::from_matrix_unchecked(self.matrix.kron(&other.matrix))
    }

    /// `U rho U^dagger`
    pub fn conjugated_by(&self, u: &ComplexMatrix) -> DensityMatrix {
        Self::from_matrix_unchecked(u.conjugate(&self.matrix).hermitian_part())
    }
}

/// Von Neumann entropy `-Tr rho log rho`.
pub fn von_neumann_entropy(rho: &DensityMatrix, base: LogBase) -> Result<f64> {
    rho.spectrum()?.entropy(base)
}

/// Which tensor factor survives a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    A,
    B,
}

/// Reduced state on one factor of `H_A (x) H_B`.
pub fn partial_trace(
    rho: &DensityMatrix,
    dims: (usize, usize),
    keep: Keep,
) -> Result<DensityMatrix> {
    let (da, db) = dims;
    if da * db != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: da * db,
            found: rho.dim(),
        });
    }
    Ok(DensityMatrix::from_matrix_unchecked(partial_trace_matrix(
        rho.matrix(),
        dims,
        keep,
    )))
}

pub(crate) fn partial_trace_matrix(
    m: &ComplexMatrix,
    (da, db): (usize, usize),
    keep: Keep,
) -> ComplexMatrix {
    match keep {
        Keep::A => ComplexMatrix::from_fn(da, da, |i, j| {
            (0..db).map(|k| m[(i * db + k, j * db + k)]).sum()
        }),
        Keep::B => ComplexMatrix::from_fn(db, db, |i, j| {
            (0..da).map(|k| m[(k * db + i, k * db + j)]).sum()
        }),
    }
}
