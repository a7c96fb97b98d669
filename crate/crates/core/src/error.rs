use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a group: {reason} (witness {witness:?})")]
    NotAGroup { reason: String, witness: [usize; 3] },

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("eigensolver did not converge (residual {residual:.3e})")]
    NoConvergence { residual: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrices {first} and {second} do not commute (residual {residual:.3e})")]
    NotCommuting {
        first: usize,
        second: usize,
        residual: f64,
    },

    #[error("invalid characters: {0}")]
    InvalidCharacters(String),

    #[error("invalid permutation action: {0}")]
    InvalidAction(String),

    #[error("matrix for element {element} is not unitary (residual {residual:.3e})")]
    NotUnitary { element: usize, residual: f64 },

    #[error("not a projective representation: U_{g} U_{h} is not a scalar multiple of U_gh (residual {residual:.3e})")]
    NotProjective { g: usize, h: usize, residual: f64 },

    #[error("gauge function is not unimodular at element {element} (|c| = {modulus})")]
    NotUnimodular { element: usize, modulus: f64 },

    #[error("basis projections are not permuted by coset {coset} (basis vector {basis})")]
    NotCovariant { coset: usize, basis: usize },

    #[error("representation is not irreducible (commutant dimension {commutant_dimension})")]
    NotIrreducible { commutant_dimension: usize },

    #[error("hypotheses not met: {0}")]
    HypothesesNotMet(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("lambdas ({0}, {1}, {2}) do not come from a Pauli distribution")]
    InvalidLambdas(f64, f64, f64),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("invalid config: {0}")]
    Validation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
