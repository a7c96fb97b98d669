//! Mixed unitary channels `rho -> sum_g pi_g U_g rho U_g^dagger`.

use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::majorization::CosetDistribution;
use crate::numerics::{
    partial_trace_matrix, random_density_matrix_with, ComplexMatrix, DensityMatrix, Keep, PureState,
};
use crate::rational::{self, Rational};
use crate::representation::{restriction_is_unitary_rep, ProjectiveRep};

const COVARIANCE_TOL: f64 = 1e-8;
const TWIRL_TOL: f64 = 1e-8;

/// Exact probability weights on the elements of a group.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupDistribution {
    group: Arc<FiniteGroup>,
    weights: Vec<Rational>,
}

impl GroupDistribution {
    pub fn new(group: Arc<FiniteGroup>, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != group.order() {
            return Err(Error::InvalidDistribution(format!(
                "{} weights for a group of order {}",
                weights.len(),
                group.order()
            )));
        }
        if let Some((g, w)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !rational::is_probability(w))
        {
            return Err(Error::InvalidDistribution(format!(
                "weight of element {g} is {}",
                rational::format_rational(w)
            )));
        }
        let total = rational::sum(&weights);
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!(
                "weights sum to {}, not 1",
                rational::format_rational(&total)
            )));
        }
        Ok(Self { group, weights })
    }

    pub fn point_mass(group: Arc<FiniteGroup>, g: usize) -> Self {
        let mut weights = vec![Rational::zero(); group.order()];
        weights[g] = Rational::one();
        Self { group, weights }
    }

    pub fn uniform(group: Arc<FiniteGroup>) -> Self {
        let w = rational::ratio(1, group.order() as i64);
        Self {
            weights: vec![w; group.order()],
            group,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, g: usize) -> &Rational {
        &self.weights[g]
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.weights.iter().map(rational::to_f64).collect()
    }

    /// Product weights `pi_g pi'_h` on the direct product, `(g, h)` at `g |H| + h`.
    pub fn product(&self, other: &GroupDistribution, group: Arc<FiniteGroup>) -> Self {
        let weights = self
            .weights
            .iter()
            .flat_map(|a| other.weights.iter().map(move |b| a * b))
            .collect();
        Self { group, weights }
    }
}

#[derive(Debug, Clone)]
pub struct MixedUnitaryChannel {
    rep: ProjectiveRep,
    dist: GroupDistribution,
    /// `(pi_g, U_g)` for the elements with nonzero weight.
    kraus: Vec<(f64, ComplexMatrix)>,
}

impl MixedUnitaryChannel {
    pub fn new(rep: ProjectiveRep, dist: GroupDistribution) -> Result<Self> {
        if !Arc::ptr_eq(rep.group(), dist.group())
            && rep.group().cayley_table() != dist.group().cayley_table()
        {
            return Err(Error::InvalidDistribution(
                "distribution is defined on a different group than the representation".into(),
            ));
        }
        let kraus = dist
            .weights()
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(g, w)| (rational::to_f64(w), rep.matrix(g).clone()))
            .collect();
        Ok(Self { rep, dist, kraus })
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn rep(&self) -> &ProjectiveRep {
        &self.rep
    }

    pub fn dist(&self) -> &GroupDistribution {
        &self.dist
    }

    pub fn kraus(&self) -> &[(f64, ComplexMatrix)] {
        &self.kraus
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        self.check_dim(rho.dim())?;
        Ok(DensityMatrix::from_matrix_unchecked(
            self.apply_matrix(rho.matrix()).hermitian_part(),
        ))
    }

    /// The linear extension to arbitrary square matrices.
    pub fn apply_matrix(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(x.rows(), x.cols());
        for (w, u) in &self.kraus {
            out.add_scaled(&u.conjugate(x), (*w).into());
        }
        out
    }

    /// `Phi(|f><f|)` as `sum_g pi_g |U_g f><U_g f|`.
    pub fn apply_pure(&self, f: &PureState) -> Result<ComplexMatrix> {
        self.check_dim(f.dim())?;
        Ok(self.apply_vector(f.amplitudes()))
    }

    pub(crate) fn apply_vector(&self, f: &[num_complex::Complex64]) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(f.len(), f.len());
        for (w, u) in &self.kraus {
            out.add_outer(&u.mul_vec(f), *w);
        }
        out
    }

    /// `Phi (x) Omega` as a channel of the product group.
    pub fn tensor(&self, other: &MixedUnitaryChannel) -> MixedUnitaryChannel {
        let rep = self.rep.tensor(&other.rep);
        let dist = self.dist.product(&other.dist, Arc::clone(rep.group()));
        let kraus = self
            .kraus
            .iter()
            .flat_map(|(a, u)| other.kraus.iter().map(move |(b, v)| (a * b, u.kron(v))))
            .collect();
        MixedUnitaryChannel { rep, dist, kraus }
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found,
            });
        }
        Ok(())
    }
}

/// `(Phi (x) Omega)(rho)` as the double Kraus sum.
pub fn apply_tensor(
    phi: &MixedUnitaryChannel,
    omega: &MixedUnitaryChannel,
    rho: &DensityMatrix,
) -> Result<DensityMatrix> {
    let dim = phi.dim() * omega.dim();
    if rho.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: rho.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(dim, dim);
    for (a, u) in phi.kraus() {
        for (b, v) in omega.kraus() {
            out.add_scaled(&u.kron(v).conjugate(rho.matrix()), (a * b).into());
        }
    }
    Ok(DensityMatrix::from_matrix_unchecked(out.hermitian_part()))
}

/// `(Id_K (x) Phi)(rho)` on `K (x) H`.
pub fn id_tensor_apply(
    phi: &MixedUnitaryChannel,
    dim_k: usize,
    rho: &DensityMatrix,
) -> Result<DensityMatrix> {
    let dim = dim_k * phi.dim();
    if rho.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: rho.dim(),
        });
    }
    let id = ComplexMatrix::identity(dim_k);
    let mut out = ComplexMatrix::zeros(dim, dim);
    for (w, u) in phi.kraus() {
        out.add_scaled(&id.kron(u).conjugate(rho.matrix()), (*w).into());
    }
    Ok(DensityMatrix::from_matrix_unchecked(out.hermitian_part()))
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CovarianceReport {
    pub holds: bool,
    pub trials: usize,
    pub max_residual: f64,
    /// `(trial, element)` of the first failure.
    pub witness: Option<(usize, usize)>,
}

/// Checks `Phi(U_g rho U_g^dagger) = U_g Phi(rho) U_g^dagger` on random `g` and `rho`.
pub fn covariance_check(phi: &MixedUnitaryChannel, trials: usize, seed: u64) -> CovarianceReport {
    covariance_check_map(|x| phi.apply_matrix(x), phi.rep(), trials, seed)
}

/// [`covariance_check`] for an arbitrary linear map against a representation.
pub fn covariance_check_map(
    map: impl Fn(&ComplexMatrix) -> ComplexMatrix,
    rep: &ProjectiveRep,
    trials: usize,
    seed: u64,
) -> CovarianceReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_residual: f64 = 0.0;
    let mut witness = None;
    for trial in 0..trials {
        let g = rng.random_range(0..rep.group().order());
        let rho = random_density_matrix_with(rep.dim(), &mut rng);
        let u = rep.matrix(g);
        let lhs = map(&u.conjugate(rho.matrix()));
        let rhs = u.conjugate(&map(rho.matrix()));
        let residual = lhs.distance(&rhs);
        if residual > COVARIANCE_TOL && witness.is_none() {
            witness = Some((trial, g));
        }
        max_residual = max_residual.max(residual);
    }
    CovarianceReport {
        holds: witness.is_none(),
        trials,
        max_residual,
        witness,
    }
}

/// The q-c channel with weight `p_j / |T|` on every element of the `j`-th coset.
pub fn qc_reference(
    phi: &MixedUnitaryChannel,
    sub: &Subgroup,
    cosets: &CosetDistribution,
) -> Result<MixedUnitaryChannel> {
    let rep = phi.rep();
    if cosets.quotient().subgroup() != sub {
        return Err(Error::HypothesesNotMet(
            "coset distribution belongs to another subgroup".into(),
        ));
    }
    if cosets.quotient().len() != rep.dim() {
        return Err(Error::HypothesesNotMet(format!(
            "|G/T| = {} differs from the dimension {}",
            cosets.quotient().len(),
            rep.dim()
        )));
    }
    if !restriction_is_unitary_rep(rep, sub) {
        return Err(Error::HypothesesNotMet(
            "restriction to T is not a unitary representation".into(),
        ));
    }
    let t = rational::integer(sub.order() as i64);
    let mut weights = vec![Rational::zero(); rep.group().order()];
    for (p_j, &coset) in cosets.p_exact().iter().zip(cosets.coset_order()) {
        for &g in &cosets.quotient().cosets()[coset] {
            weights[g] = p_j / &t;
        }
    }
    MixedUnitaryChannel::new(
        rep.clone(),
        GroupDistribution::new(Arc::clone(rep.group()), weights)?,
    )
}

/// `Theta(X) = (1/|T|) sum_t U_t X U_t^dagger`.
pub fn conditional_expectation(t_matrices: &[ComplexMatrix], x: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(x.rows(), x.cols());
    let w = 1.0 / t_matrices.len() as f64;
    for u in t_matrices {
        out.add_scaled(&u.conjugate(x), w.into());
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwirlReport {
    pub spanning: bool,
    pub residual: f64,
    pub holds: bool,
}

/// Checks `sum_g (U_g (x) I) X (U_g (x) I)^dagger = (|G|/n) I_H (x) Tr_H X`
/// for `X = (Id (x) Omega)(|f><f|)`, `f` in `H (x) K`.
///
/// Without spanning the identity is not expected; `holds` is then false
/// regardless of the residual.
pub fn twirl_identity_check(
    phi: &MixedUnitaryChannel,
    omega: &MixedUnitaryChannel,
    f: &PureState,
) -> Result<TwirlReport> {
    let (n, m) = (phi.dim(), omega.dim());
    if f.dim() != n * m {
        return Err(Error::DimensionMismatch {
            expected: n * m,
            found: f.dim(),
        });
    }
    let id_h = ComplexMatrix::identity(n);
    let id_k = ComplexMatrix::identity(m);
    let mut x = ComplexMatrix::zeros(n * m, n * m);
    for (w, v) in omega.kraus() {
        x.add_outer(&id_h.kron(v).mul_vec(f.amplitudes()), *w);
    }
    let mut lhs = ComplexMatrix::zeros(n * m, n * m);
    for u in phi.rep().matrices() {
        lhs = &lhs + &u.kron(&id_k).conjugate(&x);
    }
    let factor = phi.rep().group().order() as f64 / n as f64;
    let rhs = id_h
        .kron(&partial_trace_matrix(&x, (n, m), Keep::B))
        .scale_real(factor);
    let residual = lhs.distance(&rhs);
    let spanning = crate::representation::spanning_check(phi.rep());
    Ok(TwirlReport {
        spanning,
        residual,
        holds: spanning && residual <= TWIRL_TOL,
    })
}
