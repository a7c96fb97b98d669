//! Closed-form capacity, minimal output entropy and majorization oracles.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::channel::MixedUnitaryChannel;
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::majorization::{
    find_admissible_subgroup, max_prefix_excess, product_distribution, ConditionWitness, ProbVector,
};
use crate::numerics::{
    hermitian_eigenvalues_fast, random_pure_state_with, shannon_entropy, ComplexMatrix, LogBase,
    PureState,
};
use crate::rational::format_rational;
use crate::representation::{commutant_dimension, spanning_check, t_eigenbasis, ProjectiveRep};

/// Allowed prefix-sum excess before a sample counts as a violation.
pub const PREFIX_TOL: f64 = 1e-9;
const CROSS_CHECK_TOL: f64 = 1e-6;
const ATTAINMENT_TOL: f64 = 1e-9;
const LAMBDA_TOL: f64 = 1e-12;

/// `log n + sum p_j log p_j` and its parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoremCapacity {
    pub n: usize,
    pub entropy_p: f64,
    pub capacity: f64,
    pub log_base: LogBase,
}

pub fn theorem_capacity(n: usize, p: &ProbVector, base: LogBase) -> TheoremCapacity {
    let entropy_p = shannon_entropy(&p.to_f64(), base);
    TheoremCapacity {
        n,
        entropy_p,
        capacity: base.log(n as f64) - entropy_p,
        log_base: base,
    }
}

/// Pauli weights `(pi_I, pi_X, pi_Y, pi_Z)` with the given `lambda` parameters.
pub fn pauli_weights_from_lambdas(lx: f64, ly: f64, lz: f64) -> [f64; 4] {
    [
        (1.0 + lx + ly + lz) / 4.0,
        (1.0 + lx - ly - lz) / 4.0,
        (1.0 - lx + ly - lz) / 4.0,
        (1.0 - lx - ly + lz) / 4.0,
    ]
}

/// Capacity in bits of the Pauli channel with parameters `lambda`.
pub fn qubit_capacity_from_lambdas(lx: f64, ly: f64, lz: f64) -> Result<f64> {
    if pauli_weights_from_lambdas(lx, ly, lz)
        .iter()
        .any(|&w| w < -LAMBDA_TOL)
    {
        return Err(Error::InvalidLambdas(lx, ly, lz));
    }
    let l = lx.abs().max(ly.abs()).max(lz.abs());
    let (a, b) = ((1.0 + l) / 2.0, (1.0 - l) / 2.0);
    Ok(1.0 - shannon_entropy(&[a, b], LogBase::Two))
}

#[derive(Debug, Clone)]
pub struct MinEntropyOptions {
    pub restarts: usize,
    pub seed: u64,
    /// Stop a local search once the simplex values agree to this tolerance.
    pub tol: f64,
    pub base: LogBase,
    pub warm_starts: Vec<PureState>,
}

impl Default for MinEntropyOptions {
    fn default() -> Self {
        Self {
            restarts: 32,
            seed: 0,
            tol: 1e-10,
            base: LogBase::Two,
            warm_starts: Vec::new(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct OptimizationResult {
    pub min_entropy: f64,
    pub argmin: PureState,
    pub restarts_used: usize,
    pub converged: bool,
    /// Final value of every local search, warm starts first.
    pub trace: Vec<f64>,
}

/// Entropy of `Phi(|f><f|)`.
pub fn output_entropy(phi: &MixedUnitaryChannel, f: &[Complex64], base: LogBase) -> f64 {
    shannon_entropy(&hermitian_eigenvalues_fast(&phi.apply_vector(f)), base)
}

/// Multi-start Nelder-Mead over unit vectors with the first amplitude real.
pub fn min_output_entropy(
    phi: &MixedUnitaryChannel,
    options: &MinEntropyOptions,
) -> OptimizationResult {
    let n = phi.dim();
    let objective = |x: &[f64]| match unpack(x, n) {
        Some(f) => output_entropy(phi, &f, options.base),
        None => f64::INFINITY,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut starts: Vec<(Vec<f64>, f64)> = options
        .warm_starts
        .iter()
        .map(|s| (pack(s.amplitudes()), 1e-3))
        .collect();
    starts.extend(
        (0..options.restarts)
            .map(|_| (pack(random_pure_state_with(n, &mut rng).amplitudes()), 0.25)),
    );

    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut trace = Vec::with_capacity(starts.len());
    let mut converged = false;
    for (x0, step) in &starts {
        let (mut x, mut value) = (x0.clone(), objective(x0));
        // A second pass from a fresh simplex guards against collapsed simplices.
        for pass in 0..2 {
            let s = if pass == 0 { *step } else { 1e-3 };
            let run = nelder_mead(&objective, &x, s, options.tol, 2000 * x.len());
            converged |= run.converged;
            if run.value <= value {
                x = run.x;
                value = run.value;
            }
        }
        trace.push(value);
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, x));
        }
    }
    match best {
        Some((value, x)) => OptimizationResult {
            min_entropy: value.max(0.0),
            argmin: PureState::normalized(unpack(&x, n).expect("finite best point"))
                .expect("nonzero"),
            restarts_used: starts.len(),
            converged,
            trace,
        },
        None => OptimizationResult {
            min_entropy: options.base.log(n as f64),
            argmin: PureState::basis(n, 0),
            restarts_used: 0,
            converged: false,
            trace,
        },
    }
}

/// `(re_0, ..., re_{n-1}, im_1, ..., im_{n-1})` after rotating `f_0` to be real.
fn pack(f: &[Complex64]) -> Vec<f64> {
    let phase = if f[0].norm() > 0.0 {
        f[0].conj() / f[0].norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let g: Vec<Complex64> = f.iter().map(|z| z * phase).collect();
    g.iter()
        .map(|z| z.re)
        .chain(g[1..].iter().map(|z| z.im))
        .collect()
}

fn unpack(x: &[f64], n: usize) -> Option<Vec<Complex64>> {
    let f: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new(x[i], if i == 0 { 0.0 } else { x[n + i - 1] }))
        .collect();
    let norm = f.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    (norm > 1e-12 && norm.is_finite()).then(|| f.into_iter().map(|z| z / norm).collect())
}

struct Minimum {
    x: Vec<f64>,
    value: f64,
    converged: bool,
}

/// Nelder-Mead with dimension-adaptive coefficients.
fn nelder_mead(
    f: &impl Fn(&[f64]) -> f64,
    x0: &[f64],
    step: f64,
    tol: f64,
    max_iter: usize,
) -> Minimum {
    let d = x0.len();
    let df = d as f64;
    let (alpha, gamma, rho, sigma) = (1.0, 1.0 + 2.0 / df, 0.75 - 1.0 / (2.0 * df), 1.0 - 1.0 / df);
    let mut simplex: Vec<Vec<f64>> = vec![x0.to_vec()];
    for i in 0..d {
        let mut x = x0.to_vec();
        x[i] += step;
        simplex.push(x);
    }
    let mut values: Vec<f64> = simplex.iter().map(|x| f(x)).collect();
    let mut converged = false;
    for _ in 0..max_iter {
        let mut order: Vec<usize> = (0..=d).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();
        if values[d] - values[0] <= tol {
            converged = true;
            break;
        }
        let centroid: Vec<f64> = (0..d)
            .map(|k| simplex[..d].iter().map(|x| x[k]).sum::<f64>() / df)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            (0..d)
                .map(|k| centroid[k] + t * (simplex[d][k] - centroid[k]))
                .collect()
        };
        let reflected = along(-alpha);
        let fr = f(&reflected);
        if fr < values[0] {
            let expanded = along(-alpha * gamma);
            let fe = f(&expanded);
            if fe < fr {
                simplex[d] = expanded;
                values[d] = fe;
            } else {
                simplex[d] = reflected;
                values[d] = fr;
            }
        } else if fr < values[d - 1] {
            simplex[d] = reflected;
            values[d] = fr;
        } else {
            let (contracted, fc) = if fr < values[d] {
                let c = along(-alpha * rho);
                let fc = f(&c);
                (c, fc)
            } else {
                let c = along(rho);
                let fc = f(&c);
                (c, fc)
            };
            if fc < fr.min(values[d]) {
                simplex[d] = contracted;
                values[d] = fc;
            } else {
                for i in 1..=d {
                    let shrunk: Vec<f64> = (0..d)
                        .map(|k| simplex[0][k] + sigma * (simplex[i][k] - simplex[0][k]))
                        .collect();
                    values[i] = f(&shrunk);
                    simplex[i] = shrunk;
                }
            }
        }
    }
    let best = (0..=d)
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .expect("nonempty simplex");
    Minimum {
        x: simplex[best].clone(),
        value: values[best],
        converged,
    }
}

/// Columns of the `T`-eigenbasis as pure states.
pub fn t_eigenbasis_states(rep: &ProjectiveRep, sub: &Subgroup) -> Result<Vec<PureState>> {
    let q = t_eigenbasis(rep, sub)?;
    (0..rep.dim())
        .map(|j| PureState::normalized(q.column(j)))
        .collect()
}

/// Spectrum audit of channel outputs against a majorizing distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingReport {
    pub samples: usize,
    pub violations: usize,
    /// Largest prefix-sum excess over the bound; negative values are slack.
    pub max_excess: Option<f64>,
    pub first_violation: Option<usize>,
}

impl SamplingReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    fn collect(samples: usize, mut excess: impl FnMut(usize) -> f64) -> Self {
        let mut report = Self {
            samples,
            violations: 0,
            max_excess: None,
            first_violation: None,
        };
        for i in 0..samples {
            let e = excess(i);
            if e > PREFIX_TOL {
                report.violations += 1;
                report.first_violation.get_or_insert(i);
            }
            report.max_excess = Some(report.max_excess.map_or(e, |m: f64| m.max(e)));
        }
        report
    }
}

/// Haar-random `f`: spectrum of `Phi(|f><f|)` against `p`.
pub fn prop2_sampling_oracle(
    phi: &MixedUnitaryChannel,
    p: &ProbVector,
    samples: usize,
    seed: u64,
) -> SamplingReport {
    let bound = p.to_f64();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    SamplingReport::collect(samples, |_| {
        let f = random_pure_state_with(phi.dim(), &mut rng);
        max_prefix_excess(
            &hermitian_eigenvalues_fast(&phi.apply_vector(f.amplitudes())),
            &bound,
        )
    })
}

/// Largest deviation of the spectrum of `Phi(|e_j><e_j|)` from `p` over the given states.
pub fn attainment_residual(phi: &MixedUnitaryChannel, states: &[PureState], p: &ProbVector) -> f64 {
    let mut target = p.to_f64();
    target.resize(phi.dim(), 0.0);
    states
        .iter()
        .map(|e| {
            let spectrum = hermitian_eigenvalues_fast(&phi.apply_vector(e.amplitudes()));
            spectrum
                .iter()
                .zip(&target)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

/// Haar-random `f` in `K (x) H`: spectrum of `(Id (x) Phi)(|f><f|)` against `q` padded.
pub fn prop4_sampling_oracle(
    phi: &MixedUnitaryChannel,
    q: &ProbVector,
    dim_k: usize,
    samples: usize,
    seed: u64,
) -> Result<SamplingReport> {
    if !spanning_check(phi.rep()) {
        return Err(Error::HypothesesNotMet(
            "representation does not span the matrix algebra".into(),
        ));
    }
    let id = ComplexMatrix::identity(dim_k);
    let kraus: Vec<(f64, ComplexMatrix)> =
        phi.kraus().iter().map(|(w, u)| (*w, id.kron(u))).collect();
    let bound = q.to_f64();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(SamplingReport::collect(samples, |_| {
        let f = random_pure_state_with(dim_k * phi.dim(), &mut rng);
        max_prefix_excess(
            &hermitian_eigenvalues_fast(&kraus_output(&kraus, f.amplitudes())),
            &bound,
        )
    }))
}

/// Haar-random `f` in `H (x) K`: spectrum of `(Phi (x) Omega)(|f><f|)` against `(pq)` sorted.
pub fn prop5_sampling_oracle(
    phi: &MixedUnitaryChannel,
    omega: &MixedUnitaryChannel,
    p: &ProbVector,
    q: &ProbVector,
    samples: usize,
    seed: u64,
) -> Result<SamplingReport> {
    if !spanning_check(phi.rep()) {
        return Err(Error::HypothesesNotMet(
            "representation does not span the matrix algebra".into(),
        ));
    }
    let kraus: Vec<(f64, ComplexMatrix)> = phi
        .kraus()
        .iter()
        .flat_map(|(a, u)| omega.kraus().iter().map(move |(b, v)| (a * b, u.kron(v))))
        .collect();
    let bound = product_distribution(p, q).to_f64();
    let dim = phi.dim() * omega.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(SamplingReport::collect(samples, |_| {
        let f = random_pure_state_with(dim, &mut rng);
        max_prefix_excess(
            &hermitian_eigenvalues_fast(&kraus_output(&kraus, f.amplitudes())),
            &bound,
        )
    }))
}

fn kraus_output(kraus: &[(f64, ComplexMatrix)], f: &[Complex64]) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(f.len(), f.len());
    for (w, u) in kraus {
        out.add_outer(&u.mul_vec(f), *w);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeakAdditivityReport {
    pub level: usize,
    pub min_entropy: f64,
    /// `level * H(p)`.
    pub bound: f64,
    /// Best value over product warm starts.
    pub product_value: f64,
    pub gap: f64,
    pub converged: bool,
    pub holds: bool,
}

/// Minimal output entropy of `Phi (x) Phi` against `2 H(p)`.
///
/// `basis` are single-system states attaining `H(p)`; their pairwise products
/// seed the optimizer.
pub fn weak_additivity_check(
    phi: &MixedUnitaryChannel,
    p: &ProbVector,
    basis: &[PureState],
    restarts: usize,
    seed: u64,
    base: LogBase,
) -> WeakAdditivityReport {
    let square = phi.tensor(phi);
    let warm: Vec<PureState> = basis
        .iter()
        .flat_map(|a| basis.iter().map(move |b| a.tensor(b)))
        .collect();
    let product_value = warm
        .iter()
        .map(|s| output_entropy(&square, s.amplitudes(), base))
        .fold(f64::INFINITY, f64::min);
    let result = min_output_entropy(
        &square,
        &MinEntropyOptions {
            restarts,
            seed,
            base,
            warm_starts: warm,
            ..MinEntropyOptions::default()
        },
    );
    let bound = 2.0 * shannon_entropy(&p.to_f64(), base);
    let gap = result.min_entropy - bound;
    WeakAdditivityReport {
        level: 2,
        min_entropy: result.min_entropy,
        bound,
        product_value,
        gap,
        converged: result.converged,
        holds: gap >= -CROSS_CHECK_TOL && (product_value - bound).abs() <= ATTAINMENT_TOL,
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOptions {
    pub base: LogBase,
    pub seed: u64,
    pub restarts: usize,
    /// 2 adds the weak-additivity audit on `Phi (x) Phi`.
    pub tensor_level: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self {
            base: LogBase::Two,
            seed: 0,
            restarts: 32,
            tensor_level: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisFlags {
    pub irreducible: bool,
    pub restriction_unitary: bool,
    pub condition_holds: bool,
    pub spanning: bool,
}

impl HypothesisFlags {
    pub fn all(&self) -> bool {
        self.irreducible && self.restriction_unitary && self.condition_holds && self.spanning
    }
}

/// One candidate subgroup as it appears in reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateSummary {
    pub members: Vec<usize>,
    pub p: Vec<String>,
    pub coset_representatives: Vec<usize>,
    pub restriction_unitary: bool,
    pub condition_holds: bool,
    pub tie_permutations_tried: u64,
    pub witness: Option<ConditionWitness>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericalEstimate {
    pub min_entropy: f64,
    /// `log n - min_entropy`; a lower bound on the one-shot capacity.
    pub capacity_estimate: f64,
    pub restarts_used: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapacityReport {
    pub n: usize,
    pub log_base: LogBase,
    pub commutant_dimension: usize,
    pub flags: HypothesisFlags,
    pub theorem_applicable: bool,
    pub subgroup: Option<Vec<usize>>,
    pub p: Option<Vec<String>>,
    pub entropy_p: Option<f64>,
    /// Classical capacity, equal to the one-shot capacity, when the theorem applies.
    pub capacity: Option<f64>,
    pub numerical: NumericalEstimate,
    pub cross_check_residual: Option<f64>,
    pub cross_check_passed: Option<bool>,
    pub attainment_residual: Option<f64>,
    pub level2: Option<WeakAdditivityReport>,
    pub candidates: Vec<CandidateSummary>,
    pub notes: Vec<String>,
}

/// Checks the hypotheses, evaluates the closed form when they hold and
/// cross-checks it against the optimizer.
pub fn full_capacity_pipeline(
    phi: &MixedUnitaryChannel,
    options: &PipelineOptions,
) -> Result<CapacityReport> {
    let rep = phi.rep();
    let n = rep.dim();
    let base = options.base;
    let commutant = commutant_dimension(rep);
    let irreducible = commutant == 1;
    let spanning = spanning_check(rep);
    let mut notes = Vec::new();

    let search = if irreducible {
        Some(find_admissible_subgroup(rep, phi.dist())?)
    } else {
        notes.push(format!(
            "representation is reducible (commutant dimension {commutant})"
        ));
        None
    };
    let candidates: Vec<CandidateSummary> = search
        .iter()
        .flat_map(|s| s.candidates.iter())
        .map(|c| CandidateSummary {
            members: c.subgroup.members().to_vec(),
            p: c.cosets.p_exact().iter().map(format_rational).collect(),
            coset_representatives: (0..c.cosets.p_exact().len())
                .map(|j| c.cosets.representative(j))
                .collect(),
            restriction_unitary: c.restriction_unitary,
            condition_holds: c.condition.holds,
            tie_permutations_tried: c.condition.tie_permutations_tried,
            witness: c.condition.witness.clone(),
        })
        .collect();
    let chosen = search.as_ref().and_then(|s| s.chosen());
    let reported = chosen.or_else(|| {
        let s = search.as_ref()?;
        s.candidates
            .iter()
            .find(|c| c.restriction_unitary)
            .or(s.candidates.first())
    });
    if irreducible && candidates.is_empty() {
        notes.push(format!("no normal abelian subgroup of index {n}"));
    }
    let flags = HypothesisFlags {
        irreducible,
        restriction_unitary: reported.is_some_and(|c| c.restriction_unitary),
        condition_holds: reported.is_some_and(|c| c.condition.holds),
        spanning,
    };
    if !spanning {
        notes.push(
            "unitaries do not span the matrix algebra; tensor-level claims are not covered".into(),
        );
    }

    let warm_starts = match chosen {
        Some(c) => t_eigenbasis_states(rep, &c.subgroup)?,
        None => Vec::new(),
    };
    let optimization = min_output_entropy(
        phi,
        &MinEntropyOptions {
            restarts: options.restarts,
            seed: options.seed,
            base,
            warm_starts: warm_starts.clone(),
            ..MinEntropyOptions::default()
        },
    );
    let log_n = base.log(n as f64);
    let numerical = NumericalEstimate {
        min_entropy: optimization.min_entropy,
        capacity_estimate: log_n - optimization.min_entropy,
        restarts_used: optimization.restarts_used,
        converged: optimization.converged,
    };

    let theorem_applicable = flags.all();
    let mut report = CapacityReport {
        n,
        log_base: base,
        commutant_dimension: commutant,
        flags,
        theorem_applicable,
        subgroup: reported.map(|c| c.subgroup.members().to_vec()),
        p: reported.map(|c| c.cosets.p_exact().iter().map(format_rational).collect()),
        entropy_p: None,
        capacity: None,
        numerical,
        cross_check_residual: None,
        cross_check_passed: None,
        attainment_residual: None,
        level2: None,
        candidates,
        notes,
    };
    let Some(c) = chosen.filter(|_| theorem_applicable) else {
        report
            .notes
            .push("theorem not applicable; only the numerical lower bound on the one-shot capacity is reported".into());
        return Ok(report);
    };

    let p = c.cosets.p();
    let closed = theorem_capacity(n, &p, base);
    let residual = (closed.capacity - report.numerical.capacity_estimate).abs();
    report.entropy_p = Some(closed.entropy_p);
    report.capacity = Some(closed.capacity);
    report.cross_check_residual = Some(residual);
    report.cross_check_passed = Some(residual <= CROSS_CHECK_TOL);
    report.attainment_residual = Some(attainment_residual(phi, &warm_starts, &p));
    if options.tensor_level >= 2 {
        report.level2 = Some(weak_additivity_check(
            phi,
            &p,
            &warm_starts,
            options.restarts,
            options.seed.wrapping_add(1),
            base,
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::channel::GroupDistribution;
    use crate::rational::ratio;
    use crate::representation::builtin::{heisenberg_weyl, pauli};

    fn qutrit() -> MixedUnitaryChannel {
        let hw = heisenberg_weyl(3);
        let weights = [6, 3, 2, 3, 3, 1, 3, 2, 1]
            .iter()
            .map(|&w| ratio(w, 24))
            .collect();
        let dist = GroupDistribution::new(Arc::clone(hw.rep.group()), weights).unwrap();
        MixedUnitaryChannel::new(hw.rep, dist).unwrap()
    }

    fn exact(v: &[(i64, i64)]) -> ProbVector {
        ProbVector::exact(v.iter().map(|&(a, b)| ratio(a, b)).collect()).unwrap()
    }

    const EXAMPLE2_CAPACITY: f64 = 0.125_814_6;

    #[test]
    fn closed_form_examples() {
        let c = theorem_capacity(3, &exact(&[(1, 2), (1, 3), (1, 6)]), LogBase::Two);
        let formula = 3f64.log2() - 0.5 * 2f64.log2() - 3f64.log2() / 3.0 - 6f64.log2() / 6.0;
        assert!((c.capacity - formula).abs() < 1e-12);
        assert!((c.capacity - EXAMPLE2_CAPACITY).abs() < 1e-7);
        assert!((c.entropy_p - 1.459_147_9).abs() < 1e-7);

        let point = theorem_capacity(4, &exact(&[(1, 1), (0, 1), (0, 1), (0, 1)]), LogBase::Two);
        assert_eq!(point.capacity, 2.0);
        let uniform = theorem_capacity(3, &exact(&[(1, 3), (1, 3), (1, 3)]), LogBase::E);
        assert!(uniform.capacity.abs() < 1e-12);
    }

    #[test]
    fn qubit_formula() {
        let c = qubit_capacity_from_lambdas(0.6, 0.6, 0.6).unwrap();
        assert!((c - 0.278_072).abs() < 1e-6);
        let weights = pauli_weights_from_lambdas(0.6, 0.6, 0.6);
        for (w, e) in weights.iter().zip([0.7, 0.1, 0.1, 0.1]) {
            assert!((w - e).abs() < 1e-15);
        }
        assert!((qubit_capacity_from_lambdas(1.0, 1.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(qubit_capacity_from_lambdas(0.0, 0.0, 0.0).unwrap().abs() < 1e-15);
        assert!(matches!(
            qubit_capacity_from_lambdas(1.0, -1.0, 1.0),
            Err(Error::InvalidLambdas(..))
        ));
    }

    #[test]
    fn min_entropy_of_qutrit() {
        let phi = qutrit();
        let result = min_output_entropy(
            &phi,
            &MinEntropyOptions {
                restarts: 8,
                seed: 3,
                ..MinEntropyOptions::default()
            },
        );
        assert!(
            (result.min_entropy - 1.459_147_9).abs() < 1e-6,
            "{}",
            result.min_entropy
        );
        let again = output_entropy(&phi, result.argmin.amplitudes(), LogBase::Two);
        assert!((again - result.min_entropy).abs() < 1e-9);
        assert!(result.trace.iter().all(|&v| v >= result.min_entropy));
    }

    #[test]
    fn min_entropy_limits() {
        let hw = heisenberg_weyl(3);
        let group = Arc::clone(hw.rep.group());
        let options = MinEntropyOptions {
            restarts: 4,
            ..MinEntropyOptions::default()
        };
        let id = MixedUnitaryChannel::new(
            hw.rep.clone(),
            GroupDistribution::point_mass(Arc::clone(&group), 0),
        )
        .unwrap();
        assert!(min_output_entropy(&id, &options).min_entropy < 1e-9);
        let dep = MixedUnitaryChannel::new(hw.rep, GroupDistribution::uniform(group)).unwrap();
        assert!((min_output_entropy(&dep, &options).min_entropy - 3f64.log2()).abs() < 1e-9);
    }

    #[test]
    fn oracles_on_qutrit() {
        let phi = qutrit();
        let p = exact(&[(1, 2), (1, 3), (1, 6)]);
        let report = prop2_sampling_oracle(&phi, &p, 200, 1);
        assert!(report.passed());
        assert!(report.max_excess.unwrap() <= PREFIX_TOL);

        let hw = heisenberg_weyl(3);
        let basis = t_eigenbasis_states(&hw.rep, &hw.v_subgroup()).unwrap();
        assert!(attainment_residual(&phi, &basis, &p) < 1e-10);

        assert!(prop4_sampling_oracle(&phi, &p, 3, 100, 2).unwrap().passed());
        assert!(prop5_sampling_oracle(&phi, &phi, &p, &p, 50, 3)
            .unwrap()
            .passed());
    }

    #[test]
    fn prop4_requires_spanning() {
        let t = crate::representation::builtin::trivial(2);
        let phi = MixedUnitaryChannel::new(
            t.rep.clone(),
            GroupDistribution::uniform(Arc::clone(t.rep.group())),
        )
        .unwrap();
        let p = exact(&[(1, 1), (0, 1)]);
        assert!(matches!(
            prop4_sampling_oracle(&phi, &p, 2, 1, 0),
            Err(Error::HypothesesNotMet(_))
        ));
    }

    #[test]
    fn empty_sample_suite() {
        let report = prop2_sampling_oracle(&qutrit(), &exact(&[(1, 2), (1, 3), (1, 6)]), 0, 0);
        assert_eq!(report.samples, 0);
        assert!(report.passed());
        assert_eq!(report.max_excess, None);
    }

    #[test]
    fn pipeline_on_qutrit() {
        let report = full_capacity_pipeline(&qutrit(), &PipelineOptions::default()).unwrap();
        assert!(report.theorem_applicable);
        assert!(report.flags.all());
        assert_eq!(report.subgroup.as_deref(), Some(&[0, 3, 6][..]));
        assert_eq!(report.p.as_ref().unwrap(), &["1/2", "1/3", "1/6"]);
        assert!((report.capacity.unwrap() - EXAMPLE2_CAPACITY).abs() < 1e-7);
        assert_eq!(report.cross_check_passed, Some(true));
        assert_eq!(report.candidates.len(), 4);
    }

    #[test]
    fn pipeline_on_qubit() {
        let p = pauli();
        let weights = vec![ratio(7, 10), ratio(1, 10), ratio(1, 10), ratio(1, 10)];
        let phi = MixedUnitaryChannel::new(
            p.rep.clone(),
            GroupDistribution::new(Arc::clone(p.rep.group()), weights).unwrap(),
        )
        .unwrap();
        let report = full_capacity_pipeline(&phi, &PipelineOptions::default()).unwrap();
        let lambdas = qubit_capacity_from_lambdas(0.6, 0.6, 0.6).unwrap();
        assert!((report.capacity.unwrap() - lambdas).abs() < 1e-12);
    }

    #[test]
    fn pipeline_withholds_closed_form_when_condition_fails() {
        let hw = heisenberg_weyl(3);
        // Every order-3 subgroup sees a heavy element in a light coset.
        let weights = [4, 0, 0, 0, 3, 0, 0, 0, 2]
            .iter()
            .map(|&w| ratio(w, 9))
            .collect();
        let dist = GroupDistribution::new(Arc::clone(hw.rep.group()), weights).unwrap();
        let phi = MixedUnitaryChannel::new(hw.rep, dist).unwrap();
        let report = full_capacity_pipeline(&phi, &PipelineOptions::default()).unwrap();
        assert!(!report.flags.condition_holds);
        assert!(!report.theorem_applicable);
        assert_eq!(report.capacity, None);
        assert!(report.numerical.capacity_estimate >= 0.0);
    }
}
