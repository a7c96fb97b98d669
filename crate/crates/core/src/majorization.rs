//! Majorization of probability vectors and the coset ordering condition.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::channel::GroupDistribution;
use crate::error::{Error, Result};
use crate::group::{enumerate_normal_abelian_subgroups, quotient, QuotientStructure, Subgroup};
use crate::rational::{self, Rational};
use crate::representation::{commutant_dimension, restriction_is_unitary_rep, ProjectiveRep};

const FLOAT_SUM_TOL: f64 = 1e-9;
const PREFIX_TOL: f64 = 1e-9;
/// Largest number of tie arrangements tried before falling back to the sorted one.
const MAX_TIE_PERMUTATIONS: u64 = 3_628_800;

/// A probability vector, exact or floating point.
#[derive(Debug, Clone, PartialEq)]
pub enum ProbVector {
    Exact(Vec<Rational>),
    Float(Vec<f64>),
}

impl ProbVector {
    pub fn exact(values: Vec<Rational>) -> Result<Self> {
        if values.iter().any(Signed::is_negative) {
            return Err(Error::InvalidDistribution("negative entry".into()));
        }
        if !rational::sum(&values).is_one() {
            return Err(Error::InvalidDistribution("entries do not sum to 1".into()));
        }
        Ok(Self::Exact(values))
    }

    pub fn float(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|&x| x.is_nan() || x < 0.0) {
            return Err(Error::InvalidDistribution("negative or NaN entry".into()));
        }
        let total: f64 = values.iter().sum();
        if (total - 1.0).abs() > FLOAT_SUM_TOL {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {total}"
            )));
        }
        Ok(Self::Float(values))
    }

    pub fn len(&self) -> usize {
        match self {
            Self::Exact(v) => v.len(),
            Self::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            Self::Exact(v) => v.iter().map(rational::to_f64).collect(),
            Self::Float(v) => v.clone(),
        }
    }

    pub fn as_exact(&self) -> Option<&[Rational]> {
        match self {
            Self::Exact(v) => Some(v),
            Self::Float(_) => None,
        }
    }
}

/// Sorted descending; equal entries keep their original order.
pub fn descending(v: &ProbVector) -> ProbVector {
    match v {
        ProbVector::Exact(x) => {
            let mut x = x.clone();
            x.sort_by(|a, b| b.cmp(a));
            ProbVector::Exact(x)
        }
        ProbVector::Float(x) => {
            let mut x = x.clone();
            x.sort_by(|a, b| b.total_cmp(a));
            ProbVector::Float(x)
        }
    }
}

/// Whether `mu` majorizes `nu`: each prefix sum of `nu` sorted is at most that of `mu`.
///
/// Exact when both are rational, otherwise compared in floating point with
/// tolerance `1e-9` per prefix.
pub fn majorizes(mu: &ProbVector, nu: &ProbVector) -> bool {
    match (descending(mu), descending(nu)) {
        (ProbVector::Exact(a), ProbVector::Exact(b)) => {
            let len = a.len().max(b.len());
            let zero = Rational::zero();
            let (mut sa, mut sb) = (Rational::zero(), Rational::zero());
            (0..len).all(|k| {
                sa += a.get(k).unwrap_or(&zero);
                sb += b.get(k).unwrap_or(&zero);
                sb <= sa
            })
        }
        (a, b) => max_prefix_excess(&b.to_f64(), &a.to_f64()) <= PREFIX_TOL,
    }
}

/// `max_k (sum_{i<=k} nu_i - sum_{i<=k} mu_i)` over sorted, zero-padded inputs.
///
/// Non-positive exactly when `nu` is majorized by `mu`; the negated value is the slack.
pub fn max_prefix_excess(nu: &[f64], mu: &[f64]) -> f64 {
    let sort = |v: &[f64]| {
        let mut v = v.to_vec();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    };
    let (nu, mu) = (sort(nu), sort(mu));
    let len = nu.len().max(mu.len());
    let (mut sn, mut sm) = (0.0, 0.0);
    let mut worst = f64::NEG_INFINITY;
    for k in 0..len {
        sn += nu.get(k).copied().unwrap_or(0.0);
        sm += mu.get(k).copied().unwrap_or(0.0);
        worst = worst.max(sn - sm);
    }
    worst
}

pub fn pad(q: &ProbVector, zeros: usize) -> ProbVector {
    match q {
        ProbVector::Exact(v) => {
            let mut v = v.clone();
            v.resize(v.len() + zeros, Rational::zero());
            ProbVector::Exact(v)
        }
        ProbVector::Float(v) => {
            let mut v = v.clone();
            v.resize(v.len() + zeros, 0.0);
            ProbVector::Float(v)
        }
    }
}

/// All products `p_k q_m`, sorted descending.
pub fn product_distribution(p: &ProbVector, q: &ProbVector) -> ProbVector {
    let product = match (p, q) {
        (ProbVector::Exact(a), ProbVector::Exact(b)) => ProbVector::Exact(
            a.iter()
                .flat_map(|x| b.iter().map(move |y| x * y))
                .collect(),
        ),
        _ => {
            let (a, b) = (p.to_f64(), q.to_f64());
            ProbVector::Float(
                a.iter()
                    .flat_map(|x| b.iter().map(move |y| x * y))
                    .collect(),
            )
        }
    };
    descending(&product)
}

/// Coset sums `p_[g] = sum_t pi_{gt}`, sorted descending.
#[derive(Debug, Clone, PartialEq)]
pub struct CosetDistribution {
    quotient: QuotientStructure,
    p: Vec<Rational>,
    coset_order: Vec<usize>,
    per_coset_weights: Vec<Vec<Rational>>,
}

impl CosetDistribution {
    pub fn quotient(&self) -> &QuotientStructure {
        &self.quotient
    }

    pub fn p(&self) -> ProbVector {
        ProbVector::Exact(self.p.clone())
    }

    pub fn p_exact(&self) -> &[Rational] {
        &self.p
    }

    /// Coset indices in the order of `p`.
    pub fn coset_order(&self) -> &[usize] {
        &self.coset_order
    }

    /// Representative of the coset carrying `p_j`.
    pub fn representative(&self, j: usize) -> usize {
        self.quotient.representatives()[self.coset_order[j]]
    }

    /// The weights `{pi_{g_j t}}` of the coset carrying `p_j`.
    pub fn weights(&self, j: usize) -> &[Rational] {
        &self.per_coset_weights[j]
    }
}

pub fn coset_distribution(pi: &GroupDistribution, q: &QuotientStructure) -> CosetDistribution {
    let sums: Vec<Rational> = q
        .cosets()
        .iter()
        .map(|c| rational::sum(c.iter().map(|&g| pi.weight(g))))
        .collect();
    let mut coset_order: Vec<usize> = (0..q.len()).collect();
    coset_order.sort_by(|&a, &b| sums[b].cmp(&sums[a]));
    CosetDistribution {
        quotient: q.clone(),
        p: coset_order.iter().map(|&c| sums[c].clone()).collect(),
        per_coset_weights: coset_order
            .iter()
            .map(|&c| {
                q.cosets()[c]
                    .iter()
                    .map(|&g| pi.weight(g).clone())
                    .collect()
            })
            .collect(),
        coset_order,
    }
}

/// A pair of cosets breaking the ordering: `pi_heavier` in the later coset `j`
/// exceeds `pi_lighter` in the earlier coset `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionWitness {
    pub j: usize,
    pub k: usize,
    pub heavier: usize,
    pub lighter: usize,
    #[serde(with = "rational::serde_string")]
    pub heavier_weight: Rational,
    #[serde(with = "rational::serde_string")]
    pub lighter_weight: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub holds: bool,
    /// First violation found in the default arrangement.
    pub witness: Option<ConditionWitness>,
    pub tie_permutations_tried: u64,
    /// Positions into `p` realizing the condition, when it holds.
    pub arrangement: Option<Vec<usize>>,
}

/// Whether some descending arrangement of the cosets puts every weight of a
/// later coset at or below every weight of an earlier one.
///
/// Only cosets with equal `p` may be reordered; all such arrangements are
/// tried up to a cap, beyond which the arrangement sorted by largest weight
/// is used (it succeeds whenever any arrangement does).
pub fn check_ordering_condition(cd: &CosetDistribution) -> ConditionReport {
    let n = cd.p.len();
    let bounds: Vec<(Rational, Rational)> = cd
        .per_coset_weights
        .iter()
        .map(|w| {
            let min = w.iter().min().cloned().unwrap_or_else(Rational::zero);
            let max = w.iter().max().cloned().unwrap_or_else(Rational::zero);
            (min, max)
        })
        .collect();
    // min(earlier) >= max(later) for consecutive positions implies it for all pairs
    let ok = |arr: &[usize]| arr.windows(2).all(|w| bounds[w[0]].0 >= bounds[w[1]].1);

    let mut blocks: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || cd.p[i] != cd.p[start] {
            blocks.push((start, i));
            start = i;
        }
    }

    let default: Vec<usize> = (0..n).collect();
    let witness = first_violation(cd, &default, &bounds);
    let total: u64 = blocks
        .iter()
        .map(|&(a, b)| (1..=(b - a) as u64).product::<u64>())
        .try_fold(1u64, |acc, f| acc.checked_mul(f))
        .unwrap_or(u64::MAX);

    let mut tried = 0;
    if total <= MAX_TIE_PERMUTATIONS {
        let mut arrangement = default.clone();
        loop {
            tried += 1;
            if ok(&arrangement) {
                return ConditionReport {
                    holds: true,
                    witness: None,
                    tie_permutations_tried: tried,
                    arrangement: Some(arrangement),
                };
            }
            if !next_block_permutation(&mut arrangement, &blocks) {
                break;
            }
        }
    } else {
        let mut arrangement = default.clone();
        for &(a, b) in &blocks {
            arrangement[a..b].sort_by(|&x, &y| {
                bounds[y]
                    .1
                    .cmp(&bounds[x].1)
                    .then(bounds[y].0.cmp(&bounds[x].0))
            });
        }
        tried = 1;
        if ok(&arrangement) {
            return ConditionReport {
                holds: true,
                witness: None,
                tie_permutations_tried: tried,
                arrangement: Some(arrangement),
            };
        }
    }
    ConditionReport {
        holds: false,
        witness,
        tie_permutations_tried: tried,
        arrangement: None,
    }
}

fn first_violation(
    cd: &CosetDistribution,
    arr: &[usize],
    bounds: &[(Rational, Rational)],
) -> Option<ConditionWitness> {
    let cosets = cd.quotient.cosets();
    for (pos, w) in arr.windows(2).enumerate() {
        let (earlier, later) = (w[0], w[1]);
        if bounds[earlier].0 < bounds[later].1 {
            let members = |j: usize| &cosets[cd.coset_order[j]];
            let weights = |j: usize| &cd.per_coset_weights[j];
            let (li, lighter_weight) = weights(earlier)
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.cmp(b.1))
                .unwrap();
            let (hi, heavier_weight) = weights(later)
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.cmp(b.1))
                .unwrap();
            return Some(ConditionWitness {
                j: pos + 1,
                k: pos,
                heavier: members(later)[hi],
                lighter: members(earlier)[li],
                heavier_weight: heavier_weight.clone(),
                lighter_weight: lighter_weight.clone(),
            });
        }
    }
    None
}

/// Advances to the next arrangement, permuting within each block like an odometer.
fn next_block_permutation(arr: &mut [usize], blocks: &[(usize, usize)]) -> bool {
    for &(a, b) in blocks.iter().rev() {
        if next_permutation(&mut arr[a..b]) {
            return true;
        }
        // wrapped around to the sorted state; carry into the previous block
    }
    false
}

/// Lexicographic successor; on the last permutation resets to sorted and returns false.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Outcome for one candidate subgroup during the search.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub subgroup: Subgroup,
    pub restriction_unitary: bool,
    pub cosets: CosetDistribution,
    pub condition: ConditionReport,
}

impl Candidate {
    pub fn admissible(&self) -> bool {
        self.restriction_unitary && self.condition.holds
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubgroupSearch {
    pub candidates: Vec<Candidate>,
    /// Index into `candidates` of the first admissible subgroup.
    pub admissible: Option<usize>,
}

impl SubgroupSearch {
    pub fn chosen(&self) -> Option<&Candidate> {
        self.admissible.map(|i| &self.candidates[i])
    }
}

/// Examines every normal abelian subgroup of index `n` in enumeration order.
pub fn find_admissible_subgroup(
    rep: &ProjectiveRep,
    pi: &GroupDistribution,
) -> Result<SubgroupSearch> {
    let commutant = commutant_dimension(rep);
    if commutant != 1 {
        return Err(Error::NotIrreducible {
            commutant_dimension: commutant,
        });
    }
    let group = rep.group();
    let mut candidates = Vec::new();
    let mut admissible = None;
    for subgroup in enumerate_normal_abelian_subgroups(group, rep.dim()) {
        let q = quotient(group, &subgroup)?;
        let cosets = coset_distribution(pi, &q);
        let condition = check_ordering_condition(&cosets);
        let candidate = Candidate {
            restriction_unitary: restriction_is_unitary_rep(rep, &subgroup),
            subgroup,
            cosets,
            condition,
        };
        if admissible.is_none() && candidate.admissible() {
            admissible = Some(candidates.len());
        }
        candidates.push(candidate);
    }
    Ok(SubgroupSearch {
        candidates,
        admissible,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::rational::ratio;
    use crate::representation::builtin::{heisenberg_weyl, pauli};

    fn exact(v: &[(i64, i64)]) -> ProbVector {
        ProbVector::exact(v.iter().map(|&(a, b)| ratio(a, b)).collect()).unwrap()
    }

    fn qutrit_pi() -> (
        crate::representation::builtin::Construction,
        GroupDistribution,
    ) {
        let hw = heisenberg_weyl(3);
        let weights = [6, 3, 2, 3, 3, 1, 3, 2, 1]
            .iter()
            .map(|&w| ratio(w, 24))
            .collect();
        let pi = GroupDistribution::new(Arc::clone(hw.rep.group()), weights).unwrap();
        (hw, pi)
    }

    #[test]
    fn descending_examples() {
        assert_eq!(
            descending(&exact(&[(1, 6), (1, 2), (1, 3)])),
            exact(&[(1, 2), (1, 3), (1, 6)])
        );
        let sorted = exact(&[(1, 2), (1, 3), (1, 6)]);
        assert_eq!(descending(&sorted), sorted);
        let flat = exact(&[(1, 3), (1, 3), (1, 3)]);
        assert_eq!(descending(&flat), flat);
    }

    #[test]
    fn majorization_examples() {
        let uniform = exact(&[(1, 3), (1, 3), (1, 3)]);
        let p = exact(&[(1, 2), (1, 3), (1, 6)]);
        assert!(majorizes(&p, &uniform));
        assert!(!majorizes(&uniform, &p));
        assert!(majorizes(&p, &p));
        let half = exact(&[(1, 2), (1, 2), (0, 1)]);
        let skew = exact(&[(3, 5), (1, 5), (1, 5)]);
        assert!(!majorizes(&skew, &half));
        let f = ProbVector::float(vec![0.6, 0.2, 0.2]).unwrap();
        assert!(!majorizes(&f, &half));
    }

    #[test]
    fn padding() {
        let q = exact(&[(1, 1), (0, 1)]);
        assert_eq!(pad(&q, 2), exact(&[(1, 1), (0, 1), (0, 1), (0, 1)]));
        assert_eq!(pad(&q, 0), q);
        let p = exact(&[(1, 2), (1, 3), (1, 6)]);
        let u = exact(&[(1, 3), (1, 3), (1, 3)]);
        assert_eq!(majorizes(&pad(&p, 3), &u), majorizes(&p, &pad(&u, 5)));
    }

    #[test]
    fn products() {
        let p = exact(&[(1, 2), (1, 3), (1, 6)]);
        let expected = exact(&[
            (1, 4),
            (1, 6),
            (1, 6),
            (1, 9),
            (1, 12),
            (1, 12),
            (1, 18),
            (1, 18),
            (1, 36),
        ]);
        assert_eq!(product_distribution(&p, &p), expected);
        let point = exact(&[(1, 1), (0, 1)]);
        let q = exact(&[(2, 3), (1, 3)]);
        assert_eq!(
            product_distribution(&point, &q),
            exact(&[(2, 3), (1, 3), (0, 1), (0, 1)])
        );
        let u = exact(&[(1, 2), (1, 2)]);
        assert_eq!(
            product_distribution(&u, &u),
            exact(&[(1, 4), (1, 4), (1, 4), (1, 4)])
        );
    }

    #[test]
    fn qutrit_coset_distributions() {
        let (hw, pi) = qutrit_pi();
        let group = hw.rep.group();
        let v = coset_distribution(&pi, &quotient(group, &hw.v_subgroup()).unwrap());
        assert_eq!(v.p(), exact(&[(1, 2), (1, 3), (1, 6)]));
        let report = check_ordering_condition(&v);
        assert!(report.holds);

        let w = coset_distribution(&pi, &quotient(group, &hw.w_subgroup()).unwrap());
        assert_eq!(w.p(), exact(&[(11, 24), (7, 24), (6, 24)]));
        let report = check_ordering_condition(&w);
        assert!(!report.holds);
        let witness = report.witness.unwrap();
        assert_eq!((witness.k, witness.j), (0, 1));
        assert_eq!(witness.lighter_weight, ratio(1, 12));
        assert_eq!(witness.heavier_weight, ratio(1, 8));
        assert_eq!(pi.weight(witness.lighter), &ratio(1, 12));
        assert_eq!(pi.weight(witness.heavier), &ratio(1, 8));
    }

    #[test]
    fn point_mass_satisfies_condition() {
        let hw = heisenberg_weyl(3);
        let pi = GroupDistribution::point_mass(Arc::clone(hw.rep.group()), 0);
        let cd = coset_distribution(&pi, &quotient(hw.rep.group(), &hw.w_subgroup()).unwrap());
        assert_eq!(cd.p(), exact(&[(1, 1), (0, 1), (0, 1)]));
        assert!(check_ordering_condition(&cd).holds);
    }

    #[test]
    fn ties_are_resolved_by_permutation() {
        // Cosets with equal sums where only the swapped order works.
        let p = pauli();
        let group = p.rep.group();
        // coset {I, Z} gets (1/2, 0); coset {X, XZ} gets (1/4, 1/4)
        let pi = GroupDistribution::new(
            Arc::clone(group),
            vec![ratio(1, 2), ratio(0, 1), ratio(1, 4), ratio(1, 4)],
        )
        .unwrap();
        let cd = coset_distribution(&pi, &quotient(group, &p.w_subgroup()).unwrap());
        let report = check_ordering_condition(&cd);
        // (1/2,0) vs (1/4,1/4) in either order: min 0 < 1/4 and min 1/4 < 1/2
        assert!(!report.holds);
        assert_eq!(report.tie_permutations_tried, 2);

        let pi = GroupDistribution::new(
            Arc::clone(group),
            vec![ratio(1, 4), ratio(1, 4), ratio(1, 4), ratio(1, 4)],
        )
        .unwrap();
        let cd = coset_distribution(&pi, &quotient(group, &p.w_subgroup()).unwrap());
        assert!(check_ordering_condition(&cd).holds);
    }

    #[test]
    fn admissible_search_on_qutrit() {
        let (hw, pi) = qutrit_pi();
        let search = find_admissible_subgroup(&hw.rep, &pi).unwrap();
        let members: Vec<Vec<usize>> = search
            .candidates
            .iter()
            .map(|c| c.subgroup.members().to_vec())
            .collect();
        assert_eq!(
            members,
            vec![vec![0, 1, 2], vec![0, 3, 6], vec![0, 4, 8], vec![0, 5, 7]]
        );
        let chosen = search.chosen().unwrap();
        assert_eq!(chosen.subgroup.members(), &[0, 3, 6]);
        assert_eq!(chosen.cosets.p(), exact(&[(1, 2), (1, 3), (1, 6)]));
        assert_eq!(
            search.candidates[2].cosets.p(),
            exact(&[(10, 24), (7, 24), (7, 24)])
        );
        assert_eq!(
            search.candidates[3].cosets.p(),
            exact(&[(9, 24), (8, 24), (7, 24)])
        );
        assert!(search
            .candidates
            .iter()
            .enumerate()
            .all(|(i, c)| c.condition.holds == (i == 1)));
    }

    #[test]
    fn qubit_search() {
        let p = pauli();
        let weights = vec![ratio(7, 10), ratio(1, 10), ratio(1, 10), ratio(1, 10)];
        let pi = GroupDistribution::new(Arc::clone(p.rep.group()), weights).unwrap();
        let search = find_admissible_subgroup(&p.rep, &pi).unwrap();
        assert_eq!(search.candidates.len(), 3);
        assert!(search.candidates.iter().all(|c| c.condition.holds));
        // (XZ)^2 = -I, so <XZ> only carries a projective restriction
        let xz = p.element(1, 1);
        for c in &search.candidates {
            assert_eq!(c.restriction_unitary, !c.subgroup.contains(xz));
        }
        assert_eq!(
            search.chosen().unwrap().cosets.p(),
            exact(&[(4, 5), (1, 5)])
        );
    }

    #[test]
    fn uniform_search_admits_everything() {
        let hw = heisenberg_weyl(3);
        let pi = GroupDistribution::uniform(Arc::clone(hw.rep.group()));
        let search = find_admissible_subgroup(&hw.rep, &pi).unwrap();
        assert!(search.candidates.iter().all(|c| c.condition.holds));
        assert_eq!(
            search.chosen().unwrap().cosets.p(),
            exact(&[(1, 3), (1, 3), (1, 3)])
        );
    }

    #[test]
    fn reducible_rep_is_rejected() {
        let t = crate::representation::builtin::trivial(2);
        let pi = GroupDistribution::uniform(Arc::clone(t.rep.group()));
        assert!(matches!(
            find_admissible_subgroup(&t.rep, &pi),
            Err(Error::NotIrreducible {
                commutant_dimension: 4
            })
        ));
    }
}
