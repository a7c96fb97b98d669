//! Projective unitary representations of finite groups.
//!
//! A representation `g -> U_g` is projective when `U_g U_h = w(g,h) U_gh`
//! for a unimodular phase `w`, the 2-cocycle. Representations here are built
//! from a diagonal representation `W` of an abelian group `T` (one character
//! per basis vector) and a permutation representation `V` of an acting group
//! `S`; the product group `S x T` is then represented by `(h, k) -> V_h W_k`.

pub mod builtin;

use std::sync::{Arc, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{direct_product, quotient, FiniteGroup, QuotientStructure, Subgroup};
use crate::numerics::{inner, numerical_rank, simultaneous_eigenbasis, ComplexMatrix, ONE, ZERO};
use crate::rational::{root_of_unity, Rational};

const CHARACTER_TOL: f64 = 1e-12;
const UNITARY_TOL: f64 = 1e-10;
const SCALAR_TOL: f64 = 1e-9;
const COCYCLE_TOL: f64 = 1e-9;
const ROOT_TOL: f64 = 1e-8;
const RANK_TOL: f64 = 1e-8;
const EXACT_TOL: f64 = 1e-10;
const PROJECTION_TOL: f64 = 1e-8;

/// Characters `chi_0, ..., chi_{n-1}` of an abelian group, one per basis vector.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterSet {
    t_order: usize,
    table: Vec<Vec<Complex64>>,
}

impl CharacterSet {
    /// `table[j][t] = chi_j(t)`; each row must be a unimodular homomorphism.
    pub fn new(t: &FiniteGroup, table: Vec<Vec<Complex64>>) -> Result<Self> {
        if table.is_empty() {
            return Err(Error::InvalidCharacters("no characters".into()));
        }
        for (j, row) in table.iter().enumerate() {
            if row.len() != t.order() {
                return Err(Error::InvalidCharacters(format!(
                    "character {j} has {} values for a group of order {}",
                    row.len(),
                    t.order()
                )));
            }
            for (s, z) in row.iter().enumerate() {
                if (z.norm() - 1.0).abs() > CHARACTER_TOL {
                    return Err(Error::InvalidCharacters(format!(
                        "|chi_{j}({s})| = {}",
                        z.norm()
                    )));
                }
            }
            for a in 0..t.order() {
                for b in 0..t.order() {
                    if (row[t.mul(a, b)] - row[a] * row[b]).norm() > CHARACTER_TOL {
                        return Err(Error::InvalidCharacters(format!(
                            "chi_{j} is not multiplicative at ({a}, {b})"
                        )));
                    }
                }
            }
        }
        Ok(Self {
            t_order: t.order(),
            table,
        })
    }

    /// Characters given as fractions of a full turn: `chi_j(t) = exp(2 pi i turns[j][t])`.
    pub fn from_turns(t: &FiniteGroup, turns: &[Vec<Rational>]) -> Result<Self> {
        Self::new(
            t,
            turns
                .iter()
                .map(|row| row.iter().map(root_of_unity).collect())
                .collect(),
        )
    }

    /// Number of characters, i.e. the Hilbert space dimension.
    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn t_order(&self) -> usize {
        self.t_order
    }

    pub fn value(&self, j: usize, t: usize) -> Complex64 {
        self.table[j][t]
    }

    pub fn table(&self) -> &[Vec<Complex64>] {
        &self.table
    }

    /// Checks `chi_j(t)^n = 1` for every entry.
    pub fn are_nth_roots(&self, n: usize) -> bool {
        self.table
            .iter()
            .flatten()
            .all(|z| (z.powu(n as u32) - ONE).norm() <= 1e-9)
    }
}

/// Action of a finite group on the labels `0..n` by permutations.
#[derive(Debug, Clone)]
pub struct PermutationAction {
    group: Arc<FiniteGroup>,
    maps: Vec<Vec<usize>>,
}

impl PermutationAction {
    /// `maps[s][j] = s(j)`; must satisfy `map(gh) = map(g) o map(h)`.
    pub fn new(group: Arc<FiniteGroup>, maps: Vec<Vec<usize>>) -> Result<Self> {
        if maps.len() != group.order() {
            return Err(Error::InvalidAction(format!(
                "{} maps for a group of order {}",
                maps.len(),
                group.order()
            )));
        }
        let n = maps[0].len();
        for (s, map) in maps.iter().enumerate() {
            let mut seen = vec![false; n];
            if map.len() != n
                || map
                    .iter()
                    .any(|&j| j >= n || std::mem::replace(&mut seen[j], true))
            {
                return Err(Error::InvalidAction(format!(
                    "map of element {s} is not a permutation of 0..{n}"
                )));
            }
        }
        if maps[group.identity()]
            .iter()
            .enumerate()
            .any(|(j, &k)| j != k)
        {
            return Err(Error::InvalidAction(
                "identity does not act trivially".into(),
            ));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul(g, h);
                if let Some(j) = (0..n).find(|&j| maps[gh][j] != maps[g][maps[h][j]]) {
                    return Err(Error::InvalidAction(format!(
                        "map({gh}) differs from map({g}) o map({h}) at label {j}; \
                         the permutations do not represent the group law"
                    )));
                }
            }
        }
        Ok(Self { group, maps })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn degree(&self) -> usize {
        self.maps[0].len()
    }
}

/// Diagonal matrices `W_t = diag(chi_0(t), ..., chi_{n-1}(t))`.
pub fn build_w(t: &FiniteGroup, characters: &CharacterSet) -> Result<Vec<ComplexMatrix>> {
    if characters.t_order() != t.order() {
        return Err(Error::InvalidCharacters(format!(
            "characters are defined on a group of order {}, not {}",
            characters.t_order(),
            t.order()
        )));
    }
    Ok((0..t.order())
        .map(|s| {
            ComplexMatrix::from_diag(
                &(0..characters.dim())
                    .map(|j| characters.value(j, s))
                    .collect::<Vec<_>>(),
            )
        })
        .collect())
}

/// Permutation matrices `V_s |j> = |s(j)>`.
pub fn build_v(action: &PermutationAction) -> Vec<ComplexMatrix> {
    let n = action.degree();
    action
        .maps()
        .iter()
        .map(|map| ComplexMatrix::from_fn(n, n, |i, j| if map[j] == i { ONE } else { ZERO }))
        .collect()
}

/// Phase table `w(g, h)` of a projective representation.
#[derive(Debug, Clone, PartialEq)]
pub struct Cocycle {
    order: usize,
    values: Vec<Complex64>,
}

impl Cocycle {
    pub fn trivial(order: usize) -> Self {
        Self {
            order,
            values: vec![ONE; order * order],
        }
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let values = (0..order * order)
            .map(|i| f(i / order, i % order))
            .collect();
        Self { order, values }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, g: usize, h: usize) -> Complex64 {
        self.values[g * self.order + h]
    }

    pub fn set(&mut self, g: usize, h: usize, value: Complex64) {
        self.values[g * self.order + h] = value;
    }
}

#[derive(Debug)]
pub struct ProjectiveRep {
    group: Arc<FiniteGroup>,
    dim: usize,
    matrices: Vec<ComplexMatrix>,
    cocycle: OnceLock<Cocycle>,
}

impl Clone for ProjectiveRep {
    fn clone(&self) -> Self {
        let cocycle = OnceLock::new();
        if let Some(c) = self.cocycle.get() {
            let _ = cocycle.set(c.clone());
        }
        Self {
            group: Arc::clone(&self.group),
            dim: self.dim,
            matrices: self.matrices.clone(),
            cocycle,
        }
    }
}

impl ProjectiveRep {
    /// Validates unitarity and projective closure (`U_g U_h` proportional to `U_gh`).
    pub fn new(group: Arc<FiniteGroup>, matrices: Vec<ComplexMatrix>) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::DimensionMismatch {
                expected: group.order(),
                found: matrices.len(),
            });
        }
        let dim = matrices[0].rows();
        for (g, u) in matrices.iter().enumerate() {
            if u.rows() != dim || !u.is_square() {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: u.rows(),
                });
            }
            let residual = u.unitarity_residual();
            if residual > UNITARY_TOL {
                return Err(Error::NotUnitary {
                    element: g,
                    residual,
                });
            }
        }
        let rep = Self {
            group,
            dim,
            matrices,
            cocycle: OnceLock::new(),
        };
        let cocycle = extract_cocycle(&rep)?;
        let _ = rep.cocycle.set(cocycle);
        Ok(rep)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, g: usize) -> &ComplexMatrix {
        &self.matrices[g]
    }

    /// The 2-cocycle, extracted on first use.
    pub fn cocycle(&self) -> &Cocycle {
        self.cocycle.get_or_init(|| {
            extract_cocycle(self).expect("representation validated at construction")
        })
    }

    /// `(g, h) -> U_g (x) U'_h` on the product group; the cocycle is the product cocycle.
    pub fn tensor(&self, other: &ProjectiveRep) -> ProjectiveRep {
        let group = Arc::new(direct_product(&self.group, &other.group));
        let m = other.group.order();
        let matrices = (0..group.order())
            .map(|i| self.matrices[i / m].kron(&other.matrices[i % m]))
            .collect();
        let (a, b) = (self.cocycle(), other.cocycle());
        let cocycle = Cocycle::from_fn(group.order(), |x, y| {
            a.get(x / m, y / m) * b.get(x % m, y % m)
        });
        ProjectiveRep {
            group,
            dim: self.dim * other.dim,
            matrices,
            cocycle: OnceLock::from(cocycle),
        }
    }
}

/// `(h, k) -> V_h W_k` on `S x T`, element `(h, k)` at index `h |T| + k`.
pub fn assemble_rep(
    group: Arc<FiniteGroup>,
    v: &[ComplexMatrix],
    w: &[ComplexMatrix],
) -> Result<ProjectiveRep> {
    if v.len() * w.len() != group.order() {
        return Err(Error::DimensionMismatch {
            expected: group.order(),
            found: v.len() * w.len(),
        });
    }
    let matrices = (0..group.order())
        .map(|g| &v[g / w.len()] * &w[g % w.len()])
        .collect();
    ProjectiveRep::new(group, matrices)
}

/// `w(g,h) = Tr(U_g U_h U_gh^dagger) / n`, with the scalar residual checked.
pub fn extract_cocycle(rep: &ProjectiveRep) -> Result<Cocycle> {
    let group = rep.group();
    let n = rep.dim() as f64;
    let order = group.order();
    let mut cocycle = Cocycle::trivial(order);
    for g in 0..order {
        for h in 0..order {
            let gh = group.mul(g, h);
            let product = rep.matrix(g) * rep.matrix(h);
            let target = rep.matrix(gh);
            // Tr(A B^dagger) = sum_ij A_ij conj(B_ij)
            let omega: Complex64 = product
                .as_slice()
                .iter()
                .zip(target.as_slice())
                .map(|(a, b)| a * b.conj())
                .sum::<Complex64>()
                / n;
            let mut scaled = target.clone();
            scaled = scaled.scale(omega);
            let residual = product.distance(&scaled);
            if residual > SCALAR_TOL || (omega.norm() - 1.0).abs() > UNITARY_TOL {
                return Err(Error::NotProjective { g, h, residual });
            }
            cocycle.set(g, h, omega);
        }
    }
    Ok(cocycle)
}

/// Outcome of checking `w(g,h) w(gh,r) = w(g,hr) w(h,r)` on every triple.
#[derive(Debug, Clone, PartialEq)]
pub struct CocycleCheck {
    pub holds: bool,
    pub witness: Option<[usize; 3]>,
    pub max_residual: f64,
}

pub fn verify_cocycle_identity(cocycle: &Cocycle, group: &FiniteGroup) -> CocycleCheck {
    let mut max_residual: f64 = 0.0;
    let mut witness = None;
    for g in 0..group.order() {
        for h in 0..group.order() {
            let gh = group.mul(g, h);
            for r in 0..group.order() {
                let lhs = cocycle.get(g, h) * cocycle.get(gh, r);
                let rhs = cocycle.get(g, group.mul(h, r)) * cocycle.get(h, r);
                let residual = (lhs - rhs).norm();
                if residual > COCYCLE_TOL && witness.is_none() {
                    witness = Some([g, h, r]);
                }
                max_residual = max_residual.max(residual);
            }
        }
    }
    CocycleCheck {
        holds: witness.is_none(),
        witness,
        max_residual,
    }
}

/// `w(g,h)^N = 1` for every pair.
pub fn cocycle_roots_check(cocycle: &Cocycle, n: usize) -> bool {
    cocycle
        .values
        .iter()
        .all(|w| (w.powu(n as u32) - ONE).norm() <= ROOT_TOL)
}

/// Cocycle of the gauge-transformed representation `c(g) U_g`.
pub fn gauge_cocycle(cocycle: &Cocycle, group: &FiniteGroup, c: &[Complex64]) -> Cocycle {
    Cocycle::from_fn(group.order(), |g, h| {
        c[g] * c[h] / c[group.mul(g, h)] * cocycle.get(g, h)
    })
}

/// `V_g = c(g) U_g` for a unimodular function `c`.
pub fn gauge_transform(rep: &ProjectiveRep, c: &[Complex64]) -> Result<ProjectiveRep> {
    if c.len() != rep.group().order() {
        return Err(Error::DimensionMismatch {
            expected: rep.group().order(),
            found: c.len(),
        });
    }
    if let Some((element, z)) = c
        .iter()
        .enumerate()
        .find(|(_, z)| (z.norm() - 1.0).abs() > CHARACTER_TOL)
    {
        return Err(Error::NotUnimodular {
            element,
            modulus: z.norm(),
        });
    }
    let matrices = rep
        .matrices()
        .iter()
        .zip(c)
        .map(|(u, &z)| u.scale(z))
        .collect();
    ProjectiveRep::new(Arc::clone(rep.group()), matrices)
}

/// Dimension of `{X : X U_g = U_g X for all g}`.
///
/// Stacks `I (x) U_g^T - U_g (x) I` (acting on row-major `vec(X)`) over all
/// group elements and subtracts the numerical rank from `n^2`.
pub fn commutant_dimension(rep: &ProjectiveRep) -> usize {
    let n = rep.dim();
    let n2 = n * n;
    let id = ComplexMatrix::identity(n);
    let mut stacked = Vec::with_capacity(rep.group().order() * n2 * n2);
    for u in rep.matrices() {
        let block = &id.kron(&u.transpose()) - &u.kron(&id);
        stacked.extend_from_slice(block.as_slice());
    }
    let rows = stacked.len() / n2;
    let system = ComplexMatrix::from_vec(rows, n2, stacked).expect("consistent block sizes");
    n2 - numerical_rank(&system, RANK_TOL)
}

pub fn is_irreducible(rep: &ProjectiveRep) -> bool {
    commutant_dimension(rep) == 1
}

/// Whether the `U_g` span the full matrix algebra.
pub fn spanning_check(rep: &ProjectiveRep) -> bool {
    let n2 = rep.dim() * rep.dim();
    let data: Vec<Complex64> = rep
        .matrices()
        .iter()
        .flat_map(|u| u.as_slice().iter().copied())
        .collect();
    let coefficients =
        ComplexMatrix::from_vec(rep.group().order(), n2, data).expect("square matrices");
    numerical_rank(&coefficients, RANK_TOL) == n2
}

/// Whether `U_t U_s = U_ts` holds with no cocycle phase on the subgroup.
pub fn restriction_is_unitary_rep(rep: &ProjectiveRep, sub: &Subgroup) -> bool {
    let group = rep.group();
    sub.members().iter().all(|&t| {
        sub.members().iter().all(|&s| {
            (rep.matrix(t) * rep.matrix(s)).distance(rep.matrix(group.mul(t, s))) <= EXACT_TOL
        })
    })
}

/// Basis simultaneously diagonalizing `U_t`, `t` in `sub`.
pub fn t_eigenbasis(rep: &ProjectiveRep, sub: &Subgroup) -> Result<ComplexMatrix> {
    let us: Vec<ComplexMatrix> = sub
        .members()
        .iter()
        .map(|&t| rep.matrix(t).clone())
        .collect();
    simultaneous_eigenbasis(&us)
}

/// Permutations of basis labels induced by cosets of `T` on the `T`-eigenbasis.
#[derive(Debug, Clone)]
pub struct InducedAction {
    quotient: QuotientStructure,
    maps: Vec<Vec<usize>>,
}

impl InducedAction {
    pub fn quotient(&self) -> &QuotientStructure {
        &self.quotient
    }

    /// `maps[c][j] = alpha_c(j)` for the coset with index `c`.
    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn map_of(&self, g: usize) -> &[usize] {
        &self.maps[self.quotient.coset_of(g)]
    }
}

pub fn induced_action(
    rep: &ProjectiveRep,
    sub: &Subgroup,
    basis: &ComplexMatrix,
) -> Result<InducedAction> {
    let n = rep.dim();
    let q = quotient(rep.group(), sub)?;
    if q.len() != n {
        return Err(Error::HypothesesNotMet(format!(
            "|G/T| = {} but dim = {n}",
            q.len()
        )));
    }
    let columns: Vec<Vec<Complex64>> = (0..n).map(|j| basis.column(j)).collect();
    let mut maps = Vec::with_capacity(q.len());
    for (c, &g) in q.representatives().iter().enumerate() {
        let u = rep.matrix(g);
        let mut map = Vec::with_capacity(n);
        for (j, col) in columns.iter().enumerate() {
            let image = u.mul_vec(col);
            let (k, overlap) = columns
                .iter()
                .map(|q| inner(q, &image).norm_sqr())
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .expect("nonempty basis");
            // || |v><v| - |q><q| ||_F for unit vectors
            let distance = (2.0 - 2.0 * overlap).max(0.0).sqrt();
            if distance > PROJECTION_TOL {
                return Err(Error::NotCovariant { coset: c, basis: j });
            }
            map.push(k);
        }
        let mut seen = vec![false; n];
        for (j, &k) in map.iter().enumerate() {
            if std::mem::replace(&mut seen[k], true) {
                return Err(Error::NotCovariant { coset: c, basis: j });
            }
        }
        maps.push(map);
    }
    // sum over cosets of U_g P_j U_g^dagger must be the identity
    for (j, column) in columns.iter().enumerate() {
        let mut total = ComplexMatrix::zeros(n, n);
        for &g in q.representatives() {
            total.add_outer(&rep.matrix(g).mul_vec(column), 1.0);
        }
        if total.distance(&ComplexMatrix::identity(n)) > PROJECTION_TOL {
            return Err(Error::NotCovariant { coset: 0, basis: j });
        }
    }
    Ok(InducedAction { quotient: q, maps })
}

#[cfg(test)]
mod tests {
    use super::builtin::{heisenberg_weyl, pauli, trivial};
    use super::*;
    use crate::group::cyclic;

    /// Independent oracle: for a projective representation the twirl
    /// `X -> (1/|G|) sum U_g X U_g^dagger` projects onto the commutant, so its
    /// trace `(1/|G|) sum |Tr U_g|^2` is the commutant dimension.
    fn commutant_dimension_by_traces(rep: &ProjectiveRep) -> f64 {
        rep.matrices()
            .iter()
            .map(|u| u.trace().norm_sqr())
            .sum::<f64>()
            / rep.group().order() as f64
    }

    #[test]
    fn w_matrices_from_characters() {
        let p = pauli();
        let w = build_w(&p.abelian, &p.characters).unwrap();
        assert_eq!(w[1], ComplexMatrix::from_real_diag(&[1.0, -1.0]));

        let hw = heisenberg_weyl(3);
        let w = build_w(&hw.abelian, &hw.characters).unwrap();
        let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let expected = ComplexMatrix::from_diag(&[ONE, omega, omega * omega]);
        assert!(w[1].distance(&expected) < 1e-15);
        for a in 0..3 {
            for b in 0..3 {
                assert!((&w[a] * &w[b]).distance(&w[(a + b) % 3]) < 1e-12);
            }
        }

        let z3 = cyclic(3);
        let flat = CharacterSet::new(&z3, vec![vec![ONE; 3]; 2]).unwrap();
        assert!(build_w(&z3, &flat)
            .unwrap()
            .iter()
            .all(|m| *m == ComplexMatrix::identity(2)));
    }

    #[test]
    fn characters_must_be_multiplicative() {
        let z4 = cyclic(4);
        let bad = vec![vec![ONE, ONE, -ONE, -ONE]];
        assert!(matches!(
            CharacterSet::new(&z4, bad),
            Err(Error::InvalidCharacters(_))
        ));
    }

    #[test]
    fn v_matrices() {
        let p = pauli();
        let v = build_v(&p.action);
        assert_eq!(
            v[1],
            ComplexMatrix::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]]).unwrap()
        );
        let hw = heisenberg_weyl(3);
        let v = build_v(&hw.action);
        assert_eq!(v[0], ComplexMatrix::identity(3));
        assert_eq!(v[1].mul_vec(&[ONE, ZERO, ZERO]), vec![ZERO, ONE, ZERO]);
    }

    #[test]
    fn action_must_respect_group_law() {
        let z3 = Arc::new(cyclic(3));
        // 1 -> swap(0,1), 2 -> swap(0,1): map(1+1) != map(1) o map(1)
        let maps = vec![vec![0, 1, 2], vec![1, 0, 2], vec![1, 0, 2]];
        assert!(matches!(
            PermutationAction::new(z3, maps),
            Err(Error::InvalidAction(_))
        ));
    }

    #[test]
    fn pauli_rep_and_cocycle() {
        let p = pauli();
        let rep = &p.rep;
        let x = ComplexMatrix::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]]).unwrap();
        let z = ComplexMatrix::from_real_diag(&[1.0, -1.0]);
        assert_eq!(rep.matrix(p.element(0, 0)), &ComplexMatrix::identity(2));
        assert_eq!(rep.matrix(p.element(0, 1)), &z);
        assert_eq!(rep.matrix(p.element(1, 0)), &x);
        assert_eq!(rep.matrix(p.element(1, 1)), &(&x * &z));

        // Oracle: Z X = -X Z, so U_(0,1) U_(1,0) = Z X = -(X Z) = -U_(1,1).
        let w = rep.cocycle();
        assert!((w.get(p.element(0, 1), p.element(1, 0)) + ONE).norm() < 1e-15);
        assert!((w.get(p.element(1, 0), p.element(0, 1)) - ONE).norm() < 1e-15);
    }

    #[test]
    fn heisenberg_weyl_cocycle_values_are_cube_roots() {
        let hw = heisenberg_weyl(3);
        let w = hw.rep.cocycle();
        for g in 0..9 {
            for h in 0..9 {
                assert!((w.get(g, h).powu(3) - ONE).norm() < 1e-12);
            }
        }
        assert!(verify_cocycle_identity(w, hw.rep.group()).holds);
        assert!(cocycle_roots_check(w, 9));
    }

    #[test]
    fn genuine_representation_has_trivial_cocycle() {
        let t = trivial(3);
        assert!(t
            .rep
            .cocycle()
            .values
            .iter()
            .all(|w| (w - ONE).norm() < 1e-15));
        assert!(verify_cocycle_identity(t.rep.cocycle(), t.rep.group()).holds);
        assert!(cocycle_roots_check(t.rep.cocycle(), 9));
    }

    #[test]
    fn perturbed_cocycle_fails_identity() {
        let hw = heisenberg_weyl(3);
        let mut w = hw.rep.cocycle().clone();
        w.set(4, 5, w.get(4, 5) * Complex64::from_polar(1.0, 0.1));
        let check = verify_cocycle_identity(&w, hw.rep.group());
        assert!(!check.holds);
        let [g, h, r] = check.witness.unwrap();
        let group = hw.rep.group();
        let lhs = w.get(g, h) * w.get(group.mul(g, h), r);
        let rhs = w.get(g, group.mul(h, r)) * w.get(h, r);
        assert!((lhs - rhs).norm() > 1e-9);
    }

    #[test]
    fn roots_check_rejects_irrational_phase() {
        let mut w = Cocycle::trivial(9);
        w.set(1, 2, Complex64::from_polar(1.0, 1.0));
        assert!(!cocycle_roots_check(&w, 9));
    }

    #[test]
    fn non_projective_family_is_rejected() {
        let g = Arc::new(cyclic(2));
        let h = ComplexMatrix::from_rows(&[
            vec![Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0); 2],
            vec![
                Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                Complex64::new(-std::f64::consts::FRAC_1_SQRT_2, 0.0),
            ],
        ])
        .unwrap();
        let s = ComplexMatrix::from_real_diag(&[1.0, -1.0]);
        // H * H = I but the family {S, H} fails at (1,1): H H = I, U_0 = S.
        let err = ProjectiveRep::new(g, vec![s, h]).unwrap_err();
        assert!(matches!(err, Error::NotProjective { .. }));
    }

    #[test]
    fn gauge_transform_changes_cocycle_by_coboundary() {
        let p = pauli();
        let mut c = vec![ONE; 4];
        c[p.element(1, 1)] = -ONE;
        let gauged = gauge_transform(&p.rep, &c).unwrap();
        let predicted = gauge_cocycle(p.rep.cocycle(), p.rep.group(), &c);
        let actual = extract_cocycle(&gauged).unwrap();
        for g in 0..4 {
            for h in 0..4 {
                assert!((predicted.get(g, h) - actual.get(g, h)).norm() < 1e-9);
            }
        }
        // (1,0)*(0,1) = (1,1) picks up c(x)c(z)/c(xz) = -1
        let (x, z) = (p.element(1, 0), p.element(0, 1));
        assert!((actual.get(x, z) + p.rep.cocycle().get(x, z)).norm() < 1e-12);

        let same = gauge_transform(&p.rep, &[ONE; 4]).unwrap();
        assert_eq!(same.matrices(), p.rep.matrices());

        let bad = gauge_transform(&p.rep, &[ONE, ONE, ONE, Complex64::new(2.0, 0.0)]);
        assert!(matches!(bad, Err(Error::NotUnimodular { element: 3, .. })));
    }

    #[test]
    fn commutant_of_builtin_and_control_reps() {
        assert_eq!(commutant_dimension(&pauli().rep), 1);
        assert_eq!(commutant_dimension(&heisenberg_weyl(3).rep), 1);
        assert_eq!(commutant_dimension(&trivial(2).rep), 4);
        assert_eq!(commutant_dimension(&trivial(3).rep), 9);
        for rep in [
            pauli().rep,
            heisenberg_weyl(3).rep,
            heisenberg_weyl(4).rep,
            trivial(2).rep,
        ] {
            let oracle = commutant_dimension_by_traces(&rep);
            assert!((commutant_dimension(&rep) as f64 - oracle).abs() < 1e-9);
        }
    }

    #[test]
    fn spanning() {
        assert!(spanning_check(&heisenberg_weyl(3).rep));
        assert!(spanning_check(&pauli().rep));
        assert!(!spanning_check(&trivial(2).rep));
    }

    #[test]
    fn restrictions() {
        let hw = heisenberg_weyl(3);
        let group = hw.rep.group();
        let w_sub = hw.w_subgroup();
        let v_sub = hw.v_subgroup();
        assert!(restriction_is_unitary_rep(&hw.rep, &w_sub));
        assert!(restriction_is_unitary_rep(&hw.rep, &v_sub));
        // <VW> = {(0,0), (1,1), (2,2)}: (VW)(VW) = w V^2 W^2, a nontrivial phase.
        let mixed = Subgroup::new(group, [0, 4, 8]).unwrap();
        assert!(!restriction_is_unitary_rep(&hw.rep, &mixed));
    }

    #[test]
    fn induced_action_examples() {
        let p = pauli();
        let t = p.w_subgroup();
        let action = induced_action(&p.rep, &t, &ComplexMatrix::identity(2)).unwrap();
        assert_eq!(action.map_of(p.element(1, 0)), &[1, 0]);
        assert_eq!(action.map_of(p.element(0, 0)), &[0, 1]);

        let hw = heisenberg_weyl(3);
        let t = hw.w_subgroup();
        let action = induced_action(&hw.rep, &t, &ComplexMatrix::identity(3)).unwrap();
        for k in 0..3 {
            let expected: Vec<usize> = (0..3).map(|j| (j + k) % 3).collect();
            assert_eq!(action.map_of(hw.element(k, 0)), expected.as_slice());
        }
    }

    #[test]
    fn induced_action_on_computed_eigenbasis() {
        let hw = heisenberg_weyl(3);
        let t = hw.v_subgroup();
        let q = t_eigenbasis(&hw.rep, &t).unwrap();
        let action = induced_action(&hw.rep, &t, &q).unwrap();
        let group = hw.rep.group();
        for g in 0..9 {
            for h in 0..9 {
                let composed: Vec<usize> = action
                    .map_of(h)
                    .iter()
                    .map(|&j| action.map_of(g)[j])
                    .collect();
                assert_eq!(action.map_of(group.mul(g, h)), composed.as_slice());
            }
        }
    }
}
