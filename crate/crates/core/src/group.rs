//! Finite groups as Cayley tables.
//!
//! Elements are dense indices `0..order`. Products are table lookups, so every
//! structural question (normality, cosets, subgroup closure) is an exhaustive
//! loop over indices.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    cayley: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates a square multiplication table and builds the group.
    ///
    /// Checks the Latin-square property, the existence of an identity and
    /// inverses, and associativity over all triples.
    pub fn from_cayley_table(table: &[Vec<usize>]) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(not_a_group("empty table", [0, 0, 0]));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(not_a_group("table is not square", [a, row.len(), order]));
            }
            if let Some(b) = row.iter().position(|&x| x >= order) {
                return Err(not_a_group("entry out of range", [a, b, row[b]]));
            }
        }

        #[allow(clippy::needless_range_loop)]
        for a in 0..order {
            let mut seen_row = vec![usize::MAX; order];
            let mut seen_col = vec![usize::MAX; order];
            for b in 0..order {
                let r = table[a][b];
                if seen_row[r] != usize::MAX {
                    return Err(not_a_group("row is not a permutation", [a, seen_row[r], b]));
                }
                seen_row[r] = b;
                let c = table[b][a];
                if seen_col[c] != usize::MAX {
                    return Err(not_a_group(
                        "column is not a permutation",
                        [seen_col[c], b, a],
                    ));
                }
                seen_col[c] = b;
            }
        }

        let identity = (0..order)
            .find(|&e| (0..order).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| not_a_group("no identity element", [0, 0, 0]))?;

        let mut inverse = vec![0; order];
        for (g, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..order)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| not_a_group("element has no two-sided inverse", [g, g, g]))?;
        }

        for a in 0..order {
            for b in 0..order {
                let ab = table[a][b];
                for c in 0..order {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(not_a_group("associativity fails", [a, b, c]));
                    }
                }
            }
        }

        Ok(Self {
            order,
            cayley: table.iter().flatten().copied().collect(),
            identity,
            inverse,
            labels: None,
        })
    }

    /// Builds a group from a multiplication law known to satisfy the axioms.
    fn from_law(order: usize, identity: usize, law: impl Fn(usize, usize) -> usize) -> Self {
        let mut cayley = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                cayley.push(law(a, b));
            }
        }
        let inverse = (0..order)
            .map(|g| {
                (0..order)
                    .find(|&h| cayley[g * order + h] == identity)
                    .expect("group law without inverse")
            })
            .collect();
        Self {
            order,
            cayley,
            identity,
            inverse,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order, "one label per element");
        self.labels = Some(labels);
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => g.to_string(),
        }
    }

    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        self.cayley
            .chunks(self.order)
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// First triple violating associativity, if any.
    pub fn associativity_witness(&self) -> Option<[usize; 3]> {
        for a in 0..self.order {
            for b in 0..self.order {
                let ab = self.mul(a, b);
                for c in 0..self.order {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Smallest subgroup containing `generators`.
    pub fn closure(&self, generators: &[usize]) -> Subgroup {
        let mut members = BTreeSet::from([self.identity]);
        let mut queue: VecDeque<usize> = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &s in generators {
                let y = self.mul(x, s);
                if members.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        // Finite group: closure under products already gives inverses.
        Subgroup {
            members: members.into_iter().collect(),
        }
    }
}

fn not_a_group(reason: &str, witness: [usize; 3]) -> Error {
    Error::NotAGroup {
        reason: reason.to_string(),
        witness,
    }
}

/// Cyclic group `Z_n` with `a * b = (a + b) mod n`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group needs n >= 1");
    FiniteGroup::from_law(n, 0, |a, b| (a + b) % n)
}

/// Direct product with element `(a, b)` at index `a * |B| + b`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let nb = b.order();
    let group = FiniteGroup::from_law(a.order() * nb, a.identity() * nb + b.identity(), |x, y| {
        a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)
    });
    match (a.labels(), b.labels()) {
        (None, None) => group,
        _ => {
            let labels = (0..group.order())
                .map(|g| format!("({},{})", a.label(g / nb), b.label(g % nb)))
                .collect();
            group.with_labels(labels)
        }
    }
}

/// Dihedral group `D_n = <x, y | x^n = y^2 = e, xy = yx^-1>` of order `2n`.
///
/// `x^a y^b` sits at index `2a + b`.
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 1, "dihedral group needs n >= 1");
    let labels = (0..2 * n)
        .map(|g| {
            let (a, b) = (g / 2, g % 2);
            match (a, b) {
                (0, 0) => "e".to_string(),
                (0, 1) => "y".to_string(),
                (1, 0) => "x".to_string(),
                (1, 1) => "xy".to_string(),
                (a, 0) => format!("x^{a}"),
                (a, _) => format!("x^{a}y"),
            }
        })
        .collect();
    FiniteGroup::from_law(2 * n, 0, |g, h| {
        let (a, b) = (g / 2, g % 2);
        let (c, d) = (h / 2, h % 2);
        // y^b x^c = x^{(-1)^b c} y^b
        let c = if b == 1 { (n - c) % n } else { c };
        ((a + c) % n) * 2 + (b + d) % 2
    })
    .with_labels(labels)
}

/// Klein four-group with `e, x, y, z` at indices `0..4` and `xy = z`.
pub fn klein() -> FiniteGroup {
    FiniteGroup::from_law(4, 0, |a, b| a ^ b)
        .with_labels(["e", "x", "y", "z"].map(String::from).to_vec())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    /// Validates that `members` is a subgroup of `group`.
    pub fn new(group: &FiniteGroup, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&g) = set.iter().find(|&&g| g >= group.order()) {
            return Err(Error::NotASubgroup(format!("element {g} out of range")));
        }
        if !set.contains(&group.identity()) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        for &a in &set {
            if !set.contains(&group.inv(a)) {
                return Err(Error::NotASubgroup(format!("inverse of {a} missing")));
            }
            for &b in &set {
                if !set.contains(&group.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!("product {a}*{b} missing")));
                }
            }
        }
        Ok(Self {
            members: set.into_iter().collect(),
        })
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Self {
            members: (0..group.order()).collect(),
        }
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Self {
            members: vec![group.identity()],
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }
}

/// Reason a subgroup fails to be normal and abelian.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalAbelianViolation {
    /// `g t g^-1` lies outside the subgroup.
    NotNormal { g: usize, t: usize },
    /// `t s != s t`.
    NotAbelian { t: usize, s: usize },
}

/// Diagnostic form of [`is_normal_abelian`].
pub fn normal_abelian_violation(
    group: &FiniteGroup,
    sub: &Subgroup,
) -> Option<NormalAbelianViolation> {
    for &t in sub.members() {
        for &s in sub.members() {
            if group.mul(t, s) != group.mul(s, t) {
                return Some(NormalAbelianViolation::NotAbelian { t, s });
            }
        }
    }
    for g in 0..group.order() {
        for &t in sub.members() {
            if !sub.contains(group.mul(group.mul(g, t), group.inv(g))) {
                return Some(NormalAbelianViolation::NotNormal { g, t });
            }
        }
    }
    None
}

pub fn is_normal_abelian(group: &FiniteGroup, sub: &Subgroup) -> bool {
    normal_abelian_violation(group, sub).is_none()
}

/// Left cosets `gT` of a subgroup, each labelled by its smallest element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientStructure {
    subgroup: Subgroup,
    cosets: Vec<Vec<usize>>,
    representatives: Vec<usize>,
    coset_of: Vec<usize>,
}

impl QuotientStructure {
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// Coset blocks ordered by representative.
    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// Index of the coset containing `g`.
    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g]
    }
}

pub fn quotient(group: &FiniteGroup, sub: &Subgroup) -> Result<QuotientStructure> {
    // Revalidate: a Subgroup may have been built against another group.
    let sub = Subgroup::new(group, sub.members().iter().copied())?;
    let mut coset_of = vec![usize::MAX; group.order()];
    let mut cosets = Vec::new();
    let mut representatives = Vec::new();
    for g in 0..group.order() {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let mut block: Vec<usize> = sub.members().iter().map(|&t| group.mul(g, t)).collect();
        block.sort_unstable();
        for &x in &block {
            coset_of[x] = cosets.len();
        }
        representatives.push(g);
        cosets.push(block);
    }
    Ok(QuotientStructure {
        subgroup: sub,
        cosets,
        representatives,
        coset_of,
    })
}

/// All normal abelian subgroups with `|G| / |T| = index`, ordered by member list.
///
/// Candidates are the closures of every set of at most two generators, which
/// is exhaustive for the groups this crate builds.
pub fn enumerate_normal_abelian_subgroups(group: &FiniteGroup, index: usize) -> Vec<Subgroup> {
    if index == 0 || !group.order().is_multiple_of(index) {
        return Vec::new();
    }
    let target = group.order() / index;
    let mut found = BTreeSet::new();
    for a in 0..group.order() {
        // Generators of a cyclic candidate must have order dividing |T|.
        if !target.is_multiple_of(group.element_order(a)) {
            continue;
        }
        let single = group.closure(&[a]);
        if single.order() == target && is_normal_abelian(group, &single) {
            found.insert(single);
        }
        for b in (a + 1)..group.order() {
            if group.mul(a, b) != group.mul(b, a) || !target.is_multiple_of(group.element_order(b))
            {
                continue;
            }
            let pair = group.closure(&[a, b]);
            if pair.order() == target && is_normal_abelian(group, &pair) {
                found.insert(pair);
            }
        }
    }
    found.into_iter().collect()
}
