//! Named constructions `(h, k) -> V_h W_k` on `S x T`.

use std::sync::Arc;

use crate::error::Result;
use crate::group::{cyclic, dihedral, direct_product, klein, FiniteGroup, Subgroup};
use crate::rational::{ratio, Rational};

use super::{assemble_rep, build_v, build_w, CharacterSet, PermutationAction, ProjectiveRep};

/// A representation together with the data it was assembled from.
#[derive(Debug, Clone)]
pub struct Construction {
    pub name: String,
    pub acting: Arc<FiniteGroup>,
    pub abelian: Arc<FiniteGroup>,
    pub characters: CharacterSet,
    pub action: PermutationAction,
    pub rep: ProjectiveRep,
}

impl Construction {
    /// Assembles `S x T` from an action of `S` and characters of `T`.
    pub fn assemble(
        name: impl Into<String>,
        acting: FiniteGroup,
        abelian: FiniteGroup,
        maps: Vec<Vec<usize>>,
        turns: &[Vec<Rational>],
    ) -> Result<Self> {
        let acting = Arc::new(acting);
        let abelian = Arc::new(abelian);
        let characters = CharacterSet::from_turns(&abelian, turns)?;
        let action = PermutationAction::new(Arc::clone(&acting), maps)?;
        if action.degree() != characters.dim() {
            return Err(crate::Error::DimensionMismatch {
                expected: characters.dim(),
                found: action.degree(),
            });
        }
        let w = build_w(&abelian, &characters)?;
        let v = build_v(&action);
        let group = Arc::new(direct_product(&acting, &abelian));
        let rep = assemble_rep(group, &v, &w)?;
        Ok(Self {
            name: name.into(),
            acting,
            abelian,
            characters,
            action,
            rep,
        })
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    /// Index of `(h, k)` in the product group.
    pub fn element(&self, h: usize, k: usize) -> usize {
        h * self.abelian.order() + k
    }

    /// `{(e, k)}`, represented by the diagonal `W_k`.
    pub fn w_subgroup(&self) -> Subgroup {
        let members = (0..self.abelian.order()).map(|k| self.element(self.acting.identity(), k));
        Subgroup::new(self.rep.group(), members).expect("factor subgroup")
    }

    /// `{(h, e)}`, represented by the permutations `V_h`.
    pub fn v_subgroup(&self) -> Subgroup {
        let members = (0..self.acting.order()).map(|h| self.element(h, self.abelian.identity()));
        Subgroup::new(self.rep.group(), members).expect("factor subgroup")
    }
}

/// Clock-and-shift matrices `V^k W^m` of `Z_n x Z_n`, `chi_k(j) = w^{kj}`.
pub fn heisenberg_weyl(n: usize) -> Construction {
    let maps = (0..n)
        .map(|s| (0..n).map(|j| (j + s) % n).collect())
        .collect();
    let turns: Vec<Vec<Rational>> = (0..n)
        .map(|k| {
            (0..n)
                .map(|j| ratio((k * j % n) as i64, n as i64))
                .collect()
        })
        .collect();
    Construction::assemble(
        format!("heisenberg_weyl({n})"),
        cyclic(n),
        cyclic(n),
        maps,
        &turns,
    )
    .expect("clock and shift matrices form a projective representation")
}

/// `{I, X, Z, XZ}` on a qubit.
pub fn pauli() -> Construction {
    Construction {
        name: "pauli".into(),
        ..heisenberg_weyl(2)
    }
}

/// Klein group acting on four labels by `j -> j xor s`, with `T` also the Klein group.
///
/// Characters are `chi_j(1) = +1, +1, -1, -1` and `chi_j(2) = +1, -1, +1, -1`,
/// extended multiplicatively to `3 = 1 * 2`. Order 16, dimension 4.
pub fn klein_z4() -> Construction {
    let maps = (0..4).map(|s| (0..4).map(|j| j ^ s).collect()).collect();
    let turns: Vec<Vec<Rational>> = (0..4usize)
        .map(|j| {
            (0..4usize)
                .map(|t| {
                    // t = 1 reads bit 1 of j, t = 2 reads bit 0
                    let parity = ((t & 1) * (j >> 1) + (t >> 1) * (j & 1)) % 2;
                    ratio(parity as i64, 2)
                })
                .collect()
        })
        .collect();
    Construction::assemble("klein_z4", klein(), klein(), maps, &turns)
        .expect("Klein construction is a projective representation")
}

/// `D_n x Z_{2n}` with `s_x(j) = j + 2`, `s_y(2j) = 2j + 1` and
/// `chi_{2j}(1) = e^{2 pi i j/n}`, `chi_{2j+1}(1) = -e^{2 pi i j/n}`.
///
/// Element `x^a y^b` of `D_n` acts as `s_x^a s_y^b`. These two permutations
/// commute, so for `n >= 3` they do not satisfy `xy = yx^{-1}` and the action
/// is rejected with [`crate::Error::InvalidAction`].
pub fn dihedral_z2n(n: usize) -> Result<Construction> {
    let m = 2 * n;
    let s_x = |j: usize| (j + 2) % m;
    let s_y = |j: usize| j ^ 1;
    let maps = (0..2 * n)
        .map(|g| {
            let (a, b) = (g / 2, g % 2);
            (0..m)
                .map(|j| {
                    let j = if b == 1 { s_y(j) } else { j };
                    (0..a).fold(j, |j, _| s_x(j))
                })
                .collect()
        })
        .collect();
    // chi_{2j}(k) = e^{2 pi i jk/n}, chi_{2j+1}(k) = e^{2 pi i (jk/n + k/2)}
    let turns: Vec<Vec<Rational>> = (0..m)
        .map(|label| {
            let (j, odd) = (label / 2, label % 2);
            (0..m)
                .map(|k| ratio((j * k) as i64, n as i64) + ratio((odd * k) as i64, 2))
                .collect()
        })
        .collect();
    Construction::assemble(
        format!("dihedral_z2n({n})"),
        dihedral(n),
        cyclic(m),
        maps,
        &turns,
    )
}

/// `Z_n x Z_n` acting trivially with trivial characters: every `U_g = I`.
pub fn trivial(n: usize) -> Construction {
    let maps = vec![(0..n).collect(); n];
    let turns = vec![vec![ratio(0, 1); n]; n];
    Construction::assemble(format!("trivial({n})"), cyclic(n), cyclic(n), maps, &turns)
        .expect("identity matrices form a representation")
}
