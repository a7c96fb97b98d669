//! Classical capacity of mixed unitary channels built from projective
//! representations of finite groups.
//!
//! A channel `rho -> sum_g pi_g U_g rho U_g^dagger` is covariant under its own
//! generating representation. When the representation is irreducible and some
//! normal abelian subgroup orders the weights coset by coset, the capacity is
//! `log n - H(p)` with `p` the coset sums. The crate decides those hypotheses
//! exactly and checks the conclusion numerically.

pub mod capacity;
pub mod channel;
pub mod cli;
pub mod error;
pub mod group;
pub mod majorization;
pub mod numerics;
pub mod rational;
pub mod representation;

pub use error::{Error, Result};
