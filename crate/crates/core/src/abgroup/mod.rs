//! Finite abelian groups: Smith normal form, presentations by relations,
//! discrete logarithms, subgroups, and cyclic complements.

mod group;
mod lemma;
mod snf;

pub use group::{is_ell_group, signed_vec, FiniteAbelianGroup, GroupElement};
pub use lemma::{cyclic_complement, Subgroup};
pub use snf::{left_kernel, smith, snf, IntMatrix, Smith};
