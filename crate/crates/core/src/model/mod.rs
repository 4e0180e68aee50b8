//! Domains, permutations, relations, quantifiers, structures and partitions.

mod action;
mod bits;
mod domain;
mod member;
mod partition;
mod permutation;
mod quantifier;
mod relation;
mod structure;
pub mod tuple;

pub use action::{
    apply_perm_object, apply_perm_quantifier, apply_perm_relation, apply_perm_tuple, fixes, preserves,
};
pub(crate) use action::{fixes_quantifier, permute_relation};
pub use domain::Domain;
pub use member::{enumerate_quantifiers, Count, MemberSpace};
pub use partition::{saturated, EquivalencePartition, UnionFind};
pub use permutation::Permutation;
pub(crate) use permutation::all_permutations;
pub use quantifier::{Quantifier, QuantifierType};
pub use relation::{enumerate_relations, Relation, RelationIter};
pub use structure::{validate_name, Object, Structure};
