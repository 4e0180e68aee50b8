//! Permutation groups given by full enumeration: generation, orbits,
//! canonical structures, k-closures, the induced action on subsets, and
//! the closures and structures built from it.

mod closure;
mod orbit;
mod set;

pub use closure::{
    canonical_monadic_structure, canonical_structure, k_closure, order_coset, set_action, set_closure,
    subset_action_group, support, tuple_coset,
};
pub use orbit::{orbits, OrbitPartition};
pub use set::{alternating, cyclic, generate, symmetric, PermutationSet};
