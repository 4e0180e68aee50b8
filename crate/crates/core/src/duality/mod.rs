//! The two maps between groups and invariant families, and checks of the
//! correspondence they set up.

pub mod aut;
pub mod inv;
pub mod laws;

pub use aut::aut;
pub use inv::{inv, is_invariant, violating_element, InvariantFamily, MemberOrbits};
pub use laws::{
    brute_force_invariant_quantifiers, brute_force_invariant_relations, check_kras_definability,
    check_kras_group_roundtrip, mcgee_invariants, McGeeCatalogue, OrbitClass, RoundtripReport,
};
