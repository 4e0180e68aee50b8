//! Similarities: total and surjective relations standing in for
//! permutations once equality is dropped from the language.

pub mod laws;
pub mod quotient;
pub mod relation;
pub mod set;
pub mod sim;

pub use quotient::{
    lift_permutation, lift_quantifier, lift_relation, lift_structure, quotient_quantifier, quotient_relation,
    quotient_similarity, quotient_structure,
};
pub use relation::{image, invariant_under, is_similarity, lift_holds, Similarity, MAX_SIMILARITY_SIZE};
pub use set::{
    all_similarities, approx_equiv, downward_closure, full_monoid_closure, monoid_closure, SimilarityFlags,
    SimilaritySet,
};
pub use sim::{
    inv_sim, inv_sim_contains_by_definition, inv_sim_structure, quantifier_sim_invariant,
    quantifier_sim_invariant_unrestricted, restrict_quantifier,
    saturation_equivalence, sim, sim_by_definition, sim_equiv, sim_equiv_report, sim_of_inv, InvSimFamily,
    SimEquivReport,
};
pub use laws::{
    check_allisgood_set, check_allisgood_structure, check_bijective, check_cor_set, check_cor_structure, check_propaut,
    check_respect, relations_respect_similarities,
};
