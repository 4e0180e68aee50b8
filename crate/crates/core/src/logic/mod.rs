//! First-order formulas with generalized quantifiers, their evaluation, and
//! definability over finite structures.

pub mod definable;
pub mod define;
pub mod eval;
pub mod formula;
pub mod krasner;

pub use definable::{default_arity_bound, definable_closure_eqfree, DefinableFamily};
pub use define::{accepted_object, is_definable, with_similarity_symbol, Counterexample, Verdict};
pub use eval::{eval, extension, Assignment, Compiled};
pub use formula::{Formula, Slot, Var};
pub use krasner::{
    bijection_psi, build_phi_q, candidate_symbol, describe_quantifier, describe_relation, description_delta,
    translate_eq_to_sim, SIM_SYMBOL,
};
