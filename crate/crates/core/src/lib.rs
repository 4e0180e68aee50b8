//! Finite-domain engine for the Galois duality between transformation sets
//! (permutation groups, similarity monoids) and relation sets (first-order
//! relations, generalized quantifiers) closed under definability.
//!
//! Every computation is exhaustive and guarded by [`Limits`].

pub mod error;
pub mod limits;
pub mod groups;
pub mod model;
pub mod report;
pub mod logic;
pub mod duality;
pub mod similarity;
pub mod sample;
pub mod cli;

pub use error::{Error, Result};
pub use limits::Limits;
