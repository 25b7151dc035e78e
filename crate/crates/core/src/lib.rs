//! Rauzy–Veech induction on generalized permutations.
//!
//! Matrices act on row vectors throughout: a walk `γ = γ_1 … γ_n` has
//! cocycle `B_γ = B_{γ_n} ⋯ B_{γ_1}`.

pub mod cli;
pub mod components;
pub mod double_cover;
pub mod error;
pub mod extensions;
pub mod gp;
pub mod group_analysis;
pub mod homology;
pub mod induction;
pub mod intmat;
pub mod strata;

pub use error::{Error, Result};
pub use gp::GeneralizedPermutation;
