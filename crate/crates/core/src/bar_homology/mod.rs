//! Nerves of finite monoids and categories, integral homology by Smith
//! normal form, the category `Q` of a monoid map into a group, and cells of
//! the bar construction of `M_n(V)`.

mod bar_cell;
mod category;
mod homology;
mod monoid;
mod nerve;
mod q;

use thiserror::Error;

pub use bar_cell::{validate_bar_cell, BarCell};
pub use category::{Morphism, SmallCategory};
pub use homology::{
    chain_homology, cohomology_class, simplicial_homology, CochainError, CohomologyClass, HomologyResult,
    SparseColumns,
};
pub use monoid::FiniteMonoid;
pub use nerve::{homology, nerve_category, nerve_monoid, SimplicialTruncation};
pub use q::q_category;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BarError {
    #[error("{0}")]
    Malformed(String),
    #[error("{law} fails at {detail}")]
    Axiom { law: &'static str, detail: String },
    #[error("degree {kmax} needs a truncation bound above {kmax}, have {bound}")]
    Range { kmax: usize, bound: usize },
    #[error("target is not a group")]
    NotGroup,
    #[error("map is not a homomorphism at ({a}, {b})")]
    NotHomomorphism { a: String, b: String },
}
