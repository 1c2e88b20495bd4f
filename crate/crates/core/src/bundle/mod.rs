//! Charted 2-vector bundles over the nerve of an ordered good cover.
//!
//! A bundle of rank `n` assigns a weakly invertible dimension matrix to each
//! edge and a coherence morphism to each triangle of an [`OrderedComplex`];
//! the tetrahedron equation is checked by [`validate_bundle`].

mod change;
mod charted;
mod complex;
mod gerbe;
mod report;
mod transport;

use thiserror::Error;

use crate::two_vector::TwoVectorError;

pub use change::{compose_changes, identity_change, swap_change, validate_change, TrivializationChange};
pub use charted::{validate_bundle, whitney_sum, ChartedBundle};
pub use complex::{cover_nerve, faces, fmt_simplex, OrderedComplex};
pub use gerbe::{gerbe_class, rank_one_phases, GerbeClass, PhaseCocycle};
pub use report::{Finding, FindingKind, ValidationReport};
pub use transport::{pullback, refine, SimplicialMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error("complex: {0}")]
    Complex(String),
    #[error("cover: {0}")]
    Cover(String),
    #[error("missing {what} for simplex {simplex}")]
    Missing { what: &'static str, simplex: String },
    #[error("{what} given for {simplex}, which is not a simplex of the base")]
    Dangling { what: &'static str, simplex: String },
    #[error("{what} at {simplex} has rank {found}, expected {expected}")]
    Rank {
        what: &'static str,
        simplex: String,
        expected: usize,
        found: usize,
    },
    #[error("base complexes differ")]
    BaseMismatch,
    #[error("map is not order-preserving: {0}")]
    NotOrderPreserving(String),
    #[error("map is not simplicial: {0}")]
    NotSimplicial(String),
    #[error("phase cocycle is not closed at tetrahedron {0}")]
    NotClosed(String),
    #[error(transparent)]
    TwoVector(#[from] TwoVectorError),
}
