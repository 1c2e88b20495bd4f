//! Skeletal model of 2-vector spaces.
//!
//! Objects of `M_n(V)` are [`DimensionMatrix`] values, morphisms are
//! [`MorphismMatrix`] values: for every `(i, j)` an invertible square matrix
//! acting on a fiber of dimension `D[i,j]`. Tensor products use Kronecker
//! products with the first factor major; direct sums stack blocks.

mod dims;
mod morphism;
mod perm;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exact_linalg::LinalgError;

pub use dims::{obj_matmul, DimensionMatrix, GlnObject};
pub use morphism::{
    associator, associator_inverse, left_unitor, mor_matmul, right_unitor, tetrahedron_defect,
    EntryDifference, MorphismMatrix,
};
pub use perm::{associator_permutation, BlockPermutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwoVectorError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("dimension matrix must be square, got {shape:?}")]
    NotSquare { shape: (usize, usize) },
    #[error("expected {expected} matrix entries, found {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("entry ({i},{j}) has shape {found:?}, expected {expected}x{expected}")]
    EntryShape {
        i: usize,
        j: usize,
        expected: usize,
        found: (usize, usize),
    },
    #[error("morphisms live over different objects: {left} vs {right}")]
    NotComposable { left: String, right: String },
    #[error("determinant {det} is not ±1")]
    NotInvertible { det: BigInt },
    #[error("entry ({i},{j}) is singular")]
    SingularEntry { i: usize, j: usize },
    #[error("dimension overflow")]
    Overflow,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
