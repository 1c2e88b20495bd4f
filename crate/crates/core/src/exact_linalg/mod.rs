//! Exact integer and rational matrix arithmetic.

mod abelian;
mod det;
mod matrix;
mod rational;
mod snf;

use thiserror::Error;

pub use abelian::AbelianGroup;
pub use det::{det, field_det, rat_inverse, to_rational};
pub use matrix::{block_diagonal, direct_sum, kron, Matrix};
pub use rational::{format_rational, parse_rational, ParseRationalError};
pub use snf::{
    invariant_factors, smith_normal_form, sparse_invariant_factors, InvariantFactors, SnfResult,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{op}: incompatible shapes {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("expected a square matrix, got {shape:?}")]
    NotSquare { shape: (usize, usize) },
    #[error("matrix is singular")]
    Singular,
    #[error("{rows}x{cols} matrix needs {} entries, got {found}", rows * cols)]
    EntryCount { rows: usize, cols: usize, found: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow { row: usize, expected: usize, found: usize },
}
