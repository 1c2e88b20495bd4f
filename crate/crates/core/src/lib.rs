//! Exact computations with charted 2-vector bundles over finite ordered
//! simplicial complexes, the matrix category of 2-vector spaces, bar
//! constructions and nerves with integral homology, and Grothendieck
//! completions of semi-rings.
//!
//! The matrix and morphism types are generic over an exact scalar (see
//! [`scalar`]); the aliases at the crate root fix the arbitrary-precision
//! choices used by the CLI and file formats.

pub mod bar_homology;
pub mod bundle;
pub mod cli;
pub mod exact_linalg;
pub mod io;
pub mod scalar;
pub mod semiring;
pub mod two_vector;

use num_bigint::BigInt;
use num_rational::BigRational;

pub type IntMatrix = exact_linalg::Matrix<BigInt>;
pub type RatMatrix = exact_linalg::Matrix<BigRational>;
pub type SnfResult = exact_linalg::SnfResult<BigInt>;
pub type MorphismMatrix = two_vector::MorphismMatrix<BigRational>;
pub use two_vector::DimensionMatrix;
pub type ChartedBundle = bundle::ChartedBundle<BigRational>;
