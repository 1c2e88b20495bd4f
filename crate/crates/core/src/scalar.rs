//! Scalar traits the matrix code is generic over.
//!
//! Everything in this crate is exact, so the scalars are integer rings
//! (`i64`, `BigInt`) and their fraction fields (`Ratio<i64>`, `BigRational`).
//! Floating point types deliberately do not implement [`ExactField`].

use std::fmt::Debug;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// Commutative ring element with exact equality.
pub trait Scalar: Num + Clone + PartialEq + Debug {}

impl<T> Scalar for T where T: Num + Clone + PartialEq + Debug {}

/// Euclidean integer type (gcd, division with remainder, sign).
pub trait IntegerScalar: Scalar + Integer + Signed {}

impl<T> IntegerScalar for T where T: Scalar + Integer + Signed {}

/// A field in which every nonzero element has an exact inverse.
pub trait ExactField: Scalar {}

impl<T> ExactField for Ratio<T> where T: Clone + Integer + Debug {}
