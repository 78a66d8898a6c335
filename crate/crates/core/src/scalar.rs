//! Scalar traits the bound arithmetic is generic over.
//!
//! Exact checks run over any signed integer type (`i64`, `i128`, `BigInt`)
//! and its rationals; the crate root fixes `BigInt` for report-facing work.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{Float, FromPrimitive, Signed, ToPrimitive};

/// A signed integer type usable for exact bound arithmetic.
pub trait ExactInt:
    Integer + Signed + Clone + FromPrimitive + ToPrimitive + Display + Debug + Hash
{
}

impl<T> ExactInt for T where
    T: Integer + Signed + Clone + FromPrimitive + ToPrimitive + Display + Debug + Hash
{
}

/// A floating-point type for the few non-exact evaluations (`f32`, `f64`).
pub trait FloatScalar: Float + FromPrimitive + Debug {}

impl<T> FloatScalar for T where T: Float + FromPrimitive + Debug {}

/// Lifts a machine integer into `T`. Panics if `T` cannot hold it.
pub fn lift<T: ExactInt>(v: impl Into<i128>) -> T {
    let v = v.into();
    T::from_i128(v).unwrap_or_else(|| panic!("{v} does not fit the scalar type"))
}
