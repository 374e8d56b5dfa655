//! Floating-point scalar abstraction: f32 or f64.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

/// Scalar type the whole library is generic over.
///
/// Everything here is ordinary IEEE floating-point math, so the bound is the
/// num-traits `Float` family plus the handful of std traits the algorithms
/// lean on. Implemented for `f32` and `f64`; the crate root exposes `f64`
/// aliases for the common types.
pub trait Scalar:
    num_traits::Float
    + num_traits::FloatConst
    + num_traits::FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from an `f64` literal or configuration value.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 value representable in scalar type")
    }

    /// Shorthand for small integer constants.
    fn of(v: i32) -> Self {
        Self::from_i32(v).expect("i32 value representable in scalar type")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
