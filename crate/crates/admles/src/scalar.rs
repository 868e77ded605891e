use std::fmt;
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use rustfft::FftNum;

/// Floating-point scalar the spectral machinery is generic over.
///
/// Everything in the core (fields, Fourier multipliers, time stepping,
/// diagnostics) works for any `Scalar`; the crate root exports `f64` aliases
/// which the CLI and the file formats use.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + FftNum + Sum<Self> + fmt::Display
{
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Shorthand for pulling `f64` constants into a generic scalar.
#[inline]
pub(crate) fn fp<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("f64 constant not representable in scalar type")
}
