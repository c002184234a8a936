//! Floating-point scalar abstraction: f32 or f64.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, NumAssignOps, NumCast};

/// Scalar type the numeric core is generic over.
///
/// Everything downstream (kernels, eigensolver, samplers) only needs IEEE
/// float semantics plus casts, so the bound stays small.
pub trait Scalar:
    Float + NumAssignOps + NumCast + Sum + Debug + Display + Send + Sync + 'static
{
    /// Lossy cast from an `f64` literal or intermediate.
    #[inline]
    fn from_f64(x: f64) -> Self {
        <Self as NumCast>::from(x).expect("f64 -> Scalar cast")
    }

    /// Widening cast used for RNG decisions and reporting.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("Scalar -> f64 cast")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
