//! Scalar abstraction shared by every matrix, state and unitary in the crate.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real field the simulator is generic over: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
    /// Absolute tolerance for structural invariants (Hermiticity, unit
    /// modulus, tracelessness, diagonality).
    fn structural_tol() -> Self;

    /// Lossless-enough conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn from_count(x: i64) -> Self {
        Self::from_i64(x).expect("integer representable in scalar type")
    }
}

impl Scalar for f64 {
    #[inline]
    fn structural_tol() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    #[inline]
    fn structural_tol() -> Self {
        1e-4
    }
}

/// `exp(i * angle)`.
#[inline]
pub fn cis<T: Scalar>(angle: T) -> Complex<T> {
    Complex::new(angle.cos(), angle.sin())
}
