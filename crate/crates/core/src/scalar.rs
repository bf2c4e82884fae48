//! Scalar abstraction shared by every geometric routine.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar usable by the engine: `f32` or `f64`.
///
/// The tolerance hooks let the same generic code run at either precision;
/// the `f64` values are the ones the engine's contracts are stated in.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Maximum deviation of a unit quantity from norm 1.
    fn unit_tolerance() -> Self;

    /// Tolerance for incidence detection and equal-length checks.
    fn geometric_tolerance() -> Self;

    /// Exclusion band around the stereographic pole.
    fn pole_epsilon() -> Self;

    /// Converts an `f64` literal. Panics only if the value is not representable,
    /// which never happens for the finite literals used in this crate.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("finite literal")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }
}

impl Real for f64 {
    fn unit_tolerance() -> Self {
        1e-12
    }
    fn geometric_tolerance() -> Self {
        1e-9
    }
    fn pole_epsilon() -> Self {
        1e-6
    }
}

impl Real for f32 {
    fn unit_tolerance() -> Self {
        1e-6
    }
    fn geometric_tolerance() -> Self {
        1e-4
    }
    fn pole_epsilon() -> Self {
        1e-4
    }
}

#[inline]
pub(crate) fn dot4<T: Real>(a: &[T; 4], b: &[T; 4]) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

#[inline]
pub(crate) fn sub4<T: Real>(a: &[T; 4], b: &[T; 4]) -> [T; 4] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

#[inline]
pub(crate) fn norm4<T: Real>(a: &[T; 4]) -> T {
    dot4(a, a).sqrt()
}

#[inline]
pub(crate) fn cast4<S: Real, T: Real>(a: &[S; 4]) -> [T; 4] {
    [
        T::lit(a[0].as_f64()),
        T::lit(a[1].as_f64()),
        T::lit(a[2].as_f64()),
        T::lit(a[3].as_f64()),
    ]
}
