//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + NumAssign
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal. Every value used in this crate is representable.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    /// A tolerance of `v`, floored at a small multiple of machine epsilon so
    /// that thresholds written for `f64` stay meaningful in `f32`.
    #[inline]
    fn tol(v: f64) -> Self {
        let floor = Self::epsilon() * Self::lit(64.0);
        Self::lit(v).max(floor)
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
