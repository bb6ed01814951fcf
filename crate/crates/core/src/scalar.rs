//! The real scalar type every numeric routine is generic over.

use std::fmt::{Debug, Display, LowerExp};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

use crate::tolerance::Tolerances;

/// A floating-point real usable as the field of the three-qubit linear algebra.
///
/// Implemented for `f64` (the reference precision) and `f32`. Each precision
/// carries its own tolerance record since the `f64` thresholds (down to
/// `1e-12`) are below what single precision can resolve.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    /// Default thresholds for this precision.
    const TOLERANCES: Tolerances;

    /// Converts an `f64` literal. Never fails for finite input.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const TOLERANCES: Tolerances = Tolerances::DOUBLE;
}

impl Real for f32 {
    const TOLERANCES: Tolerances = Tolerances::SINGLE;
}

/// Complex number over a [`Real`] field.
pub type C<T> = Complex<T>;

#[cfg(test)]
pub(crate) fn c<T: Real>(re: f64, im: f64) -> C<T> {
    Complex::new(T::lit(re), T::lit(im))
}
