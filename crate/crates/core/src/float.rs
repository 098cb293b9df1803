//! Scalar abstraction shared by all analytic models.
//!
//! Everything numeric in this crate is generic over [`Real`] so the same
//! model code runs in `f32` and `f64`. The crate root re-exports `f64`
//! aliases for the common types; use the module paths when you need a
//! different precision.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign};

/// Floating-point scalar used by the models.
pub trait Real:
    Float
    + FromPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + serde::Serialize
    + Send
    + Sync
    + 'static
{
    /// Converts a literal constant, panicking only on non-finite input.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite constant")
    }

    /// Lossy view as `f64`, used for formatting and histogram binning.
    fn as_f64(self) -> f64 {
        self.to_f64().expect("representable as f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `10^x`, the decade scaling used by the subthreshold leakage law.
pub(crate) fn exp10<F: Real>(x: F) -> F {
    F::of(10.0).powf(x)
}
