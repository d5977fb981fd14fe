use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar the analysis is generic over (`f32` or `f64`).
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Converts an `f64` literal. Every finite `f64` maps to some value of a
    /// float type, possibly rounded or saturated to infinity.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("float literal conversion")
    }

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count conversion")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Scalar for T where
    T: Float + FloatConst + FromPrimitive + Debug + Display + LowerExp + Send + Sync + 'static
{
}
