use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumCast};

/// Floating point scalar used by every numerical routine in the crate.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumCast + Default + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal, panicking only if the target type cannot hold it.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal out of range")
    }

    fn to_f64_lossy(self) -> f64 {
        NumCast::from(self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
