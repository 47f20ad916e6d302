use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, NumAssign};

/// Floating point scalar the fuzzy calculus and the simplex engine are generic over.
pub trait Scalar:
    Float + FromPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into this scalar type.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    /// Lower limit for tolerances: `1e2 * EPSILON` of the type.
    fn tolerance_floor() -> Self {
        Self::epsilon() * Self::lit(1e2)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
