//! Real scalar types the numerical parts of the crate are generic over.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FromPrimitive};

/// A real floating-point scalar (`f32` or `f64`).
///
/// Besides the arithmetic bounds, each implementation carries the default
/// numerical thresholds used by the solver, scaled to its precision.
pub trait Scalar:
    Float
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Relative singular-value threshold for rank decisions.
    fn rank_tol() -> Self;
    /// Absolute pivot threshold for reduced row echelon form.
    fn pivot_tol() -> Self;
    /// Largest acceptable residual when lowering through a weight level.
    fn residual_tol() -> Self;
    /// Magnitude below which a coefficient is stored as an exact zero.
    fn chop_tol() -> Self;

    fn from_i128_lossy(v: i128) -> Self {
        Self::from_i128(v).expect("integer representable as float")
    }

    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable as float")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn rank_tol() -> Self {
        1e-12
    }
    fn pivot_tol() -> Self {
        1e-10
    }
    fn residual_tol() -> Self {
        1e-8
    }
    fn chop_tol() -> Self {
        1e-11
    }
}

impl Scalar for f32 {
    fn rank_tol() -> Self {
        1e-4
    }
    fn pivot_tol() -> Self {
        1e-4
    }
    fn residual_tol() -> Self {
        1e-3
    }
    fn chop_tol() -> Self {
        1e-6
    }
}
