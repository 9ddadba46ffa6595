use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssignOps, ToPrimitive};

/// Floating-point scalar used throughout the numerical modules.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + NumAssignOps
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` constant, rounding if necessary.
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 constant representable")
    }

    #[inline]
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite conversion")
    }

    /// Tolerance used for probability-vector normalisation checks.
    #[inline]
    fn simplex_tol() -> Self {
        Self::of(1e-12).max(Self::epsilon() * Self::of(16.0))
    }

    /// `x`, raised to a small multiple of machine epsilon when the type
    /// cannot resolve it.
    #[inline]
    fn reachable_tol(x: f64) -> Self {
        Self::of(x).max(Self::epsilon() * Self::of(1024.0))
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_tol_tracks_precision() {
        assert_eq!(f64::simplex_tol(), 1e-12);
        assert!(f32::simplex_tol() > 1e-7);
        assert_eq!(f64::reachable_tol(1e-8), 1e-8);
        assert!(f32::reachable_tol(1e-8) > 1e-4);
    }
}
