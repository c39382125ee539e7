//! Scalar type used for probability weights.
//!
//! The exact engine (distributions, bag distributions, the distributive law and
//! exact intensities) is written against [`Weight`] so that it runs unchanged on
//! `f64`, `f32`, or an exact rational type. Geometry stays in `f64`.

use std::fmt::Debug;

use num_traits::{FromPrimitive, Num, ToPrimitive};

/// A probability weight.
pub trait Weight:
    Num + Clone + PartialOrd + Debug + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Converts a finite `f64`; panics on NaN/inf, which never reach this point.
    fn lossy(x: f64) -> Self {
        Self::from_f64(x).expect("finite weight")
    }

    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn abs_diff(&self, other: &Self) -> Self {
        if self >= other {
            self.clone() - other.clone()
        } else {
            other.clone() - self.clone()
        }
    }

    /// `max(self, 0)`.
    fn clamp_nonneg(self) -> Self {
        if self < Self::zero() {
            Self::zero()
        } else {
            self
        }
    }
}

impl<T> Weight for T where
    T: Num + Clone + PartialOrd + Debug + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

/// Weights below this value are moved into the truncation defect after a bind.
pub const PRUNE_BELOW: f64 = 1e-15;

/// Upper bound on the support size of any intermediate distribution.
pub const MAX_SUPPORT: usize = 1_000_000;
