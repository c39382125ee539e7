//! Point processes as monadic values over bags of points.
//!
//! The exact layer ([`DiscreteDist`], [`BagDist`], the distributive law and
//! exact intensities) is generic over the weight type; see [`Weight`]. The
//! sampling layer ([`PointProcess`]) and the intensity calculator work in `f64`.

pub mod bag;
pub mod dist;
pub mod dsl;
pub mod error;
pub mod gb;
pub mod intensity;
pub mod process;
pub mod region;
pub mod run;
pub mod scalar;
pub mod seed;
pub mod space;
pub mod verify;

pub use bag::{Bag, BagOfBags};
pub use dist::DiscreteDist;
pub use error::{Error, Result};
pub use gb::BagDist;
pub use intensity::{IntensityKernel, IntensityMeasure, Quadrature};
pub use process::{Kernel, PointProcess};
pub use region::{Rect, Region};
pub use scalar::Weight;
pub use seed::SeedState;
pub use space::{Point, Universe};

/// Distribution over points with `f64` weights.
pub type Dist = DiscreteDist<Point, f64>;
/// Distribution over naturals with `f64` weights.
pub type NatDist = DiscreteDist<u64, f64>;
/// Distribution over bags of points with `f64` weights.
pub type PointBagDist = BagDist<Point, f64>;
