//! Points of the supported base spaces.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// The base spaces a process can live on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Universe {
    /// The one-point space `{⋆}`.
    Unit1,
    /// The natural numbers with the discrete σ-algebra.
    Nats,
    /// The real line.
    RealLine,
    /// The half-open unit square `[0,1)²`.
    UnitSquare,
}

impl Universe {
    pub fn is_discrete(self) -> bool {
        matches!(self, Universe::Unit1 | Universe::Nats)
    }

    /// Measure of the whole space: counting measure or Lebesgue measure.
    pub fn measure(self) -> f64 {
        match self {
            Universe::Unit1 | Universe::UnitSquare => 1.0,
            Universe::Nats | Universe::RealLine => f64::INFINITY,
        }
    }

    /// Whether `p` has the variant belonging to this universe.
    pub fn accepts(self, p: &Point) -> bool {
        matches!(
            (self, p),
            (Universe::Unit1, Point::Star)
                | (Universe::Nats, Point::Nat(_))
                | (Universe::RealLine, Point::Real(_))
                | (Universe::UnitSquare, Point::Real2(..))
        )
    }

    pub(crate) fn check(self, p: &Point) -> Result<()> {
        if self.accepts(p) {
            Ok(())
        } else {
            Err(Error::VariantMismatch {
                point: p.to_string(),
                universe: self,
            })
        }
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Universe::Unit1 => "unit1",
            Universe::Nats => "nats",
            Universe::RealLine => "real_line",
            Universe::UnitSquare => "unit_square",
        })
    }
}

/// A point of one of the four base spaces.
///
/// Real coordinates are finite. Ordering is by variant, then numerically
/// (lexicographically for pairs) using `f64::total_cmp`, so equality is bitwise.
#[derive(Debug, Clone, Copy)]
pub enum Point {
    Star,
    Nat(u64),
    Real(f64),
    Real2(f64, f64),
}

impl Point {
    pub fn real(x: f64) -> Result<Point> {
        if x.is_finite() {
            Ok(Point::Real(x))
        } else {
            Err(Error::invalid(format!("non-finite coordinate {x}")))
        }
    }

    pub fn real2(x: f64, y: f64) -> Result<Point> {
        if x.is_finite() && y.is_finite() {
            Ok(Point::Real2(x, y))
        } else {
            Err(Error::invalid(format!("non-finite coordinate ({x},{y})")))
        }
    }

    pub fn universe(&self) -> Universe {
        match self {
            Point::Star => Universe::Unit1,
            Point::Nat(_) => Universe::Nats,
            Point::Real(_) => Universe::RealLine,
            Point::Real2(..) => Universe::UnitSquare,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Point::Star => 0,
            Point::Nat(_) => 1,
            Point::Real(_) => 2,
            Point::Real2(..) => 3,
        }
    }

    /// Comma-separated coordinates, as used for CSV rows.
    pub fn csv_fields(&self) -> String {
        match self {
            Point::Star => "star".to_string(),
            Point::Nat(n) => n.to_string(),
            Point::Real(x) => x.to_string(),
            Point::Real2(x, y) => format!("{x},{y}"),
        }
    }
}

impl PartialEq for Point {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Point {}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Point::Star, Point::Star) => Ordering::Equal,
            (Point::Nat(a), Point::Nat(b)) => a.cmp(b),
            (Point::Real(a), Point::Real(b)) => a.total_cmp(b),
            (Point::Real2(a, b), Point::Real2(c, d)) => a.total_cmp(c).then(b.total_cmp(d)),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Star => f.write_str("star"),
            Point::Nat(n) => write!(f, "{n}"),
            Point::Real(x) => f.write_str(&real_literal(*x)),
            Point::Real2(x, y) => write!(f, "({x},{y})"),
        }
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Point::Star => s.serialize_str("star"),
            Point::Nat(n) => s.serialize_u64(*n),
            Point::Real(x) => s.serialize_f64(*x),
            Point::Real2(x, y) => [*x, *y].serialize(s),
        }
    }
}

/// Decimal rendering of a real that always carries a fractional part.
pub(crate) fn real_literal(x: f64) -> String {
    let s = x.to_string();
    if s.contains('.') {
        s
    } else {
        format!("{s}.0")
    }
}

/// Values with a numeric reading, for expectations.
pub trait Numeric {
    fn numeric_value(&self) -> Option<f64>;
}

impl Numeric for u64 {
    fn numeric_value(&self) -> Option<f64> {
        Some(*self as f64)
    }
}

impl Numeric for f64 {
    fn numeric_value(&self) -> Option<f64> {
        Some(*self)
    }
}

impl Numeric for Point {
    fn numeric_value(&self) -> Option<f64> {
        match self {
            Point::Nat(n) => Some(*n as f64),
            Point::Real(x) => Some(*x),
            Point::Star | Point::Real2(..) => None,
        }
    }
}
