//! Query regions: a closed algebra of measurable sets for each universe.
//!
//! Discrete universes use finite point sets, the real line uses finite unions of
//! half-open intervals `[a,b)`, and the unit square uses finite unions of
//! half-open rectangles `[x0,x1)×[y0,y1)`. Any region may carry a complement
//! flag meaning "universe minus body". Bodies are always stored canonically:
//! pieces pairwise disjoint, sorted, and maximally merged.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::space::{Point, Universe};

/// Half-open rectangle `[x0,x1)×[y0,y1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Rect {
    pub fn area(&self) -> f64 {
        (self.x1 - self.x0) * (self.y1 - self.y0)
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        self.x0 <= x && x < self.x1 && self.y0 <= y && y < self.y1
    }

    const UNIT: Rect = Rect {
        x0: 0.0,
        y0: 0.0,
        x1: 1.0,
        y1: 1.0,
    };
}

#[derive(Debug, Clone, PartialEq)]
enum Body {
    Points(BTreeSet<Point>),
    Intervals(Vec<(f64, f64)>),
    Rects(Vec<Rect>),
}

/// A measurable region of one universe.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    universe: Universe,
    body: Body,
    complemented: bool,
}

impl Region {
    /// The empty region of `universe`.
    pub fn empty(universe: Universe) -> Region {
        let body = match universe {
            Universe::Unit1 | Universe::Nats => Body::Points(BTreeSet::new()),
            Universe::RealLine => Body::Intervals(Vec::new()),
            Universe::UnitSquare => Body::Rects(Vec::new()),
        };
        Region {
            universe,
            body,
            complemented: false,
        }
    }

    /// The whole of `universe`.
    pub fn all(universe: Universe) -> Region {
        Region::empty(universe).complement()
    }

    /// A finite set of points of a discrete universe.
    pub fn points(universe: Universe, points: impl IntoIterator<Item = Point>) -> Result<Region> {
        if !universe.is_discrete() {
            return Err(Error::invalid(format!(
                "finite point sets are only supported on discrete universes, not {universe}"
            )));
        }
        let mut set = BTreeSet::new();
        for p in points {
            universe.check(&p)?;
            set.insert(p);
        }
        Ok(Region {
            universe,
            body: Body::Points(set),
            complemented: false,
        })
    }

    /// The interval `[a,b)` of the real line.
    pub fn interval(a: f64, b: f64) -> Result<Region> {
        Region::intervals([(a, b)])
    }

    /// A union of intervals `[a,b)` of the real line.
    pub fn intervals(pieces: impl IntoIterator<Item = (f64, f64)>) -> Result<Region> {
        let mut v = Vec::new();
        for (a, b) in pieces {
            if !(a.is_finite() && b.is_finite()) || a > b {
                return Err(Error::invalid(format!("bad interval [{a},{b})")));
            }
            v.push((a, b));
        }
        Ok(Region {
            universe: Universe::RealLine,
            body: Body::Intervals(canonical_intervals(v)),
            complemented: false,
        })
    }

    /// The rectangle `[x0,x1)×[y0,y1)` inside the unit square.
    pub fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Region> {
        Region::rects([Rect { x0, y0, x1, y1 }])
    }

    /// A union of rectangles inside the unit square.
    pub fn rects(pieces: impl IntoIterator<Item = Rect>) -> Result<Region> {
        let mut v = Vec::new();
        for r in pieces {
            let ok = [r.x0, r.y0, r.x1, r.y1]
                .iter()
                .all(|c| c.is_finite() && (0.0..=1.0).contains(c))
                && r.x0 <= r.x1
                && r.y0 <= r.y1;
            if !ok {
                return Err(Error::invalid(format!(
                    "rectangle [{},{})x[{},{}) is not inside the unit square",
                    r.x0, r.x1, r.y0, r.y1
                )));
            }
            v.push(r);
        }
        Ok(Region {
            universe: Universe::UnitSquare,
            body: Body::Rects(canonical_rects(&v)),
            complemented: false,
        })
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn is_complemented(&self) -> bool {
        self.complemented
    }

    /// Stored intervals (real line only), ignoring the complement flag.
    pub fn intervals_body(&self) -> Option<&[(f64, f64)]> {
        match &self.body {
            Body::Intervals(v) => Some(v),
            _ => None,
        }
    }

    /// Stored rectangles (unit square only), ignoring the complement flag.
    pub fn rects_body(&self) -> Option<&[Rect]> {
        match &self.body {
            Body::Rects(v) => Some(v),
            _ => None,
        }
    }

    /// Stored points (discrete universes only), ignoring the complement flag.
    pub fn points_body(&self) -> Option<&BTreeSet<Point>> {
        match &self.body {
            Body::Points(s) => Some(s),
            _ => None,
        }
    }

    /// Membership test. Errors when `p` is of the wrong variant.
    pub fn contains(&self, p: &Point) -> Result<bool> {
        self.universe.check(p)?;
        if let Point::Real2(x, y) = *p {
            if !Rect::UNIT.contains(x, y) {
                return Ok(false);
            }
        }
        let in_body = match (&self.body, p) {
            (Body::Points(s), _) => s.contains(p),
            (Body::Intervals(v), Point::Real(x)) => intervals_contain(v, *x),
            (Body::Rects(v), Point::Real2(x, y)) => v.iter().any(|r| r.contains(*x, *y)),
            _ => unreachable!("variant checked above"),
        };
        Ok(in_body != self.complemented)
    }

    fn body_measure(&self) -> f64 {
        match &self.body {
            Body::Points(s) => s.len() as f64,
            Body::Intervals(v) => v.iter().map(|(a, b)| b - a).sum(),
            Body::Rects(v) => v.iter().map(Rect::area).sum(),
        }
    }

    /// Counting measure, length or area. `f64::INFINITY` for unbounded regions.
    pub fn measure(&self) -> f64 {
        let body = self.body_measure();
        if self.complemented {
            let total = self.universe.measure();
            if total.is_infinite() {
                f64::INFINITY
            } else {
                (total - body).max(0.0)
            }
        } else {
            body
        }
    }

    pub fn complement(&self) -> Region {
        Region {
            universe: self.universe,
            body: self.body.clone(),
            complemented: !self.complemented,
        }
    }

    fn same_universe(&self, other: &Region) -> Result<()> {
        if self.universe == other.universe {
            Ok(())
        } else {
            Err(Error::UniverseMismatch {
                left: self.universe,
                right: other.universe,
            })
        }
    }

    pub fn intersect(&self, other: &Region) -> Result<Region> {
        self.same_universe(other)?;
        let (fa, fb) = (self.complemented, other.complemented);
        let body = combine(&self.body, &other.body, |a, b| match (fa, fb) {
            (false, false) => a && b,
            (false, true) => a && !b,
            (true, false) => !a && b,
            (true, true) => a || b,
        });
        Ok(Region {
            universe: self.universe,
            body,
            complemented: fa && fb,
        })
    }

    pub fn union(&self, other: &Region) -> Result<Region> {
        Ok(self
            .complement()
            .intersect(&other.complement())?
            .complement())
    }

    pub fn difference(&self, other: &Region) -> Result<Region> {
        self.intersect(&other.complement())
    }

    /// An equivalent region without the complement flag. Fails for unbounded complements.
    pub fn materialize(&self) -> Result<Region> {
        if !self.complemented {
            return Ok(self.clone());
        }
        let full = match self.universe {
            Universe::Unit1 => Region::points(Universe::Unit1, [Point::Star])?,
            Universe::UnitSquare => Region::rects([Rect::UNIT])?,
            Universe::Nats | Universe::RealLine => {
                return Err(Error::InfiniteMeasure(self.to_string()))
            }
        };
        full.intersect(self)
    }

    /// Shifts a real-line region by `c`.
    pub fn translate(&self, c: f64) -> Result<Region> {
        match &self.body {
            Body::Intervals(v) => Ok(Region {
                universe: self.universe,
                body: Body::Intervals(canonical_intervals(
                    v.iter().map(|(a, b)| (a + c, b + c)).collect(),
                )),
                complemented: self.complemented,
            }),
            _ => Err(Error::invalid(format!(
                "translation is only defined on the real line, not {}",
                self.universe
            ))),
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pieces: Vec<String> = match &self.body {
            Body::Points(s) => {
                if s.is_empty() && self.complemented {
                    return f.write_str("all");
                }
                let items: Vec<String> = s.iter().map(Point::to_string).collect();
                vec![format!("set{{{}}}", items.join(","))]
            }
            Body::Intervals(v) => v
                .iter()
                .map(|(a, b)| format!("interval({a},{b})"))
                .collect(),
            Body::Rects(v) => v
                .iter()
                .map(|r| format!("rect({},{},{},{})", r.x0, r.y0, r.x1, r.y1))
                .collect(),
        };
        let body = match pieces.len() {
            0 if self.complemented => return f.write_str("all"),
            0 => match self.universe {
                Universe::RealLine => "interval(0,0)".to_string(),
                Universe::UnitSquare => "rect(0,0,0,0)".to_string(),
                _ => "set{}".to_string(),
            },
            1 => pieces.into_iter().next().unwrap_or_default(),
            _ => format!("union({})", pieces.join(",")),
        };
        if self.complemented {
            write!(f, "complement({body})")
        } else {
            f.write_str(&body)
        }
    }
}

fn intervals_contain(v: &[(f64, f64)], x: f64) -> bool {
    // pieces are sorted and disjoint
    let i = v.partition_point(|(a, _)| *a <= x);
    i > 0 && x < v[i - 1].1
}

fn canonical_intervals(mut v: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    v.retain(|(a, b)| a < b);
    v.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(v.len());
    for (a, b) in v {
        match out.last_mut() {
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => out.push((a, b)),
        }
    }
    out
}

fn sorted_coords(it: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut cs: Vec<f64> = it.collect();
    cs.sort_by(f64::total_cmp);
    cs.dedup();
    cs
}

fn combine_intervals(
    a: &[(f64, f64)],
    b: &[(f64, f64)],
    op: impl Fn(bool, bool) -> bool,
) -> Vec<(f64, f64)> {
    let cs = sorted_coords(a.iter().chain(b).flat_map(|(lo, hi)| [*lo, *hi]));
    let segs = cs
        .windows(2)
        .filter(|w| op(intervals_contain(a, w[0]), intervals_contain(b, w[0])))
        .map(|w| (w[0], w[1]))
        .collect();
    canonical_intervals(segs)
}

/// Cross-sections of a rectangle union over the slabs `[xs[i], xs[i+1])`.
fn cross_section(rects: &[Rect], x: f64) -> Vec<(f64, f64)> {
    canonical_intervals(
        rects
            .iter()
            .filter(|r| r.x0 <= x && x < r.x1)
            .map(|r| (r.y0, r.y1))
            .collect(),
    )
}

fn combine_rects(a: &[Rect], b: &[Rect], op: impl Fn(bool, bool) -> bool) -> Vec<Rect> {
    let xs = sorted_coords(a.iter().chain(b).flat_map(|r| [r.x0, r.x1]));
    // maximal runs of slabs with identical cross-section
    let mut runs: Vec<(f64, f64, Vec<(f64, f64)>)> = Vec::new();
    for w in xs.windows(2) {
        let ys = combine_intervals(&cross_section(a, w[0]), &cross_section(b, w[0]), &op);
        if ys.is_empty() {
            continue;
        }
        match runs.last_mut() {
            Some((_, hi, prev)) if *hi == w[0] && *prev == ys => *hi = w[1],
            _ => runs.push((w[0], w[1], ys)),
        }
    }
    runs.into_iter()
        .flat_map(|(x0, x1, ys)| ys.into_iter().map(move |(y0, y1)| Rect { x0, y0, x1, y1 }))
        .collect()
}

fn canonical_rects(v: &[Rect]) -> Vec<Rect> {
    combine_rects(v, &[], |a, _| a)
}

fn combine(a: &Body, b: &Body, op: impl Fn(bool, bool) -> bool) -> Body {
    match (a, b) {
        (Body::Points(x), Body::Points(y)) => Body::Points(
            x.union(y)
                .filter(|p| op(x.contains(p), y.contains(p)))
                .copied()
                .collect(),
        ),
        (Body::Intervals(x), Body::Intervals(y)) => Body::Intervals(combine_intervals(x, y, op)),
        (Body::Rects(x), Body::Rects(y)) => Body::Rects(combine_rects(x, y, op)),
        _ => unreachable!("universes checked by caller"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit_square() -> Region {
        Region::rect(0.0, 0.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn membership_examples() {
        assert!(unit_square().contains(&Point::Real2(0.5, 0.5)).unwrap());
        let r = Region::interval(0.0, 1.0).unwrap().complement();
        assert!(!r.contains(&Point::Real(0.5)).unwrap());
        let s = Region::points(Universe::Nats, [Point::Nat(0)]).unwrap();
        assert!(!s.contains(&Point::Nat(6)).unwrap());
    }

    #[test]
    fn membership_checks_variant() {
        let s = Region::points(Universe::Nats, [Point::Nat(0)]).unwrap();
        assert!(matches!(
            s.contains(&Point::Star),
            Err(Error::VariantMismatch { .. })
        ));
    }

    #[test]
    fn measures() {
        let q = Region::rect(0.0, 0.0, 0.5, 0.5).unwrap();
        assert_eq!(q.measure(), 0.25);
        assert_eq!(q.complement().measure(), 0.75);
        let s = Region::points(Universe::Nats, [Point::Nat(0), Point::Nat(6)]).unwrap();
        assert_eq!(s.measure(), 2.0);
        assert_eq!(s.complement().measure(), f64::INFINITY);
        assert_eq!(
            Region::interval(0.0, 2.0).unwrap().complement().measure(),
            f64::INFINITY
        );
    }

    #[test]
    fn complement_of_empty_is_everything() {
        let all = Region::empty(Universe::UnitSquare).complement();
        for p in [(0.0, 0.0), (0.3, 0.9), (0.999, 0.5)] {
            assert!(all.contains(&Point::Real2(p.0, p.1)).unwrap());
        }
        assert_eq!(all.measure(), 1.0);
    }

    #[test]
    fn intersection_examples() {
        let a = Region::rect(0.0, 0.0, 0.6, 1.0).unwrap();
        let b = Region::rect(0.4, 0.0, 1.0, 1.0).unwrap();
        let ab = a.intersect(&b).unwrap();
        assert_eq!(ab, Region::rect(0.4, 0.0, 0.6, 1.0).unwrap());
        assert!((ab.measure() - 0.2).abs() < 1e-15);
        assert_eq!(a.intersect(&a.complement()).unwrap().measure(), 0.0);
        assert_eq!(a.intersect(&Region::all(Universe::UnitSquare)).unwrap(), a);
    }

    #[test]
    fn intersect_rejects_universe_mismatch() {
        let a = Region::interval(0.0, 1.0).unwrap();
        let b = unit_square();
        assert!(matches!(
            a.intersect(&b),
            Err(Error::UniverseMismatch { .. })
        ));
    }

    #[test]
    fn rectangles_merge_canonically() {
        let r = Region::rects([
            Rect {
                x0: 0.0,
                y0: 0.0,
                x1: 0.5,
                y1: 1.0,
            },
            Rect {
                x0: 0.5,
                y0: 0.0,
                x1: 1.0,
                y1: 1.0,
            },
        ])
        .unwrap();
        assert_eq!(r, unit_square());
        let overlapping = Region::rects([
            Rect {
                x0: 0.0,
                y0: 0.0,
                x1: 0.6,
                y1: 0.6,
            },
            Rect {
                x0: 0.4,
                y0: 0.4,
                x1: 1.0,
                y1: 1.0,
            },
        ])
        .unwrap();
        assert!((overlapping.measure() - (0.36 + 0.36 - 0.04)).abs() < 1e-12);
    }

    #[test]
    fn rect_outside_unit_square_rejected() {
        assert!(Region::rect(0.5, 0.5, 1.5, 1.0).is_err());
        assert!(Region::rect(0.5, 0.5, 0.4, 1.0).is_err());
    }

    #[test]
    fn interval_union_and_translate() {
        let r = Region::intervals([(0.0, 1.0), (0.5, 2.0), (3.0, 4.0)]).unwrap();
        assert_eq!(r.intervals_body().unwrap(), &[(0.0, 2.0), (3.0, 4.0)]);
        assert_eq!(r.measure(), 3.0);
        let t = r.translate(1.0).unwrap();
        assert_eq!(t.intervals_body().unwrap(), &[(1.0, 3.0), (4.0, 5.0)]);
    }

    #[test]
    fn materialize_complement_in_finite_universe() {
        let q = Region::rect(0.0, 0.0, 0.5, 0.5).unwrap().complement();
        let m = q.materialize().unwrap();
        assert!(!m.is_complemented());
        assert!((m.measure() - 0.75).abs() < 1e-15);
        assert!(Region::all(Universe::Nats).materialize().is_err());
    }

    fn arb_rect() -> impl Strategy<Value = Rect> {
        (0u8..=10, 0u8..=10, 0u8..=10, 0u8..=10).prop_map(|(a, b, c, d)| {
            let (x0, x1) = (a.min(b) as f64 / 10.0, a.max(b) as f64 / 10.0);
            let (y0, y1) = (c.min(d) as f64 / 10.0, c.max(d) as f64 / 10.0);
            Rect { x0, y0, x1, y1 }
        })
    }

    fn arb_region() -> impl Strategy<Value = Region> {
        (prop::collection::vec(arb_rect(), 0..4), any::<bool>()).prop_map(|(rs, c)| {
            let r = Region::rects(rs).unwrap();
            if c {
                r.complement()
            } else {
                r
            }
        })
    }

    fn probes() -> impl Strategy<Value = Vec<(f64, f64)>> {
        prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 50)
    }

    proptest! {
        #[test]
        fn canonicalization_idempotent(rs in prop::collection::vec(arb_rect(), 0..5)) {
            let once = canonical_rects(&rs);
            prop_assert_eq!(canonical_rects(&once), once.clone());
            let area: f64 = once.iter().map(Rect::area).sum();
            prop_assert!(area <= 1.0 + 1e-12);
        }

        #[test]
        fn intersection_is_pointwise(a in arb_region(), b in arb_region(), ps in probes()) {
            let ab = a.intersect(&b).unwrap();
            let aub = a.union(&b).unwrap();
            for (x, y) in ps {
                let p = Point::Real2(x, y);
                let (ia, ib) = (a.contains(&p).unwrap(), b.contains(&p).unwrap());
                prop_assert_eq!(ab.contains(&p).unwrap(), ia && ib);
                prop_assert_eq!(aub.contains(&p).unwrap(), ia || ib);
            }
        }

        #[test]
        fn complement_involution_and_additivity(a in arb_region(), ps in probes()) {
            let cc = a.complement().complement();
            for (x, y) in ps {
                let p = Point::Real2(x, y);
                prop_assert_eq!(cc.contains(&p).unwrap(), a.contains(&p).unwrap());
            }
            prop_assert!((a.measure() + a.complement().measure() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn measure_additive_over_disjoint_split(a in arb_region(), b in arb_region()) {
            let inside = a.intersect(&b).unwrap().measure();
            let outside = a.difference(&b).unwrap().measure();
            prop_assert!((inside + outside - a.measure()).abs() < 1e-12);
        }

        #[test]
        fn interval_ops_pointwise(
            xs in prop::collection::vec((-5i8..5, 0u8..4), 0..4),
            ys in prop::collection::vec((-5i8..5, 0u8..4), 0..4),
            probe in prop::collection::vec(-6.0f64..6.0, 40),
        ) {
            let mk = |v: &[(i8, u8)]| Region::intervals(
                v.iter().map(|(a, l)| (*a as f64, *a as f64 + *l as f64))).unwrap();
            let (a, b) = (mk(&xs), mk(&ys));
            let ab = a.intersect(&b.complement()).unwrap();
            for x in probe {
                let p = Point::Real(x);
                prop_assert_eq!(
                    ab.contains(&p).unwrap(),
                    a.contains(&p).unwrap() && !b.contains(&p).unwrap()
                );
            }
        }
    }
}
