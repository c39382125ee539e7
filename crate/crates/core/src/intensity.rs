//! Intensity measures: expected point counts per region.
//!
//! An [`IntensityMeasure`] is a small expression tree. The constructors
//! [`IntensityMeasure::scaled`], [`IntensityMeasure::sum`] and [`intensity_bind`]
//! simplify as they build, so discrete binds collapse to weighted sums and
//! uniform kernels over a fixed region collapse to constant densities. Whatever
//! is left as a kernel bind over a continuous base is evaluated by midpoint
//! quadrature.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::bag::Bag;
use crate::dist::{accumulate, DiscreteDist};
use crate::error::{Error, Result};
use crate::gb::{self, BagDist};
use crate::region::Region;
use crate::scalar::Weight;
use crate::space::{Point, Universe};

/// Midpoint-rule resolution: `grid` cells per interval, `grid × grid` per rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quadrature {
    pub grid: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature { grid: 64 }
    }
}

pub type KernelFn = Arc<dyn Fn(&Point) -> Result<IntensityMeasure> + Send + Sync>;

/// A point-indexed family of intensity measures.
#[derive(Clone)]
pub enum IntensityKernel {
    /// `x ↦ p·δ_x`
    Keep(f64),
    /// `x ↦ m` shifted by `x` (real line)
    Translate(Box<IntensityMeasure>),
    Map(KernelFn),
}

impl IntensityKernel {
    pub fn map(f: impl Fn(&Point) -> Result<IntensityMeasure> + Send + Sync + 'static) -> Self {
        IntensityKernel::Map(Arc::new(f))
    }

    pub fn apply(&self, x: &Point) -> Result<IntensityMeasure> {
        match self {
            IntensityKernel::Keep(p) => {
                Ok(IntensityMeasure::scaled(*p, IntensityMeasure::Dirac(*x)))
            }
            IntensityKernel::Translate(m) => match x {
                Point::Real(c) => m.translate(*c),
                _ => Err(Error::VariantMismatch {
                    point: x.to_string(),
                    universe: Universe::RealLine,
                }),
            },
            IntensityKernel::Map(f) => f(x),
        }
    }
}

impl fmt::Debug for IntensityKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntensityKernel::Keep(p) => write!(f, "Keep({p})"),
            IntensityKernel::Translate(m) => write!(f, "Translate({m:?})"),
            IntensityKernel::Map(_) => f.write_str("Map(<fn>)"),
        }
    }
}

#[derive(Debug, Clone)]
pub enum IntensityMeasure {
    Dirac(Point),
    WeightedSum(Vec<(Point, f64)>),
    /// Constant density `rate` over a finite-measure region.
    Density {
        rate: f64,
        region: Region,
    },
    Scaled(f64, Box<IntensityMeasure>),
    Sum(Vec<IntensityMeasure>),
    KernelBind {
        base: Box<IntensityMeasure>,
        kernel: IntensityKernel,
    },
}

impl IntensityMeasure {
    pub fn zero() -> Self {
        IntensityMeasure::Sum(Vec::new())
    }

    /// `rate` times Lebesgue (or counting) measure restricted to `region`.
    pub fn density(rate: f64, region: Region) -> Result<Self> {
        if !(rate.is_finite() && rate >= 0.0) {
            return Err(Error::invalid(format!(
                "density rate must be nonnegative, got {rate}"
            )));
        }
        if region.measure().is_infinite() {
            return Err(Error::InfiniteMeasure(region.to_string()));
        }
        Ok(IntensityMeasure::Density {
            rate,
            region: region.materialize()?,
        })
    }

    /// `a·m`, pushed inward where the result stays closed-form.
    pub fn scaled(a: f64, m: IntensityMeasure) -> Self {
        use IntensityMeasure::*;
        if a == 1.0 {
            return m;
        }
        if a == 0.0 {
            return Self::zero();
        }
        match m {
            Dirac(x) => WeightedSum(vec![(x, a)]),
            WeightedSum(v) => WeightedSum(v.into_iter().map(|(x, w)| (x, a * w)).collect()),
            Density { rate, region } => Density {
                rate: a * rate,
                region,
            },
            Scaled(b, inner) => Self::scaled(a * b, *inner),
            Sum(ms) => Sum(ms.into_iter().map(|m| Self::scaled(a, m)).collect()),
            other => Scaled(a, Box::new(other)),
        }
    }

    /// Sum of measures; atoms merge into one weighted sum and densities over
    /// equal regions add their rates.
    pub fn sum(ms: impl IntoIterator<Item = IntensityMeasure>) -> Self {
        use IntensityMeasure::*;
        let mut atoms: BTreeMap<Point, f64> = BTreeMap::new();
        let mut densities: Vec<(f64, Region)> = Vec::new();
        let mut rest = Vec::new();
        let mut stack: Vec<IntensityMeasure> = ms.into_iter().collect();
        stack.reverse();
        while let Some(m) = stack.pop() {
            match m {
                Sum(inner) => stack.extend(inner.into_iter().rev()),
                Dirac(x) => accumulate(&mut atoms, x, 1.0),
                WeightedSum(v) => v
                    .into_iter()
                    .for_each(|(x, w)| accumulate(&mut atoms, x, w)),
                Density { rate, region } => {
                    match densities.iter_mut().find(|(_, r)| *r == region) {
                        Some(slot) => slot.0 += rate,
                        None => densities.push((rate, region)),
                    }
                }
                other => rest.push(other),
            }
        }
        let mut out = Vec::new();
        atoms.retain(|_, w| *w != 0.0);
        if !atoms.is_empty() {
            out.push(WeightedSum(atoms.into_iter().collect()));
        }
        out.extend(
            densities
                .into_iter()
                .filter(|(rate, _)| *rate != 0.0)
                .map(|(rate, region)| Density { rate, region }),
        );
        out.extend(rest);
        if out.len() == 1 {
            out.pop().unwrap()
        } else {
            Sum(out)
        }
    }

    /// Finite list of weighted atoms, when the measure is purely discrete.
    pub fn atoms(&self) -> Option<Vec<(Point, f64)>> {
        use IntensityMeasure::*;
        match self {
            Dirac(x) => Some(vec![(*x, 1.0)]),
            WeightedSum(v) => Some(v.clone()),
            Density { rate, region } => region
                .points_body()
                .map(|s| s.iter().map(|p| (*p, *rate)).collect()),
            Scaled(a, m) => m
                .atoms()
                .map(|v| v.into_iter().map(|(x, w)| (x, a * w)).collect()),
            Sum(ms) => {
                let mut out = Vec::new();
                for m in ms {
                    out.extend(m.atoms()?);
                }
                Some(out)
            }
            KernelBind { .. } => None,
        }
    }

    /// Whether [`eval`](Self::eval) is exact (no quadrature involved).
    pub fn is_closed_form(&self) -> bool {
        use IntensityMeasure::*;
        match self {
            Dirac(_) | WeightedSum(_) | Density { .. } => true,
            Scaled(_, m) => m.is_closed_form(),
            Sum(ms) => ms.iter().all(Self::is_closed_form),
            KernelBind { .. } => false,
        }
    }

    /// Expected number of points in `region`, with the default quadrature.
    pub fn eval(&self, region: &Region) -> Result<f64> {
        self.eval_with(region, &Quadrature::default())
    }

    pub fn eval_with(&self, region: &Region, q: &Quadrature) -> Result<f64> {
        if region.measure().is_infinite() {
            return Err(Error::InfiniteMeasure(region.to_string()));
        }
        self.measure_of(region, q)
    }

    fn measure_of(&self, region: &Region, q: &Quadrature) -> Result<f64> {
        use IntensityMeasure::*;
        match self {
            Dirac(x) => Ok(if region.contains(x)? { 1.0 } else { 0.0 }),
            WeightedSum(v) => {
                let mut acc = 0.0;
                for (x, w) in v {
                    if region.contains(x)? {
                        acc += w;
                    }
                }
                Ok(acc)
            }
            Density { rate, region: own } => {
                if *rate == 0.0 {
                    return Ok(0.0);
                }
                Ok(rate * own.intersect(region)?.measure())
            }
            Scaled(a, m) => Ok(a * m.measure_of(region, q)?),
            Sum(ms) => ms.iter().map(|m| m.measure_of(region, q)).sum(),
            KernelBind { base, kernel } => {
                base.integrate(&|x| kernel.apply(x)?.measure_of(region, q), q)
            }
        }
    }

    /// `∫ g dm`.
    pub fn integrate(&self, g: &dyn Fn(&Point) -> Result<f64>, q: &Quadrature) -> Result<f64> {
        use IntensityMeasure::*;
        match self {
            Dirac(x) => g(x),
            WeightedSum(v) => {
                let mut acc = 0.0;
                for (x, w) in v {
                    acc += w * g(x)?;
                }
                Ok(acc)
            }
            Density { rate, region } => {
                if *rate == 0.0 {
                    return Ok(0.0);
                }
                Ok(rate * integrate_region(region, g, q)?)
            }
            Scaled(a, m) => Ok(a * m.integrate(g, q)?),
            Sum(ms) => ms.iter().map(|m| m.integrate(g, q)).sum(),
            KernelBind { base, kernel } => base.integrate(&|x| kernel.apply(x)?.integrate(g, q), q),
        }
    }

    /// Pushforward along `x ↦ x + c` (real line).
    pub fn translate(&self, c: f64) -> Result<IntensityMeasure> {
        use IntensityMeasure::*;
        let shift = |p: &Point| match p {
            Point::Real(x) => Point::real(x + c),
            other => Err(Error::VariantMismatch {
                point: other.to_string(),
                universe: Universe::RealLine,
            }),
        };
        Ok(match self {
            Dirac(x) => Dirac(shift(x)?),
            WeightedSum(v) => WeightedSum(
                v.iter()
                    .map(|(x, w)| Ok((shift(x)?, *w)))
                    .collect::<Result<_>>()?,
            ),
            Density { rate, region } => Density {
                rate: *rate,
                region: region.translate(c)?,
            },
            Scaled(a, m) => Scaled(*a, Box::new(m.translate(c)?)),
            Sum(ms) => Sum(ms.iter().map(|m| m.translate(c)).collect::<Result<_>>()?),
            KernelBind { base, kernel } => {
                let kernel = kernel.clone();
                KernelBind {
                    base: base.clone(),
                    kernel: IntensityKernel::map(move |x| kernel.apply(x)?.translate(c)),
                }
            }
        })
    }
}

/// Midpoint rule over the pieces of a finite-measure region.
fn integrate_region(
    region: &Region,
    g: &dyn Fn(&Point) -> Result<f64>,
    q: &Quadrature,
) -> Result<f64> {
    let region = region.materialize()?;
    let n = q.grid.max(1);
    let mut acc = 0.0;
    if let Some(points) = region.points_body() {
        for p in points {
            acc += g(p)?;
        }
    } else if let Some(pieces) = region.intervals_body() {
        for &(a, b) in pieces {
            let h = (b - a) / n as f64;
            for i in 0..n {
                acc += h * g(&Point::Real(a + (i as f64 + 0.5) * h))?;
            }
        }
    } else if let Some(rects) = region.rects_body() {
        for r in rects {
            let hx = (r.x1 - r.x0) / n as f64;
            let hy = (r.y1 - r.y0) / n as f64;
            for i in 0..n {
                let x = r.x0 + (i as f64 + 0.5) * hx;
                for j in 0..n {
                    let y = r.y0 + (j as f64 + 0.5) * hy;
                    acc += hx * hy * g(&Point::Real2(x, y))?;
                }
            }
        }
    }
    Ok(acc)
}

/// `δ_x`.
pub fn intensity_unit(x: Point) -> IntensityMeasure {
    IntensityMeasure::Dirac(x)
}

/// `m ≫= k`: the measure `U ↦ ∫ k(x)(U) dm(x)`.
///
/// Discrete bases collapse to `Σ wᵢ·k(xᵢ)`; constant-probability keeps scale the
/// base; a translation by a point mass shifts it. Anything else stays symbolic.
pub fn intensity_bind(m: &IntensityMeasure, kernel: IntensityKernel) -> Result<IntensityMeasure> {
    if let IntensityKernel::Keep(p) = kernel {
        return Ok(IntensityMeasure::scaled(p, m.clone()));
    }
    if let IntensityKernel::Translate(d) = &kernel {
        if let Some(atoms) = d.atoms() {
            if let [(Point::Real(c), w)] = atoms[..] {
                return Ok(IntensityMeasure::scaled(w, m.translate(c)?));
            }
        }
    }
    if let Some(atoms) = m.atoms() {
        let mut parts = Vec::with_capacity(atoms.len());
        for (x, w) in atoms {
            parts.push(IntensityMeasure::scaled(w, kernel.apply(&x)?));
        }
        return Ok(IntensityMeasure::sum(parts));
    }
    Ok(IntensityMeasure::KernelBind {
        base: Box::new(m.clone()),
        kernel,
    })
}

/// Multiplicity-respecting sum of Dirac measures.
pub fn embed_bag(b: &Bag<Point>) -> IntensityMeasure {
    IntensityMeasure::Sum(b.iter().map(|x| IntensityMeasure::Dirac(*x)).collect())
}

/// Per-point expected multiplicity `Σ_b α(b)·mult_b(x)`.
pub fn exact_intensity_weights<W: Weight>(alpha: &BagDist<Point, W>) -> BTreeMap<Point, W> {
    let mut out = BTreeMap::new();
    for (bag, w) in alpha.iter() {
        for x in bag {
            accumulate(&mut out, *x, w.clone());
        }
    }
    out
}

/// The intensity of an exact process, as a weighted sum.
pub fn intensity_of_exact<W: Weight>(alpha: &BagDist<Point, W>) -> IntensityMeasure {
    IntensityMeasure::WeightedSum(
        exact_intensity_weights(alpha)
            .into_iter()
            .map(|(x, w)| (x, w.as_f64()))
            .collect(),
    )
}

/// Expected count in `region`, summed bag by bag: `Σ_b α(b)·|b ∩ U|`.
pub fn exact_intensity_in<W: Weight>(alpha: &BagDist<Point, W>, region: &Region) -> Result<W> {
    let mut acc = W::zero();
    for (bag, w) in alpha.iter() {
        let k = W::from_usize(bag.count_in(region)?).expect("small count");
        acc = acc + k * w.clone();
    }
    Ok(acc)
}

/// Expected count in `region` from the count law: `Σ_k k·α(A^U_k)`.
pub fn expected_count_by_law<W: Weight>(alpha: &BagDist<Point, W>, region: &Region) -> Result<W> {
    let law = gb::count_dist(alpha, region)?;
    let mut acc = W::zero();
    for (k, w) in law.iter() {
        acc = acc + W::from_u64(*k).expect("small count") * w.clone();
    }
    Ok(acc)
}

/// The Kleisli composite of intensities evaluated at `region`, in exact weights:
/// `Σ_x m(x)·k(x)(U)`.
pub fn kleisli_intensity_in<W: Weight>(
    base: &BTreeMap<Point, W>,
    mut k: impl FnMut(&Point) -> Result<BTreeMap<Point, W>>,
    region: &Region,
) -> Result<W> {
    let mut acc = W::zero();
    for (x, w) in base {
        for (y, v) in k(x)? {
            if region.contains(&y)? {
                acc = acc + w.clone() * v;
            }
        }
    }
    Ok(acc)
}

/// `(Σᵢ νᵢ(U), 𝔼(l[ν₁..νₙ])(U))`; the two agree.
pub fn distributive_intensity_check<W: Weight>(
    nus: &[DiscreteDist<Point, W>],
    region: &Region,
) -> Result<(W, W)> {
    let mut direct = W::zero();
    for nu in nus {
        direct = direct + nu.prob_in(region)?;
    }
    let via_law = exact_intensity_in(&gb::distributive_law(nus)?, region)?;
    Ok((direct, via_law))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(ps: &[u64]) -> Region {
        Region::points(Universe::Nats, ps.iter().map(|&n| Point::Nat(n))).unwrap()
    }

    #[test]
    fn dirac_and_sums() {
        let x = Point::Nat(2);
        assert_eq!(intensity_unit(x).eval(&set(&[2])).unwrap(), 1.0);
        assert_eq!(intensity_unit(x).eval(&set(&[3])).unwrap(), 0.0);
        let two = IntensityMeasure::sum([intensity_unit(x), intensity_unit(Point::Nat(3))]);
        assert_eq!(two.eval(&set(&[2, 3])).unwrap(), 2.0);
        assert_eq!(IntensityMeasure::zero().eval(&set(&[2])).unwrap(), 0.0);
    }

    #[test]
    fn density_area() {
        let m = IntensityMeasure::density(10.0, Region::all(Universe::UnitSquare)).unwrap();
        let w = Region::rect(0.0, 0.0, 0.5, 0.5).unwrap();
        assert_eq!(m.eval(&w).unwrap(), 2.5);
        assert!(IntensityMeasure::density(1.0, Region::all(Universe::RealLine)).is_err());
    }

    #[test]
    fn infinite_regions_refused() {
        let m = intensity_unit(Point::Real(0.5));
        let r = Region::interval(0.0, 1.0).unwrap().complement();
        assert!(matches!(m.eval(&r), Err(Error::InfiniteMeasure(_))));
        let n = intensity_unit(Point::Nat(0));
        assert!(matches!(
            n.eval(&set(&[1]).complement()),
            Err(Error::InfiniteMeasure(_))
        ));
    }

    #[test]
    fn bind_of_dirac_is_kernel() {
        let k = IntensityKernel::map(|x| match x {
            Point::Nat(n) => Ok(IntensityMeasure::scaled(
                0.5,
                intensity_unit(Point::Nat(n + 1)),
            )),
            _ => unreachable!(),
        });
        let m = intensity_bind(&intensity_unit(Point::Nat(4)), k.clone()).unwrap();
        for probe in [set(&[4]), set(&[5]), set(&[4, 5, 6])] {
            assert_eq!(
                m.eval(&probe).unwrap(),
                k.apply(&Point::Nat(4)).unwrap().eval(&probe).unwrap()
            );
        }
    }

    #[test]
    fn wald_product() {
        let en = 3.0;
        let base = IntensityMeasure::WeightedSum(vec![(Point::Star, en)]);
        let x = IntensityMeasure::WeightedSum(vec![(Point::Star, 1.5)]);
        let m = intensity_bind(&base, IntensityKernel::map(move |_| Ok(x.clone()))).unwrap();
        let star = Region::all(Universe::Unit1);
        assert!((m.eval(&star).unwrap() - 4.5).abs() < 1e-15);
    }

    #[test]
    fn poisson_composition_is_closed_form() {
        let lambda = 10.0;
        let base = IntensityMeasure::WeightedSum(vec![(Point::Star, lambda)]);
        let uniform = IntensityMeasure::density(1.0, Region::all(Universe::UnitSquare)).unwrap();
        let m = intensity_bind(&base, IntensityKernel::map(move |_| Ok(uniform.clone()))).unwrap();
        assert!(matches!(m, IntensityMeasure::Density { .. }));
        assert!(m.is_closed_form());
        let w = Region::rect(0.0, 0.0, 0.5, 0.5).unwrap();
        assert_eq!(m.eval(&w).unwrap(), 2.5);
    }

    #[test]
    fn quadrature_on_continuous_base() {
        // base: unit density on [0,1); kernel: mass x at x; m(U) = ∫_U x dx
        let base = IntensityMeasure::density(1.0, Region::interval(0.0, 1.0).unwrap()).unwrap();
        let k = IntensityKernel::map(|p| match p {
            Point::Real(x) => Ok(IntensityMeasure::scaled(*x, intensity_unit(*p))),
            _ => unreachable!(),
        });
        let m = intensity_bind(&base, k).unwrap();
        assert!(!m.is_closed_form());
        let half = Region::interval(0.0, 0.5).unwrap();
        // midpoint rule is exact for a linear integrand on aligned cells
        assert!((m.eval(&half).unwrap() - 0.125).abs() < 1e-12);
        assert!((m.eval(&Region::interval(0.0, 1.0).unwrap()).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn keep_and_translate_simplify() {
        let base = IntensityMeasure::density(2.0, Region::interval(0.0, 1.0).unwrap()).unwrap();
        let kept = intensity_bind(&base, IntensityKernel::Keep(0.25)).unwrap();
        assert_eq!(
            kept.eval(&Region::interval(0.0, 1.0).unwrap()).unwrap(),
            0.5
        );
        let shift = IntensityKernel::Translate(Box::new(intensity_unit(Point::Real(3.0))));
        let moved = intensity_bind(&base, shift).unwrap();
        assert!(moved.is_closed_form());
        let probe = Region::interval(3.25, 3.75).unwrap();
        assert_eq!(moved.eval(&probe).unwrap(), 1.0);
    }

    #[test]
    fn translate_with_spread_uses_quadrature() {
        // base δ_0 + δ_1, displacement uniform on [0,1): result is uniform on [0,2)
        let base = IntensityMeasure::sum([
            intensity_unit(Point::Real(0.0)),
            intensity_unit(Point::Real(1.0)),
        ]);
        let spread = IntensityMeasure::density(1.0, Region::interval(0.0, 1.0).unwrap()).unwrap();
        let m = intensity_bind(&base, IntensityKernel::Translate(Box::new(spread))).unwrap();
        let probe = Region::interval(0.5, 1.5).unwrap();
        assert!((m.eval(&probe).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn embedding_counts() {
        let (x, y) = (Point::Nat(0), Point::Nat(1));
        let b = Bag::from_tuple([x, x, y]);
        assert_eq!(embed_bag(&b).eval(&set(&[0])).unwrap(), 2.0);
        assert_eq!(embed_bag(&Bag::empty()).eval(&set(&[0])).unwrap(), 0.0);
        assert_eq!(embed_bag(&b).eval(&set(&[0, 1])).unwrap(), 3.0);
    }

    #[test]
    fn exact_intensity_examples() {
        let s = Point::Star;
        let star = Region::all(Universe::Unit1);
        let a: BagDist = gb::unit(s);
        assert_eq!(intensity_of_exact(&a).eval(&star).unwrap(), 1.0);
        let b: BagDist = DiscreteDist::uniform([Bag::empty(), Bag::from_tuple([s, s])]).unwrap();
        assert_eq!(
            intensity_of_exact(&b).eval(&star).unwrap(),
            0.5 * 0.0 + 0.5 * 2.0
        );
        assert_eq!(expected_count_by_law(&b, &star).unwrap(), 1.0);
    }

    #[test]
    fn distributive_check_examples() {
        let (u, v) = (Point::Nat(0), Point::Nat(1));
        let coin = DiscreteDist::<Point>::uniform([u, v]).unwrap();
        let r = set(&[0]);
        assert_eq!(
            distributive_intensity_check(&[coin.clone(), coin], &r).unwrap(),
            (1.0, 1.0)
        );
        assert_eq!(
            distributive_intensity_check::<f64>(&[], &r).unwrap(),
            (0.0, 0.0)
        );
        let pts = vec![DiscreteDist::<Point>::point(u); 3];
        assert_eq!(distributive_intensity_check(&pts, &r).unwrap(), (3.0, 3.0));
    }

    proptest! {
        #[test]
        fn additive_on_disjoint_rects(x in 0.05f64..0.95, rate in 0.1f64..20.0) {
            let m = IntensityMeasure::density(rate, Region::rect(0.0, 0.0, 0.7, 0.9).unwrap()).unwrap();
            let left = Region::rect(0.0, 0.0, x, 1.0).unwrap();
            let right = left.complement();
            let whole = Region::all(Universe::UnitSquare);
            let total = m.eval(&whole).unwrap();
            prop_assert!((m.eval(&left).unwrap() + m.eval(&right).unwrap() - total).abs() <= 1e-12);
        }

        #[test]
        fn additive_under_quadrature(x in 0.05f64..0.95) {
            let base = IntensityMeasure::density(3.0, Region::all(Universe::UnitSquare)).unwrap();
            let m = intensity_bind(&base, IntensityKernel::map(|p| match p {
                Point::Real2(a, b) => Ok(IntensityMeasure::scaled(1.0 - (a - b).abs(), intensity_unit(*p))),
                _ => unreachable!(),
            })).unwrap();
            let left = Region::rect(0.0, 0.0, x, 1.0).unwrap();
            let whole = Region::all(Universe::UnitSquare);
            let sum = m.eval(&left).unwrap() + m.eval(&left.complement()).unwrap();
            prop_assert!((sum - m.eval(&whole).unwrap()).abs() <= 1e-9);
        }
    }
}
