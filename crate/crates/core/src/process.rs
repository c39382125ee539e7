//! Sampler-backed point processes.
//!
//! A [`PointProcess`] draws bags of points from a [`SeedState`]. Alongside the
//! sampler every process carries its intensity measure, maintained by the
//! combinators, and, when it was assembled from discrete parts only, a lazily
//! computed exact [`BagDist`].
//!
//! Binding follows the usual recipe: draw a bag from the source with stream
//! `child(0)`, then run the kernel at the `i`-th point of the sorted bag with
//! stream `child(i + 1)` and union the results. Equal points take index order,
//! so the streams depend only on the canonical bag.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;
use rayon::prelude::*;

use crate::bag::Bag;
use crate::dist::DiscreteDist;
use crate::error::{Error, Result};
use crate::gb::{self, BagDist};
use crate::intensity::{intensity_bind, IntensityKernel, IntensityMeasure};
use crate::region::Region;
use crate::scalar::MAX_SUPPORT;
use crate::seed::SeedState;
use crate::space::{Point, Universe};

/// Truncation level used for every sampled Poisson count.
pub const POISSON_EPS: f64 = 1e-12;

type Sampler = dyn Fn(SeedState) -> Result<Bag<Point>> + Send + Sync;
type ExactFn = dyn Fn() -> Result<Option<BagDist>> + Send + Sync;

struct Inner {
    universe: Universe,
    sampler: Box<Sampler>,
    intensity: IntensityMeasure,
    exact_fn: Option<Box<ExactFn>>,
    exact: OnceLock<Result<Option<BagDist>>>,
}

#[derive(Clone)]
pub struct PointProcess(Arc<Inner>);

impl fmt::Debug for PointProcess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PointProcess")
            .field("universe", &self.0.universe)
            .field("intensity", &self.0.intensity)
            .finish_non_exhaustive()
    }
}

impl PointProcess {
    fn from_parts(
        universe: Universe,
        sampler: impl Fn(SeedState) -> Result<Bag<Point>> + Send + Sync + 'static,
        intensity: IntensityMeasure,
        exact_fn: Option<Box<ExactFn>>,
    ) -> Self {
        PointProcess(Arc::new(Inner {
            universe,
            sampler: Box::new(sampler),
            intensity,
            exact_fn,
            exact: OnceLock::new(),
        }))
    }

    pub fn universe(&self) -> Universe {
        self.0.universe
    }

    pub fn intensity(&self) -> &IntensityMeasure {
        &self.0.intensity
    }

    /// One draw. Deterministic in `s`.
    pub fn sample(&self, s: SeedState) -> Result<Bag<Point>> {
        (self.0.sampler)(s)
    }

    /// The exact bag distribution, when every component is discrete and exact.
    /// Computed on first use.
    pub fn exact(&self) -> Result<Option<&BagDist>> {
        let cell = self.0.exact.get_or_init(|| match &self.0.exact_fn {
            Some(f) => f(),
            None => Ok(None),
        });
        match cell {
            Ok(d) => Ok(d.as_ref()),
            Err(e) => Err(e.clone()),
        }
    }

    /// Kleisli extension with the sampling semantics described in the module docs.
    pub fn bind(&self, kernel: &Kernel) -> Result<PointProcess> {
        let target = kernel.universe;
        let intensity = intensity_bind(self.intensity(), kernel.intensity_kernel())?;

        let alpha = self.clone();
        let f = kernel.f.clone();
        let sampler = move |s: SeedState| {
            let bag = alpha.sample(s.child(0))?;
            let mut out = Vec::new();
            for (i, x) in bag.iter().enumerate() {
                let p = f(x)?;
                if p.universe() != target {
                    return Err(Error::UniverseMismatch {
                        left: target,
                        right: p.universe(),
                    });
                }
                out.extend(p.sample(s.child(i as u64 + 1))?.into_vec());
                if out.len() > MAX_SUPPORT {
                    return Err(Error::ResourceLimit {
                        what: "bag size",
                        limit: MAX_SUPPORT,
                    });
                }
            }
            Ok(Bag::from_tuple(out))
        };

        let exact_fn: Option<Box<ExactFn>> = if self.0.exact_fn.is_some() && target.is_discrete() {
            let alpha = self.clone();
            let f = kernel.f.clone();
            Some(Box::new(move || {
                let Some(a) = alpha.exact()? else {
                    return Ok(None);
                };
                let mut missing = false;
                let out = gb::bind(a, |x| {
                    let p = f(x)?;
                    match p.exact()? {
                        Some(e) => Ok(e.clone()),
                        None => {
                            missing = true;
                            Ok(DiscreteDist::point(Bag::empty()))
                        }
                    }
                })?;
                Ok(if missing { None } else { Some(out) })
            }))
        } else {
            None
        };

        Ok(PointProcess::from_parts(
            target, sampler, intensity, exact_fn,
        ))
    }

    fn with_intensity(&self, intensity: IntensityMeasure) -> PointProcess {
        let inner = self.clone();
        let exact_src = self.clone();
        let exact_fn: Option<Box<ExactFn>> = self
            .0
            .exact_fn
            .as_ref()
            .map(|_| Box::new(move || Ok(exact_src.exact()?.cloned())) as Box<ExactFn>);
        PointProcess::from_parts(
            self.universe(),
            move |s| inner.sample(s),
            intensity,
            exact_fn,
        )
    }
}

/// A point-indexed family of processes, all on one target universe.
#[derive(Clone)]
pub struct Kernel {
    universe: Universe,
    f: Arc<dyn Fn(&Point) -> Result<PointProcess> + Send + Sync>,
    intensity: Option<IntensityKernel>,
}

impl Kernel {
    pub fn new(
        universe: Universe,
        f: impl Fn(&Point) -> Result<PointProcess> + Send + Sync + 'static,
    ) -> Self {
        Kernel {
            universe,
            f: Arc::new(f),
            intensity: None,
        }
    }

    /// `x ↦ p` for every `x`.
    pub fn constant(p: PointProcess) -> Self {
        let universe = p.universe();
        Kernel::new(universe, move |_| Ok(p.clone()))
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn apply(&self, x: &Point) -> Result<PointProcess> {
        (self.f)(x)
    }

    fn with_intensity(mut self, k: IntensityKernel) -> Self {
        self.intensity = Some(k);
        self
    }

    fn intensity_kernel(&self) -> IntensityKernel {
        match &self.intensity {
            Some(k) => k.clone(),
            None => {
                let f = self.f.clone();
                IntensityKernel::map(move |x| Ok(f(x)?.intensity().clone()))
            }
        }
    }
}

/// Every draw is `[x]`.
pub fn pp_unit(x: Point) -> PointProcess {
    let bag = Bag::unit(x);
    let exact_fn: Option<Box<ExactFn>> = if x.universe().is_discrete() {
        Some(Box::new(move || Ok(Some(gb::unit(x)))))
    } else {
        None
    };
    PointProcess::from_parts(
        x.universe(),
        move |_| Ok(bag.clone()),
        IntensityMeasure::Dirac(x),
        exact_fn,
    )
}

/// The process on the one-point space with `k` copies of `⋆` with probability `d_k`.
pub fn from_nat_dist(d: &DiscreteDist<u64>) -> Result<PointProcess> {
    if let Some((k, _)) = d.iter().next_back() {
        if *k as usize > MAX_SUPPORT {
            return Err(Error::ResourceLimit {
                what: "bag size",
                limit: MAX_SUPPORT,
            });
        }
    }
    let mean = d.expectation()?;
    let stars = |k: u64| Bag::from_tuple(std::iter::repeat_n(Point::Star, k as usize));
    let dd = d.clone();
    let exact = d.clone();
    Ok(PointProcess::from_parts(
        Universe::Unit1,
        move |s| {
            let u: f64 = s.rng().gen();
            Ok(stars(*dd.pick(u).unwrap_or(&0)))
        },
        IntensityMeasure::scaled(mean, IntensityMeasure::Dirac(Point::Star)),
        Some(Box::new(move || Ok(Some(exact.map(|k| stars(*k)))))),
    ))
}

/// A single point drawn from `nu`.
pub fn from_point_dist(nu: &DiscreteDist<Point>) -> Result<PointProcess> {
    let universe = match nu.iter().next() {
        Some((p, _)) => p.universe(),
        None => return Err(Error::invalid("point distribution with empty support")),
    };
    for (p, _) in nu.iter() {
        universe.check(p)?;
    }
    let intensity = IntensityMeasure::WeightedSum(nu.iter().map(|(p, w)| (*p, *w)).collect());
    let d = nu.clone();
    let exact_fn: Option<Box<ExactFn>> = if universe.is_discrete() {
        let e = nu.clone();
        Some(Box::new(move || Ok(Some(e.map(|p| Bag::unit(*p))))))
    } else {
        None
    };
    Ok(PointProcess::from_parts(
        universe,
        move |s| {
            let u: f64 = s.rng().gen();
            Ok(Bag::unit(*d.pick(u).expect("nonempty support")))
        },
        intensity,
        exact_fn,
    ))
}

/// `Poisson(rate)` copies of `⋆`. Rate zero gives the empty process.
///
/// Sampling and the exact branch use the pmf truncated at [`POISSON_EPS`]; the
/// intensity is the closed form `rate·δ_⋆`.
pub fn from_poisson(rate: f64) -> Result<PointProcess> {
    if !(rate.is_finite() && rate >= 0.0) {
        return Err(Error::invalid(format!(
            "Poisson rate must be nonnegative, got {rate}"
        )));
    }
    let d = if rate == 0.0 {
        DiscreteDist::point(0)
    } else {
        DiscreteDist::poisson_trunc(rate, POISSON_EPS)?
    };
    let p = from_nat_dist(&d)?;
    Ok(p.with_intensity(IntensityMeasure::scaled(
        rate,
        IntensityMeasure::Dirac(Point::Star),
    )))
}

/// A single point, uniform on `region`.
pub fn uniform_point(region: &Region) -> Result<PointProcess> {
    let universe = region.universe();
    if !matches!(universe, Universe::RealLine | Universe::UnitSquare) {
        return Err(Error::invalid(format!(
            "uniform points need a continuous universe, not {universe}"
        )));
    }
    let total = region.measure();
    if !(total.is_finite() && total > 0.0) {
        return Err(Error::invalid(format!(
            "uniform point on {region} needs finite positive measure, got {total}"
        )));
    }
    let region = region.materialize()?;
    let intensity = IntensityMeasure::density(1.0 / total, region.clone())?;
    let sampler: Box<Sampler> = if let Some(pieces) = region.intervals_body() {
        let pieces: Vec<(f64, f64)> = pieces.iter().copied().filter(|(a, b)| b > a).collect();
        let weights: Vec<f64> = pieces.iter().map(|(a, b)| b - a).collect();
        Box::new(move |s: SeedState| {
            let mut rng = s.rng();
            let (a, b) = pieces[pick_piece(&weights, rng.gen())];
            let x = (a + rng.gen::<f64>() * (b - a)).clamp(a, b.next_down());
            Ok(Bag::unit(Point::Real(x)))
        })
    } else {
        let rects: Vec<_> = region
            .rects_body()
            .expect("unit square region")
            .iter()
            .copied()
            .filter(|r| r.area() > 0.0)
            .collect();
        let weights: Vec<f64> = rects.iter().map(|r| r.area()).collect();
        Box::new(move |s: SeedState| {
            let mut rng = s.rng();
            let r = rects[pick_piece(&weights, rng.gen())];
            let x = (r.x0 + rng.gen::<f64>() * (r.x1 - r.x0)).clamp(r.x0, r.x1.next_down());
            let y = (r.y0 + rng.gen::<f64>() * (r.y1 - r.y0)).clamp(r.y0, r.y1.next_down());
            Ok(Bag::unit(Point::Real2(x, y)))
        })
    };
    Ok(PointProcess::from_parts(universe, sampler, intensity, None))
}

fn pick_piece(weights: &[f64], u: f64) -> usize {
    let total: f64 = weights.iter().sum();
    let mut acc = 0.0;
    for (i, w) in weights.iter().enumerate() {
        acc += w;
        if u * total < acc {
            return i;
        }
    }
    weights.len() - 1
}

/// Poisson process: `Poisson(rate)` points, each uniform on `region`.
pub fn poisson_pp(rate: f64, region: &Region) -> Result<PointProcess> {
    if !(rate.is_finite() && rate > 0.0) {
        return Err(Error::invalid(format!(
            "Poisson rate must be positive, got {rate}"
        )));
    }
    from_poisson(rate)?.bind(&Kernel::constant(uniform_point(region)?))
}

/// Keeps `[x]` with probability `p`, otherwise the empty bag.
pub fn keep_with(x: Point, p: f64) -> Result<PointProcess> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!(
            "keep probability {p} outside [0,1]"
        )));
    }
    let exact_fn: Option<Box<ExactFn>> = if x.universe().is_discrete() {
        Some(Box::new(move || {
            Ok(Some(DiscreteDist::new([
                (Bag::unit(x), p),
                (Bag::empty(), 1.0 - p),
            ])?))
        }))
    } else {
        None
    };
    Ok(PointProcess::from_parts(
        x.universe(),
        move |s| {
            let u: f64 = s.rng().gen();
            Ok(if u < p { Bag::unit(x) } else { Bag::empty() })
        },
        IntensityMeasure::scaled(p, IntensityMeasure::Dirac(x)),
        exact_fn,
    ))
}

/// Thinning by an arbitrary keep/drop rule. Each `t(x)` must draw `[x]` or `[]`;
/// this is not checked.
pub fn thin(alpha: &PointProcess, t: &Kernel) -> Result<PointProcess> {
    alpha.bind(t)
}

/// Independent thinning with constant keep probability.
pub fn thin_const(alpha: &PointProcess, p: f64) -> Result<PointProcess> {
    keep_with(Point::Star, p)?;
    let k = Kernel::new(alpha.universe(), move |x| keep_with(*x, p))
        .with_intensity(IntensityKernel::Keep(p));
    thin(alpha, &k)
}

/// Moves every point of `alpha` by an independent draw of `delta`, which must
/// produce exactly one point per draw.
pub fn displace(alpha: &PointProcess, delta: &PointProcess) -> Result<PointProcess> {
    for p in [alpha, delta] {
        if p.universe() != Universe::RealLine {
            return Err(Error::UniverseMismatch {
                left: Universe::RealLine,
                right: p.universe(),
            });
        }
    }
    let delta = delta.clone();
    let spread = IntensityKernel::Translate(Box::new(delta.intensity().clone()));
    let k = Kernel::new(Universe::RealLine, move |x| {
        let Point::Real(x) = *x else {
            unreachable!("source universe checked")
        };
        let moved = delta.bind(&Kernel::new(Universe::RealLine, move |d| match d {
            Point::Real(d) => Ok(pp_unit(Point::real(x + d)?)),
            _ => unreachable!("displacement universe checked"),
        }))?;
        let intensity = moved.intensity().clone();
        Ok(PointProcess::from_parts(
            Universe::RealLine,
            move |s| {
                let b = moved.sample(s)?;
                if b.len() != 1 {
                    return Err(Error::invalid(format!(
                        "displacement drew {} points, expected exactly one",
                        b.len()
                    )));
                }
                Ok(b)
            },
            intensity,
            None,
        ))
    })
    .with_intensity(spread);
    alpha.bind(&k)
}

/// Parameters of the clustered example on the unit square.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusterParams {
    /// Rate of the parent Poisson process.
    pub seed_rate: f64,
    /// Offspring rate on the diagonal; it falls off linearly as `peak·(1 − |x − y|)`.
    pub peak_rate: f64,
    /// Side of the offspring square centred on each parent, clipped to the unit square.
    pub side: f64,
}

impl Default for ClusterParams {
    fn default() -> Self {
        ClusterParams {
            seed_rate: 10.0,
            peak_rate: 20.0,
            side: 0.1,
        }
    }
}

/// Offspring rate at parent `(x, y)`.
pub fn cluster_rate(params: &ClusterParams, x: f64, y: f64) -> f64 {
    params.peak_rate * (1.0 - (x - y).abs())
}

/// Offspring square around `(x, y)`, clipped to the unit square.
pub fn cluster_square(params: &ClusterParams, x: f64, y: f64) -> Result<Region> {
    let h = params.side / 2.0;
    Region::rect(
        (x - h).max(0.0),
        (y - h).max(0.0),
        (x + h).min(1.0),
        (y + h).min(1.0),
    )
}

pub fn cluster_demo() -> Result<PointProcess> {
    cluster_demo_with(ClusterParams::default())
}

/// Parents from a Poisson process; each parent `(x, y)` spawns
/// `Poisson(cluster_rate)` children uniform on its cluster square.
pub fn cluster_demo_with(params: ClusterParams) -> Result<PointProcess> {
    if !(params.peak_rate >= 0.0 && params.side > 0.0 && params.side <= 1.0) {
        return Err(Error::invalid(format!("bad cluster parameters {params:?}")));
    }
    let parents = poisson_pp(params.seed_rate, &Region::all(Universe::UnitSquare))?;
    let children = Kernel::new(Universe::UnitSquare, move |p| {
        let Point::Real2(x, y) = *p else {
            unreachable!("parents live on the unit square")
        };
        let square = cluster_square(&params, x, y)?;
        from_poisson(cluster_rate(&params, x, y))?.bind(&Kernel::constant(uniform_point(&square)?))
    });
    parents.bind(&children)
}

/// `n` draws using streams `s.child(0..n)`.
pub fn draws(alpha: &PointProcess, n: u64, s: SeedState) -> Result<Vec<Bag<Point>>> {
    (0..n)
        .into_par_iter()
        .map(|i| alpha.sample(s.child(i)))
        .collect()
}

/// Counts in `region` over `n` draws, in replicate order.
pub fn sample_counts(
    alpha: &PointProcess,
    region: &Region,
    n: u64,
    s: SeedState,
) -> Result<Vec<usize>> {
    (0..n)
        .into_par_iter()
        .map(|i| alpha.sample(s.child(i))?.count_in(region))
        .collect()
}

/// Fraction of `n` draws with exactly `k` points in `region`.
pub fn empirical_count_prob(
    alpha: &PointProcess,
    region: &Region,
    k: usize,
    n: u64,
    s: SeedState,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("need at least one draw"));
    }
    let counts = sample_counts(alpha, region, n, s)?;
    Ok(counts.iter().filter(|c| **c == k).count() as f64 / n as f64)
}

/// Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
    pub n: u64,
}

/// Mean count in `region` over `n` draws.
pub fn intensity_empirical(
    alpha: &PointProcess,
    region: &Region,
    n: u64,
    s: SeedState,
) -> Result<Estimate> {
    if n == 0 {
        return Err(Error::invalid("need at least one draw"));
    }
    let counts = sample_counts(alpha, region, n, s)?;
    Ok(estimate(&counts))
}

pub(crate) fn estimate(counts: &[usize]) -> Estimate {
    let n = counts.len() as f64;
    let mean = counts.iter().map(|&c| c as f64).sum::<f64>() / n;
    let var = if counts.len() > 1 {
        counts
            .iter()
            .map(|&c| (c as f64 - mean).powi(2))
            .sum::<f64>()
            / (n - 1.0)
    } else {
        0.0
    };
    Estimate {
        mean,
        stderr: (var / n).sqrt(),
        n: counts.len() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Region {
        Region::all(Universe::UnitSquare)
    }

    #[test]
    fn unit_draws_and_counts() {
        let x = Point::Nat(2);
        let p = pp_unit(x);
        let u = Region::points(Universe::Nats, [x]).unwrap();
        for i in 0..5 {
            assert_eq!(p.sample(SeedState::new(i)).unwrap(), Bag::unit(x));
        }
        assert_eq!(
            empirical_count_prob(&p, &u, 1, 50, SeedState::new(1)).unwrap(),
            1.0
        );
        let e = intensity_empirical(&p, &u, 50, SeedState::new(1)).unwrap();
        assert_eq!((e.mean, e.stderr), (1.0, 0.0));
        assert_eq!(p.intensity().eval(&u).unwrap(), 1.0);
        assert_eq!(p.exact().unwrap().unwrap(), &gb::unit(x));
    }

    #[test]
    fn nat_dist_process() {
        let p = from_nat_dist(&DiscreteDist::point(3)).unwrap();
        assert_eq!(p.sample(SeedState::new(9)).unwrap().len(), 3);
        let d = DiscreteDist::new([(0u64, 0.25), (1, 0.5), (4, 0.25)]).unwrap();
        let q = from_nat_dist(&d).unwrap();
        let star = Region::all(Universe::Unit1);
        let exact = q.exact().unwrap().unwrap();
        for (k, w) in d.iter() {
            assert_eq!(gb::prob_count(exact, &star, *k as usize).unwrap(), *w);
        }
        assert_eq!(q.intensity().eval(&star).unwrap(), d.expectation().unwrap());
    }

    #[test]
    fn coin_count_frequency() {
        let coin = from_nat_dist(&DiscreteDist::uniform([0, 1]).unwrap()).unwrap();
        let star = Region::all(Universe::Unit1);
        let f = empirical_count_prob(&coin, &star, 1, 10_000, SeedState::new(3)).unwrap();
        assert!((f - 0.5).abs() <= 3.0 * 0.005);
    }

    #[test]
    fn uniform_point_lands_proportionally() {
        let region = Region::rects([
            crate::region::Rect {
                x0: 0.0,
                y0: 0.0,
                x1: 0.5,
                y1: 0.5,
            },
            crate::region::Rect {
                x0: 0.5,
                y0: 0.5,
                x1: 1.0,
                y1: 1.0,
            },
        ])
        .unwrap();
        let p = uniform_point(&region).unwrap();
        let w = Region::rect(0.0, 0.0, 0.25, 0.5).unwrap();
        let n = 10_000;
        let counts = sample_counts(&p, &region, n, SeedState::new(4)).unwrap();
        assert!(counts.iter().all(|c| *c == 1));
        let f = empirical_count_prob(&p, &w, 1, n, SeedState::new(4)).unwrap();
        let expect = w.measure() / region.measure();
        let se = (expect * (1.0 - expect) / n as f64).sqrt();
        assert!((f - expect).abs() <= 3.0 * se, "{f} vs {expect}");
        assert!((p.intensity().eval(&w).unwrap() - expect).abs() < 1e-15);
        assert!(uniform_point(&Region::rect(0.0, 0.0, 0.0, 1.0).unwrap()).is_err());
        assert!(uniform_point(&Region::interval(0.0, 1.0).unwrap().complement()).is_err());
    }

    #[test]
    fn uniform_on_intervals() {
        let region = Region::intervals([(-2.0, -1.0), (3.0, 3.5)]).unwrap();
        let p = uniform_point(&region).unwrap();
        for b in draws(&p, 200, SeedState::new(5)).unwrap() {
            assert!(region.contains(&b.as_slice()[0]).unwrap());
        }
    }

    #[test]
    fn poisson_process_intensity_and_mean() {
        let p = poisson_pp(10.0, &square()).unwrap();
        let w = Region::rect(0.0, 0.0, 0.5, 0.5).unwrap();
        assert_eq!(p.intensity().eval(&w).unwrap(), 2.5);
        assert!(p.exact().unwrap().is_none());
        let e = intensity_empirical(&p, &square(), 10_000, SeedState::new(6)).unwrap();
        assert!((e.mean - 10.0).abs() <= 3.0 * (10.0f64 / 1e4).sqrt());
    }

    #[test]
    fn draws_are_reproducible_and_parallelism_free() {
        let p = poisson_pp(5.0, &square()).unwrap();
        let a = draws(&p, 64, SeedState::new(8)).unwrap();
        let b: Vec<_> = (0..64)
            .map(|i| p.sample(SeedState::new(8).child(i)).unwrap())
            .collect();
        assert_eq!(a, b);
    }

    #[test]
    fn thinning_extremes_and_coupling() {
        let base = poisson_pp(6.0, &square()).unwrap();
        let all = thin_const(&base, 1.0).unwrap();
        let none = thin_const(&base, 0.0).unwrap();
        let half = thin_const(&base, 0.5).unwrap();
        for i in 0..200 {
            let s = SeedState::new(11).child(i);
            let full = base.sample(s.child(0)).unwrap();
            assert_eq!(all.sample(s).unwrap(), full);
            assert!(none.sample(s).unwrap().is_empty());
            assert!(half.sample(s).unwrap().len() <= full.len());
        }
        let w = Region::rect(0.0, 0.0, 0.5, 1.0).unwrap();
        assert!((half.intensity().eval(&w).unwrap() - 1.5).abs() < 1e-12);
        assert!(thin_const(&base, 1.5).is_err());
    }

    #[test]
    fn thinning_keeps_exact_branch() {
        let n = from_poisson(2.0).unwrap();
        let t = thin_const(&n, 1.0).unwrap();
        let tv = t
            .exact()
            .unwrap()
            .unwrap()
            .total_variation(n.exact().unwrap().unwrap());
        assert!(tv < 1e-12);
    }

    #[test]
    fn displacement() {
        let region = Region::interval(0.0, 2.0).unwrap();
        let alpha = uniform_point(&region).unwrap();
        let same = displace(&alpha, &pp_unit(Point::Real(0.0))).unwrap();
        let s = SeedState::new(2);
        assert_eq!(same.sample(s).unwrap().len(), 1);
        let shifted = displace(&alpha, &pp_unit(Point::Real(3.0))).unwrap();
        let probe = Region::interval(3.5, 4.0).unwrap();
        let back = Region::interval(0.5, 1.0).unwrap();
        assert_eq!(
            shifted.intensity().eval(&probe).unwrap(),
            alpha.intensity().eval(&back).unwrap()
        );
        let e = intensity_empirical(&shifted, &probe, 10_000, s).unwrap();
        assert!((e.mean - 0.25).abs() <= 4.0 * e.stderr);
        let two = from_poisson(2.0)
            .unwrap()
            .bind(&Kernel::constant(uniform_point(&region).unwrap()))
            .unwrap();
        let bad = displace(&alpha, &two).unwrap();
        assert!((0..50).any(|i| bad.sample(SeedState::new(i)).is_err()));
        assert!(displace(&pp_unit(Point::Nat(0)), &alpha).is_err());
    }

    #[test]
    fn cluster_zero_rate_is_empty() {
        let p = cluster_demo_with(ClusterParams {
            peak_rate: 0.0,
            ..ClusterParams::default()
        })
        .unwrap();
        for i in 0..100 {
            assert!(p.sample(SeedState::new(i)).unwrap().is_empty());
        }
        assert_eq!(p.intensity().eval(&square()).unwrap(), 0.0);
    }

    #[test]
    fn cluster_squares_clip() {
        let prm = ClusterParams::default();
        let r = cluster_square(&prm, 0.01, 0.5).unwrap();
        assert!((r.measure() - 0.06 * 0.1).abs() < 1e-12);
        assert_eq!(cluster_rate(&prm, 0.3, 0.3), 20.0);
    }
}
