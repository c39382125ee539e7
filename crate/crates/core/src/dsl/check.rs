//! Universe inference and translation of pipelines into processes.

use std::collections::BTreeMap;

use super::ast::{DistLit, Expr, PointLit, RegionLit};
use crate::dist::{DiscreteDist, MASS_TOLERANCE};
use crate::error::{Error, Result};
use crate::process::{self, Kernel, PointProcess};
use crate::region::Region;
use crate::space::{Point, Universe};

type Env = BTreeMap<String, Universe>;

fn type_err(expr: &impl std::fmt::Display, message: impl Into<String>) -> Error {
    Error::Type {
        expr: expr.to_string(),
        message: message.into(),
    }
}

/// Infers the universe a pipeline draws points from, validating every literal.
pub fn typecheck(e: &Expr) -> Result<Universe> {
    check(e, &Env::new())
}

fn check(e: &Expr, env: &Env) -> Result<Universe> {
    match e {
        Expr::Unit { point } => point_universe(point, env).map_err(|m| type_err(e, m)),
        Expr::FromDist { dist } => {
            nat_dist(dist).map_err(|m| type_err(e, m))?;
            Ok(Universe::Unit1)
        }
        Expr::Uniform { region } => {
            let r = uniform_region(region).map_err(|m| type_err(e, m))?;
            Ok(r.universe())
        }
        Expr::Poisson { rate, region } => {
            if !(*rate > 0.0) {
                return Err(type_err(e, format!("rate must be positive, got {rate}")));
            }
            let r = continuous_region(region).map_err(|m| type_err(e, m))?;
            Ok(r.universe())
        }
        Expr::Bind { source, var, body } => {
            let u = check(source, env)?;
            if var == "star" {
                return Err(type_err(e, "`star` cannot be used as a variable"));
            }
            let mut inner = env.clone();
            inner.insert(var.clone(), u);
            check(body, &inner)
        }
        Expr::Thin { source, keep } => {
            if !(0.0..=1.0).contains(keep) {
                return Err(type_err(
                    e,
                    format!("keep probability {keep} outside [0,1]"),
                ));
            }
            check(source, env)
        }
        Expr::Displace { source, shift } => {
            for part in [source, shift] {
                let u = check(part, env)?;
                if u != Universe::RealLine {
                    return Err(type_err(
                        part.as_ref(),
                        format!("displacement works on the real line, this draws from {u}"),
                    ));
                }
            }
            Ok(Universe::RealLine)
        }
        Expr::ClusterDemo => Ok(Universe::UnitSquare),
    }
}

fn point_universe(p: &PointLit, env: &Env) -> Result<Universe, String> {
    Ok(match p {
        PointLit::Star => Universe::Unit1,
        PointLit::Nat(_) => Universe::Nats,
        PointLit::Real(_) => Universe::RealLine,
        PointLit::Pair(x, y) => {
            if !((0.0..1.0).contains(x) && (0.0..1.0).contains(y)) {
                return Err(format!("({x},{y}) is outside the unit square [0,1)x[0,1)"));
            }
            Universe::UnitSquare
        }
        PointLit::Var(v) => *env
            .get(v)
            .ok_or_else(|| format!("unbound variable `{v}`"))?,
    })
}

fn literal_point(p: &PointLit) -> Result<Point, String> {
    match p {
        PointLit::Star => Ok(Point::Star),
        PointLit::Nat(n) => Ok(Point::Nat(*n)),
        PointLit::Real(x) => Ok(Point::Real(*x)),
        PointLit::Pair(x, y) => Ok(Point::Real2(*x, *y)),
        PointLit::Var(v) => Err(format!("variable `{v}` cannot appear in a region")),
    }
}

fn nat_dist(d: &DistLit) -> Result<DiscreteDist<u64>, String> {
    match d {
        DistLit::Poisson { rate } => {
            if !(*rate > 0.0) {
                return Err(format!("Poisson rate must be positive, got {rate}"));
            }
            DiscreteDist::poisson_trunc(*rate, process::POISSON_EPS).map_err(|e| e.to_string())
        }
        DistLit::Pmf { entries } => {
            let mut out = Vec::new();
            for &(k, p) in entries {
                if !(k >= 0.0 && k.fract() == 0.0 && k <= u32::MAX as f64) {
                    return Err(format!("pmf value {k} is not a natural number"));
                }
                if !(0.0..=1.0).contains(&p) {
                    return Err(format!("pmf weight {p} is not a probability"));
                }
                out.push((k as u64, p));
            }
            let total: f64 = out.iter().map(|(_, p)| p).sum();
            if (total - 1.0).abs() > MASS_TOLERANCE {
                return Err(format!("pmf weights sum to {total}, expected 1"));
            }
            DiscreteDist::new(out).map_err(|e| e.to_string())
        }
    }
}

/// A finite set of points, or a continuous region of finite positive measure.
fn uniform_region(r: &RegionLit) -> Result<Region, String> {
    let region = resolve(r, None).map_err(|e| e.to_string())?;
    if !region.is_complemented() && region.points_body().is_some() {
        return Ok(region);
    }
    continuous_region(r)
}

fn continuous_region(r: &RegionLit) -> Result<Region, String> {
    let region = resolve(r, None).map_err(|e| e.to_string())?;
    let m = region.measure();
    if !matches!(region.universe(), Universe::RealLine | Universe::UnitSquare) {
        return Err(format!(
            "region {r} is not on the real line or the unit square"
        ));
    }
    if !(m.is_finite() && m > 0.0) {
        return Err(format!(
            "region {r} must have finite positive measure, got {m}"
        ));
    }
    Ok(region)
}

/// Turns a region literal into a [`Region`]. `hint` supplies the universe for
/// `all` and for complements that do not determine one.
pub fn resolve_region(r: &RegionLit, hint: Option<Universe>) -> Result<Region> {
    resolve(r, hint)
}

fn resolve(r: &RegionLit, hint: Option<Universe>) -> Result<Region> {
    match r {
        RegionLit::Rect { x0, y0, x1, y1 } => Region::rect(*x0, *y0, *x1, *y1),
        RegionLit::Interval { a, b } => Region::interval(*a, *b),
        RegionLit::Set { points } => {
            let pts = points
                .iter()
                .map(literal_point)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|m| type_err(r, m))?;
            let u = pts[0].universe();
            if let Some(h) = hint {
                if h != u {
                    return Err(Error::UniverseMismatch { left: h, right: u });
                }
            }
            Region::points(u, pts)
        }
        RegionLit::Complement { of } => Ok(resolve(of, hint)?.complement()),
        RegionLit::All => match hint {
            Some(u) => Ok(Region::all(u)),
            None => Err(type_err(
                r,
                "cannot tell which universe `all` refers to here",
            )),
        },
    }
    .and_then(|region| match hint {
        Some(h) if h != region.universe() => Err(Error::UniverseMismatch {
            left: h,
            right: region.universe(),
        }),
        _ => Ok(region),
    })
}

/// Builds the process denoted by a type-checked pipeline.
pub fn build(e: &Expr) -> Result<PointProcess> {
    typecheck(e)?;
    build_in(e, &BTreeMap::new())
}

fn build_in(e: &Expr, vals: &BTreeMap<String, Point>) -> Result<PointProcess> {
    match e {
        Expr::Unit { point } => {
            let p = match point {
                PointLit::Var(v) => vals[v],
                lit => literal_point(lit).map_err(|m| type_err(e, m))?,
            };
            Ok(process::pp_unit(p))
        }
        Expr::FromDist { dist } => match dist {
            DistLit::Poisson { rate } => process::from_poisson(*rate),
            DistLit::Pmf { .. } => {
                process::from_nat_dist(&nat_dist(dist).map_err(|m| type_err(e, m))?)
            }
        },
        Expr::Uniform { region } => {
            let r = resolve(region, None)?;
            match r.points_body() {
                Some(pts) if !r.is_complemented() => {
                    process::from_point_dist(&DiscreteDist::uniform(pts.iter().copied())?)
                }
                _ => process::uniform_point(&r),
            }
        }
        Expr::Poisson { rate, region } => process::poisson_pp(*rate, &resolve(region, None)?),
        Expr::Bind { source, var, body } => {
            let alpha = build_in(source, vals)?;
            let mut env: Env = vals
                .iter()
                .map(|(k, p)| (k.clone(), p.universe()))
                .collect();
            env.insert(var.clone(), alpha.universe());
            let target = check(body, &env)?;
            let kernel = if body.mentions(var) {
                let (body, var, vals) = (body.as_ref().clone(), var.clone(), vals.clone());
                Kernel::new(target, move |x| {
                    let mut vals = vals.clone();
                    vals.insert(var.clone(), *x);
                    build_in(&body, &vals)
                })
            } else {
                Kernel::constant(build_in(body, vals)?)
            };
            alpha.bind(&kernel)
        }
        Expr::Thin { source, keep } => process::thin_const(&build_in(source, vals)?, *keep),
        Expr::Displace { source, shift } => {
            process::displace(&build_in(source, vals)?, &build_in(shift, vals)?)
        }
        Expr::ClusterDemo => process::cluster_demo(),
    }
}
