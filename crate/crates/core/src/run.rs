//! Pipeline execution behind the command-line front end.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::bag::Bag;
use crate::dsl::{self, Expr};
use crate::error::{Error, Result};
use crate::process::{draws, intensity_empirical, PointProcess};
use crate::seed::SeedState;
use crate::space::{Point, Universe};
use crate::verify::{self, Report, Suite};

/// Default seed when neither a flag nor `POINTPROC_SEED` is given.
pub const DEFAULT_SEED: u64 = 1;
/// Default number of draws for intensity reports.
pub const DEFAULT_INTENSITY_DRAWS: u64 = 10_000;

pub const PANEL: f64 = 500.0;
pub const PANEL_GAP: f64 = 20.0;
pub const STACK_OFFSET: f64 = 10.0;
const BASELINE: f64 = 450.0;
const MARGIN: f64 = 25.0;
const RADIUS: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Svg,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "svg" => Ok(Format::Svg),
            "json" => Ok(Format::Json),
            _ => Err(Error::invalid(format!(
                "unknown format `{s}` (expected csv, svg or json)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub draws: u64,
    pub format: Format,
}

impl RunConfig {
    pub fn new(seed: u64, draws: u64, format: Format) -> Result<Self> {
        if draws == 0 {
            return Err(Error::invalid("need at least one draw"));
        }
        Ok(RunConfig {
            seed,
            draws,
            format,
        })
    }
}

/// A checked pipeline ready to run.
#[derive(Clone)]
pub struct Pipeline {
    pub ast: Expr,
    pub universe: Universe,
    pub process: PointProcess,
}

impl Pipeline {
    pub fn compile(src: &str) -> Result<Pipeline> {
        let ast = dsl::parse(src)?;
        let universe = dsl::typecheck(&ast)?;
        let process = dsl::build(&ast)?;
        Ok(Pipeline {
            ast,
            universe,
            process,
        })
    }
}

/// `cfg.draws` draws, serialized in `cfg.format`. Draw `i` uses stream `child(i)`.
pub fn run_draws(p: &Pipeline, cfg: &RunConfig) -> Result<String> {
    let bags = draws(&p.process, cfg.draws, SeedState::new(cfg.seed))?;
    Ok(match cfg.format {
        Format::Csv => draws_csv(p.universe, &bags),
        Format::Json => draws_json(&bags),
        Format::Svg => draws_svg(p.universe, &bags),
    })
}

pub fn draws_csv(u: Universe, bags: &[Bag<Point>]) -> String {
    let mut out = String::from(if u == Universe::UnitSquare {
        "draw,x,y\n"
    } else {
        "draw,x\n"
    });
    for (i, b) in bags.iter().enumerate() {
        for x in b {
            let _ = writeln!(out, "{i},{}", x.csv_fields());
        }
    }
    out
}

fn point_json(p: &Point) -> Value {
    match p {
        Point::Star => json!("star"),
        Point::Nat(n) => json!(n),
        Point::Real(x) => json!(x),
        Point::Real2(x, y) => json!([x, y]),
    }
}

pub fn draws_json(bags: &[Bag<Point>]) -> String {
    let rows: Vec<Value> = bags
        .iter()
        .enumerate()
        .map(|(i, b)| json!({"draw": i, "points": b.iter().map(point_json).collect::<Vec<_>>()}))
        .collect();
    let mut s = serde_json::to_string_pretty(&rows).expect("plain JSON");
    s.push('\n');
    s
}

/// Side-by-side 500×500 panels, one per draw. Unit-square draws are scatter
/// plots; other spaces use a number line with repeated values stacked upward.
pub fn draws_svg(u: Universe, bags: &[Bag<Point>]) -> String {
    let n = bags.len().max(1) as f64;
    let width = n * PANEL + (n - 1.0) * PANEL_GAP;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{PANEL:.0}" viewBox="0 0 {width:.0} {PANEL:.0}">"#
    );
    let scale = line_scale(u, bags);
    for (i, b) in bags.iter().enumerate() {
        let left = i as f64 * (PANEL + PANEL_GAP);
        let _ = writeln!(s, r#"<g transform="translate({left:.3},0)">"#);
        let _ = writeln!(
            s,
            r#"<rect x="0" y="0" width="{PANEL:.0}" height="{PANEL:.0}" fill="white" stroke="black"/>"#
        );
        if u == Universe::UnitSquare {
            for p in b {
                if let Point::Real2(x, y) = p {
                    circle(&mut s, x * PANEL, (1.0 - y) * PANEL);
                }
            }
        } else {
            let _ = writeln!(
                s,
                r#"<line x1="{MARGIN:.3}" y1="{BASELINE:.3}" x2="{:.3}" y2="{BASELINE:.3}" stroke="gray"/>"#,
                PANEL - MARGIN
            );
            // bags are sorted, so equal points are adjacent
            let mut prev: Option<&Point> = None;
            let mut level = 0.0;
            for p in b {
                level = if prev == Some(p) { level + 1.0 } else { 0.0 };
                prev = Some(p);
                circle(&mut s, scale.x(p), BASELINE - STACK_OFFSET * (level + 1.0));
            }
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    s
}

fn circle(s: &mut String, cx: f64, cy: f64) {
    let _ = writeln!(
        s,
        r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="{RADIUS:.0}" fill="black"/>"#
    );
}

struct LineScale {
    lo: f64,
    hi: f64,
}

impl LineScale {
    fn x(&self, p: &Point) -> f64 {
        let v = match p {
            Point::Star => return PANEL / 2.0,
            Point::Nat(n) => *n as f64,
            Point::Real(x) => *x,
            Point::Real2(x, _) => *x,
        };
        MARGIN + (v - self.lo) / (self.hi - self.lo) * (PANEL - 2.0 * MARGIN)
    }
}

/// Shared axis range over all draws, so panels are comparable.
fn line_scale(u: Universe, bags: &[Bag<Point>]) -> LineScale {
    let vals = bags.iter().flat_map(|b| b.iter()).filter_map(|p| match p {
        Point::Nat(n) => Some(*n as f64),
        Point::Real(x) => Some(*x),
        _ => None,
    });
    let (mut lo, mut hi) = vals.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
        (a.min(v), b.max(v))
    });
    if u == Universe::Nats {
        lo = 0.0;
        hi = hi.max(1.0);
    }
    if !lo.is_finite() {
        (lo, hi) = (0.0, 1.0);
    }
    if hi <= lo {
        (lo, hi) = (lo - 1.0, hi + 1.0);
    }
    LineScale { lo, hi }
}

/// One row of an intensity report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntensityRow {
    pub region: String,
    pub exact_or_quadrature: f64,
    pub method: &'static str,
    pub empirical: f64,
    pub n: u64,
    pub stderr: f64,
    pub agree: bool,
}

/// Compositional intensity against the Monte Carlo mean count for each region.
/// All regions are checked before any sampling.
pub fn run_intensity(
    p: &Pipeline,
    regions: &[String],
    n: u64,
    seed: u64,
) -> Result<Vec<IntensityRow>> {
    if n == 0 {
        return Err(Error::invalid("need at least one draw"));
    }
    if regions.is_empty() {
        return Err(Error::invalid("at least one --region is required"));
    }
    let m = p.process.intensity();
    let method = if m.is_closed_form() {
        "closed_form"
    } else {
        "quadrature"
    };
    let mut resolved = Vec::new();
    for src in regions {
        let r = dsl::resolve_region(&dsl::parse_region(src)?, Some(p.universe))?;
        let value = m.eval(&r)?;
        resolved.push((src.trim().to_string(), r, value));
    }
    let mut rows = Vec::new();
    for (i, (name, r, value)) in resolved.into_iter().enumerate() {
        let est = intensity_empirical(&p.process, &r, n, SeedState::new(seed).child(i as u64))?;
        rows.push(IntensityRow {
            region: name,
            exact_or_quadrature: value,
            method,
            empirical: est.mean,
            n,
            stderr: est.stderr,
            agree: (est.mean - value).abs() <= 4.0 * est.stderr + 1e-12,
        });
    }
    Ok(rows)
}

pub fn intensity_json(rows: &[IntensityRow]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("plain JSON");
    s.push('\n');
    s
}

pub fn run_verify(suite: Suite, seed: u64) -> Result<Report> {
    verify::run_suite(suite, seed)
}

pub fn ast_json(e: &Expr) -> String {
    let mut s = serde_json::to_string_pretty(e).expect("plain JSON");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pipe(src: &str) -> Pipeline {
        Pipeline::compile(src).unwrap()
    }

    #[test]
    fn unit_star_csv() {
        let cfg = RunConfig::new(1, 5, Format::Csv).unwrap();
        let out = run_draws(&pipe("unit(star)"), &cfg).unwrap();
        assert_eq!(out, "draw,x\n0,star\n1,star\n2,star\n3,star\n4,star\n");
    }

    #[test]
    fn json_shape() {
        let cfg = RunConfig::new(1, 2, Format::Json).unwrap();
        let out = run_draws(&pipe("unit((0.25,0.5))"), &cfg).unwrap();
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v[1]["draw"], 1);
        assert_eq!(v[0]["points"][0], json!([0.25, 0.5]));
    }

    #[test]
    fn svg_scatter_coordinates() {
        let bag = Bag::from_tuple([Point::Real2(0.25, 0.5)]);
        let svg = draws_svg(Universe::UnitSquare, &[bag.clone(), bag]);
        assert!(svg.contains(r#"width="1020""#));
        assert!(svg.contains(r#"<circle cx="125.000" cy="250.000""#));
        assert!(svg.contains(r#"translate(520.000,0)"#));
    }

    #[test]
    fn svg_number_line_stacks_duplicates() {
        let bag = Bag::from_tuple([Point::Nat(2), Point::Nat(2), Point::Nat(4)]);
        let svg = draws_svg(Universe::Nats, &[bag]);
        assert!(svg.contains(r#"cx="250.000" cy="440.000""#));
        assert!(svg.contains(r#"cx="250.000" cy="430.000""#));
        assert!(svg.contains(r#"cx="475.000" cy="440.000""#));
    }

    #[test]
    fn zero_draws_rejected() {
        assert!(RunConfig::new(1, 0, Format::Csv).is_err());
    }

    #[test]
    fn unit_star_intensity_is_exact() {
        let rows = run_intensity(&pipe("unit(star)"), &["all".into()], 100, 3).unwrap();
        assert_eq!(rows[0].exact_or_quadrature, 1.0);
        assert_eq!(rows[0].empirical, 1.0);
        assert_eq!(rows[0].stderr, 0.0);
        assert!(rows[0].agree);
    }

    #[test]
    fn poisson_quarter_square() {
        let rows = run_intensity(
            &pipe("poisson(10, rect(0,0,1,1))"),
            &["rect(0,0,0.5,0.5)".into()],
            2000,
            1,
        )
        .unwrap();
        assert_eq!(rows[0].exact_or_quadrature, 2.5);
        assert_eq!(rows[0].method, "closed_form");
    }

    #[test]
    fn infinite_region_is_invalid_request() {
        let e = run_intensity(&pipe("unit(3)"), &["complement(set{1})".into()], 10, 1).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn wrong_universe_region() {
        let e = run_intensity(&pipe("unit(star)"), &["interval(0,1)".into()], 10, 1).unwrap_err();
        assert_ne!(e.exit_code(), 0);
    }

    #[test]
    fn determinism() {
        let p = pipe("cluster_demo()");
        let cfg = RunConfig::new(42, 5, Format::Svg).unwrap();
        assert_eq!(run_draws(&p, &cfg).unwrap(), run_draws(&p, &cfg).unwrap());
    }
}
