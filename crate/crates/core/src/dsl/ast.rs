use std::fmt;

use serde::Serialize;

use crate::space::real_literal;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum Expr {
    Unit {
        point: PointLit,
    },
    FromDist {
        dist: DistLit,
    },
    Uniform {
        region: RegionLit,
    },
    Poisson {
        rate: f64,
        region: RegionLit,
    },
    Bind {
        source: Box<Expr>,
        var: String,
        body: Box<Expr>,
    },
    Thin {
        source: Box<Expr>,
        keep: f64,
    },
    Displace {
        source: Box<Expr>,
        shift: Box<Expr>,
    },
    ClusterDemo,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointLit {
    Star,
    Nat(u64),
    Real(f64),
    Pair(f64, f64),
    /// A variable bound by an enclosing `bind`.
    Var(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "dist", rename_all = "snake_case")]
pub enum DistLit {
    Poisson {
        rate: f64,
    },
    /// `(value, probability)` pairs in source order.
    Pmf {
        entries: Vec<(f64, f64)>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "region", rename_all = "snake_case")]
pub enum RegionLit {
    Rect { x0: f64, y0: f64, x1: f64, y1: f64 },
    Interval { a: f64, b: f64 },
    Set { points: Vec<PointLit> },
    Complement { of: Box<RegionLit> },
    All,
}

impl Expr {
    /// Whether `var` occurs free.
    pub fn mentions(&self, var: &str) -> bool {
        match self {
            Expr::Unit { point } => matches!(point, PointLit::Var(v) if v == var),
            Expr::FromDist { .. }
            | Expr::Uniform { .. }
            | Expr::Poisson { .. }
            | Expr::ClusterDemo => false,
            Expr::Bind {
                source,
                var: v,
                body,
            } => source.mentions(var) || (v != var && body.mentions(var)),
            Expr::Thin { source, .. } => source.mentions(var),
            Expr::Displace { source, shift } => source.mentions(var) || shift.mentions(var),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Unit { point } => write!(f, "unit({point})"),
            Expr::FromDist { dist } => write!(f, "fromdist({dist})"),
            Expr::Uniform { region } => write!(f, "uniform({region})"),
            Expr::Poisson { rate, region } => write!(f, "poisson({rate}, {region})"),
            Expr::Bind { source, var, body } => write!(f, "bind({source}, {var} -> {body})"),
            Expr::Thin { source, keep } => write!(f, "thin({source}, {keep})"),
            Expr::Displace { source, shift } => write!(f, "displace({source}, {shift})"),
            Expr::ClusterDemo => f.write_str("cluster_demo()"),
        }
    }
}

impl fmt::Display for PointLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointLit::Star => f.write_str("star"),
            PointLit::Nat(n) => write!(f, "{n}"),
            PointLit::Real(x) => f.write_str(&real_literal(*x)),
            PointLit::Pair(x, y) => write!(f, "({x},{y})"),
            PointLit::Var(v) => f.write_str(v),
        }
    }
}

impl fmt::Display for DistLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistLit::Poisson { rate } => write!(f, "poisson({rate})"),
            DistLit::Pmf { entries } => {
                let items: Vec<String> = entries.iter().map(|(k, p)| format!("{k}:{p}")).collect();
                write!(f, "pmf{{{}}}", items.join(","))
            }
        }
    }
}

impl fmt::Display for RegionLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionLit::Rect { x0, y0, x1, y1 } => write!(f, "rect({x0},{y0},{x1},{y1})"),
            RegionLit::Interval { a, b } => write!(f, "interval({a},{b})"),
            RegionLit::Set { points } => {
                let items: Vec<String> = points.iter().map(PointLit::to_string).collect();
                write!(f, "set{{{}}}", items.join(","))
            }
            RegionLit::Complement { of } => write!(f, "complement({of})"),
            RegionLit::All => f.write_str("all"),
        }
    }
}
