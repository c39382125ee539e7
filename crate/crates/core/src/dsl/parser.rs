use super::ast::{DistLit, Expr, PointLit, RegionLit};
use super::lexer::{lex, Spanned, Tok};
use super::ParseError;

const EXPR_START: &[&str] = &[
    "unit",
    "fromdist",
    "uniform",
    "poisson",
    "bind",
    "thin",
    "displace",
    "cluster_demo",
];
const REGION_START: &[&str] = &["rect", "interval", "set", "complement", "all"];
const POINT_START: &[&str] = &["star", "a number", "`(`", "a variable"];

/// Parses a whole pipeline expression.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Parses a standalone region literal.
pub fn parse_region(src: &str) -> Result<RegionLit, ParseError> {
    let mut p = Parser::new(src)?;
    let r = p.region()?;
    p.finish()?;
    Ok(r)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(src)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        let t = self.peek();
        let message = match expected {
            [one] => format!("expected {one}, found {}", t.tok),
            _ => format!("expected one of {}, found {}", expected.join(", "), t.tok),
        };
        Err(ParseError {
            line: t.line,
            col: t.col,
            message,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.peek().tok == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(&[&tok.to_string()])
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.peek().tok == Tok::Eof {
            Ok(())
        } else {
            self.fail(&["end of input"])
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => self.fail(&["an identifier"]),
        }
    }

    fn number(&mut self) -> Result<f64, ParseError> {
        match self.peek().tok {
            Tok::Number { value, .. } => {
                self.bump();
                Ok(value)
            }
            _ => self.fail(&["a number"]),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let head = match &self.peek().tok {
            Tok::Ident(s) if EXPR_START.contains(&s.as_str()) => s.clone(),
            _ => return self.fail(EXPR_START),
        };
        self.bump();
        self.expect(Tok::LParen)?;
        let e = match head.as_str() {
            "unit" => Expr::Unit {
                point: self.point()?,
            },
            "fromdist" => Expr::FromDist { dist: self.dist()? },
            "uniform" => Expr::Uniform {
                region: self.region()?,
            },
            "poisson" => {
                let rate = self.number()?;
                self.expect(Tok::Comma)?;
                Expr::Poisson {
                    rate,
                    region: self.region()?,
                }
            }
            "bind" => {
                let source = Box::new(self.expr()?);
                self.expect(Tok::Comma)?;
                let var = self.ident()?;
                self.expect(Tok::Arrow)?;
                Expr::Bind {
                    source,
                    var,
                    body: Box::new(self.expr()?),
                }
            }
            "thin" => {
                let source = Box::new(self.expr()?);
                self.expect(Tok::Comma)?;
                Expr::Thin {
                    source,
                    keep: self.number()?,
                }
            }
            "displace" => {
                let source = Box::new(self.expr()?);
                self.expect(Tok::Comma)?;
                Expr::Displace {
                    source,
                    shift: Box::new(self.expr()?),
                }
            }
            "cluster_demo" => Expr::ClusterDemo,
            _ => unreachable!(),
        };
        self.expect(Tok::RParen)?;
        Ok(e)
    }

    fn dist(&mut self) -> Result<DistLit, ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) if s == "poisson" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let rate = self.number()?;
                self.expect(Tok::RParen)?;
                Ok(DistLit::Poisson { rate })
            }
            Tok::Ident(s) if s == "pmf" => {
                self.bump();
                self.expect(Tok::LBrace)?;
                let mut entries = Vec::new();
                loop {
                    let k = self.number()?;
                    self.expect(Tok::Colon)?;
                    entries.push((k, self.number()?));
                    match self.peek().tok {
                        Tok::Comma => {
                            self.bump();
                        }
                        Tok::RBrace => break,
                        _ => return self.fail(&["`,`", "`}`"]),
                    }
                }
                self.bump();
                Ok(DistLit::Pmf { entries })
            }
            _ => self.fail(&["poisson", "pmf"]),
        }
    }

    fn region(&mut self) -> Result<RegionLit, ParseError> {
        let head = match &self.peek().tok {
            Tok::Ident(s) if REGION_START.contains(&s.as_str()) => s.clone(),
            _ => return self.fail(REGION_START),
        };
        self.bump();
        match head.as_str() {
            "all" => Ok(RegionLit::All),
            "set" => {
                self.expect(Tok::LBrace)?;
                let mut points = vec![self.point()?];
                loop {
                    match self.peek().tok {
                        Tok::Comma => {
                            self.bump();
                            points.push(self.point()?);
                        }
                        Tok::RBrace => break,
                        _ => return self.fail(&["`,`", "`}`"]),
                    }
                }
                self.bump();
                Ok(RegionLit::Set { points })
            }
            _ => {
                self.expect(Tok::LParen)?;
                let r = match head.as_str() {
                    "rect" => {
                        let x0 = self.number()?;
                        self.expect(Tok::Comma)?;
                        let y0 = self.number()?;
                        self.expect(Tok::Comma)?;
                        let x1 = self.number()?;
                        self.expect(Tok::Comma)?;
                        RegionLit::Rect {
                            x0,
                            y0,
                            x1,
                            y1: self.number()?,
                        }
                    }
                    "interval" => {
                        let a = self.number()?;
                        self.expect(Tok::Comma)?;
                        RegionLit::Interval {
                            a,
                            b: self.number()?,
                        }
                    }
                    "complement" => RegionLit::Complement {
                        of: Box::new(self.region()?),
                    },
                    _ => unreachable!(),
                };
                self.expect(Tok::RParen)?;
                Ok(r)
            }
        }
    }

    fn point(&mut self) -> Result<PointLit, ParseError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Ident(s) => {
                self.bump();
                Ok(if s == "star" {
                    PointLit::Star
                } else {
                    PointLit::Var(s)
                })
            }
            Tok::Number {
                value,
                integral,
                text,
            } => {
                self.bump();
                if integral {
                    text.parse().map(PointLit::Nat).map_err(|_| ParseError {
                        line: t.line,
                        col: t.col,
                        message: format!("natural number `{text}` is too large"),
                        expected: Vec::new(),
                    })
                } else {
                    Ok(PointLit::Real(value))
                }
            }
            Tok::LParen => {
                self.bump();
                let x = self.number()?;
                self.expect(Tok::Comma)?;
                let y = self.number()?;
                self.expect(Tok::RParen)?;
                Ok(PointLit::Pair(x, y))
            }
            _ => self.fail(POINT_START),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn poisson_pipeline() {
        let e = parse("poisson(10, rect(0,0,1,1))").unwrap();
        assert_eq!(
            e,
            Expr::Poisson {
                rate: 10.0,
                region: RegionLit::Rect {
                    x0: 0.0,
                    y0: 0.0,
                    x1: 1.0,
                    y1: 1.0
                }
            }
        );
    }

    #[test]
    fn compound_pipeline() {
        let e = parse("bind(fromdist(poisson(3)), s -> fromdist(pmf{1:0.5,2:0.5}))").unwrap();
        let Expr::Bind { source, var, body } = e else {
            panic!()
        };
        assert_eq!(
            *source,
            Expr::FromDist {
                dist: DistLit::Poisson { rate: 3.0 }
            }
        );
        assert_eq!(var, "s");
        assert_eq!(
            *body,
            Expr::FromDist {
                dist: DistLit::Pmf {
                    entries: vec![(1.0, 0.5), (2.0, 0.5)]
                }
            }
        );
    }

    #[test]
    fn missing_comma() {
        let e = parse("poisson(10 rect(0,0,1,1))").unwrap_err();
        assert_eq!((e.line, e.col), (1, 12));
        assert_eq!(e.expected, vec!["`,`".to_string()]);
    }

    #[test]
    fn other_errors() {
        let e = parse("poison(1, all)").unwrap_err();
        assert_eq!(e.col, 1);
        assert!(e.expected.contains(&"poisson".to_string()));
        assert!(parse("unit(star) unit(star)").is_err());
        assert!(parse("thin(unit(star))").is_err());
        assert!(parse("fromdist(pmf{})").is_err());
        assert!(parse("unit(99999999999999999999999)").is_err());
        assert!(parse_region("set{}").is_err());
    }

    #[test]
    fn points() {
        let p = |s: &str| match parse(&format!("unit({s})")).unwrap() {
            Expr::Unit { point } => point,
            _ => unreachable!(),
        };
        assert_eq!(p("star"), PointLit::Star);
        assert_eq!(p("6"), PointLit::Nat(6));
        assert_eq!(p("6.0"), PointLit::Real(6.0));
        assert_eq!(p("-2"), PointLit::Real(-2.0));
        assert_eq!(p("(0.5, 0.25)"), PointLit::Pair(0.5, 0.25));
        assert_eq!(p("x"), PointLit::Var("x".into()));
    }

    fn num() -> impl Strategy<Value = f64> {
        prop_oneof![
            (0u32..100).prop_map(f64::from),
            (-1000i32..1000).prop_map(|i| f64::from(i) / 8.0),
            -1e6f64..1e6,
        ]
    }

    fn point() -> impl Strategy<Value = PointLit> {
        prop_oneof![
            Just(PointLit::Star),
            (0u64..1000).prop_map(PointLit::Nat),
            num().prop_map(PointLit::Real),
            (num(), num()).prop_map(|(x, y)| PointLit::Pair(x, y)),
            "[a-z][a-z0-9_]{0,4}"
                .prop_filter("reserved", |s| s != "star")
                .prop_map(PointLit::Var),
        ]
    }

    fn region() -> impl Strategy<Value = RegionLit> {
        let leaf = prop_oneof![
            Just(RegionLit::All),
            (num(), num(), num(), num()).prop_map(|(x0, y0, x1, y1)| RegionLit::Rect {
                x0,
                y0,
                x1,
                y1
            }),
            (num(), num()).prop_map(|(a, b)| RegionLit::Interval { a, b }),
            prop::collection::vec(point(), 1..4).prop_map(|points| RegionLit::Set { points }),
        ];
        leaf.prop_recursive(2, 4, 1, |inner| {
            inner.prop_map(|r| RegionLit::Complement { of: Box::new(r) })
        })
    }

    fn expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            point().prop_map(|point| Expr::Unit { point }),
            num().prop_map(|rate| Expr::FromDist {
                dist: DistLit::Poisson { rate }
            }),
            prop::collection::vec((num(), num()), 1..4).prop_map(|entries| Expr::FromDist {
                dist: DistLit::Pmf { entries }
            }),
            region().prop_map(|region| Expr::Uniform { region }),
            (num(), region()).prop_map(|(rate, region)| Expr::Poisson { rate, region }),
            Just(Expr::ClusterDemo),
        ];
        leaf.prop_recursive(3, 16, 2, |inner| {
            prop_oneof![
                (inner.clone(), "[a-z]{1,3}", inner.clone()).prop_filter_map(
                    "reserved",
                    |(s, v, b)| {
                        (v != "star").then(|| Expr::Bind {
                            source: Box::new(s),
                            var: v,
                            body: Box::new(b),
                        })
                    }
                ),
                (inner.clone(), num()).prop_map(|(s, keep)| Expr::Thin {
                    source: Box::new(s),
                    keep
                }),
                (inner.clone(), inner).prop_map(|(s, d)| Expr::Displace {
                    source: Box::new(s),
                    shift: Box::new(d)
                }),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_then_parse(e in expr()) {
            let printed = e.to_string();
            prop_assert_eq!(parse(&printed).unwrap(), e, "{}", printed);
        }

        #[test]
        fn region_round_trip(r in region()) {
            prop_assert_eq!(parse_region(&r.to_string()).unwrap(), r);
        }
    }
}
