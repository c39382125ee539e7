//! The pipeline language.
//!
//! ```text
//! expr   := "unit" "(" point ")" | "fromdist" "(" dist ")" | "uniform" "(" region ")"
//!         | "poisson" "(" number "," region ")" | "bind" "(" expr "," ident "->" expr ")"
//!         | "thin" "(" expr "," number ")" | "displace" "(" expr "," expr ")"
//!         | "cluster_demo" "(" ")"
//! dist   := "poisson" "(" number ")" | "pmf" "{" number ":" number {"," number ":" number} "}"
//! region := "rect" "(" number "," number "," number "," number ")" | "interval" "(" number "," number ")"
//!         | "set" "{" point {"," point} "}" | "complement" "(" region ")" | "all"
//! point  := "star" | natural | number | "(" number "," number ")" | ident
//! ```
//!
//! Numbers are plain decimals with an optional leading `-`. A point written as
//! an identifier refers to the variable of an enclosing `bind`.

mod ast;
mod check;
mod lexer;
mod parser;

use std::fmt;

pub use ast::{DistLit, Expr, PointLit, RegionLit};
pub use check::{build, resolve_region, typecheck};
pub use parser::{parse, parse_region};

use crate::error::Result;
use crate::process::PointProcess;

/// A syntax error with its 1-based position.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
    /// Tokens that would have been accepted at this position.
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at line {}, column {}: {}",
            self.line, self.col, self.message
        )
    }
}

impl std::error::Error for ParseError {}

/// Parses, checks and builds a pipeline.
pub fn compile(src: &str) -> Result<PointProcess> {
    build(&parse(src)?)
}
