//! A line-oriented construction language.
//!
//! ```text
//! # MN, CD and UV on a concrete quadrangle
//! point A = (0, 0)
//! point B = (4, 0)
//! line  AC = join(A, C)
//! point M = meet(BV, AC)
//! assert concurrent(MN, CD, UV)
//! ```
//!
//! Declarations bind a point, line or conic to a fresh name; assertions
//! test incidence relations exactly. See [`parse`], [`evaluate`] and
//! [`format_diagnostics`].

mod eval;
mod lexer;
mod parser;

use std::fmt;

use thiserror::Error;

use crate::rational::{format_rational, Rational};

pub use eval::{evaluate, format_diagnostics, AssertionResult, Environment, Evaluation, Value};
pub use parser::parse;

/// 1-based line and column plus byte offset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
    pub offset: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Point,
    Line,
    Conic,
}

impl Kind {
    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Point => "point",
            Kind::Line => "line",
            Kind::Conic => "conic",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Coords(Rational, Rational),
    Meet(String, String),
    InfPoint(String),
    Harmonic(String, String, String),
    Join(String, String),
    Omega,
    LineCoords([Rational; 3]),
    Polar(String, String),
    Through([String; 5]),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Assertion {
    Collinear(Vec<String>),
    Concurrent(Vec<String>),
    On(String, String),
    Parallel(String, String),
    Equal(String, String),
    Harmonic([String; 4]),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt {
    Decl { kind: Kind, name: String, expr: Expr },
    Assert(Assertion),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Script {
    pub statements: Vec<Stmt>,
    /// Start position of each statement.
    pub source_map: Vec<Pos>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{pos}: syntax error: expected {}, found {found}", expected.join(" or "))]
    Syntax { pos: Pos, expected: Vec<String>, found: String },
    #[error("{pos}: '{name}' used before declaration")]
    UseBeforeDecl { pos: Pos, name: String },
    #[error("{pos}: '{name}' is already declared")]
    Redeclaration { pos: Pos, name: String },
    #[error("{pos}: {what} takes {expected} arguments, found {found}")]
    ArityMismatch { pos: Pos, what: String, expected: String, found: usize },
    #[error("{pos}: '{name}' is a {found}, expected a {expected}")]
    TypeMismatch { pos: Pos, name: String, expected: String, found: Kind },
    #[error("{pos}: {message}")]
    Evaluation { pos: Pos, message: String },
}

impl DslError {
    pub fn pos(&self) -> Pos {
        match self {
            DslError::Syntax { pos, .. }
            | DslError::UseBeforeDecl { pos, .. }
            | DslError::Redeclaration { pos, .. }
            | DslError::ArityMismatch { pos, .. }
            | DslError::TypeMismatch { pos, .. }
            | DslError::Evaluation { pos, .. } => *pos,
        }
    }
}

fn r(v: &Rational) -> String {
    format_rational(v)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Coords(x, y) => write!(f, "({}, {})", r(x), r(y)),
            Expr::Meet(a, b) => write!(f, "meet({a}, {b})"),
            Expr::InfPoint(a) => write!(f, "infpoint({a})"),
            Expr::Harmonic(a, b, c) => write!(f, "harmonic({a}, {b}; {c})"),
            Expr::Join(a, b) => write!(f, "join({a}, {b})"),
            Expr::Omega => f.write_str("omega"),
            Expr::LineCoords([a, b, c]) => write!(f, "[{}:{}:{}]", r(a), r(b), r(c)),
            Expr::Polar(a, b) => write!(f, "polar({a}, {b})"),
            Expr::Through(ids) => write!(f, "through({})", ids.join(", ")),
        }
    }
}

impl Assertion {
    pub fn name(&self) -> &'static str {
        match self {
            Assertion::Collinear(_) => "collinear",
            Assertion::Concurrent(_) => "concurrent",
            Assertion::On(..) => "on",
            Assertion::Parallel(..) => "parallel",
            Assertion::Equal(..) => "equal",
            Assertion::Harmonic(_) => "harmonic",
        }
    }

    pub fn operands(&self) -> Vec<&str> {
        match self {
            Assertion::Collinear(v) | Assertion::Concurrent(v) => v.iter().map(String::as_str).collect(),
            Assertion::On(a, b) | Assertion::Parallel(a, b) | Assertion::Equal(a, b) => vec![a, b],
            Assertion::Harmonic(v) => v.iter().map(String::as_str).collect(),
        }
    }
}

impl fmt::Display for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Assertion::Harmonic([a, b, c, d]) => write!(f, "harmonic({a}, {b}; {c}, {d})"),
            other => write!(f, "{}({})", other.name(), other.operands().join(", ")),
        }
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Decl { kind, name, expr } => write!(f, "{kind} {name} = {expr}"),
            Stmt::Assert(a) => write!(f, "assert {a}"),
        }
    }
}

/// Canonical printing: one statement per line.
impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
