use std::collections::HashMap;
use std::fmt;

use super::{Assertion, DslError, Expr, Pos, Script, Stmt};
use crate::conic::{conic_through_five, on_conic, polar, Conic};
use crate::error::GeomError;
use crate::projective::{
    all_collinear, all_concurrent, cross_ratio, euclidean_embed, harmonic_conjugate, incident,
    join, meet, HLine, HPoint,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Point(HPoint),
    Line(HLine),
    Conic(Conic),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Point(p) => p.fmt(f),
            Value::Line(l) => l.fmt(f),
            Value::Conic(c) => c.fmt(f),
        }
    }
}

/// Bindings in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Environment {
    order: Vec<String>,
    values: HashMap<String, Value>,
}

impl Environment {
    pub fn get(&self, name: &str) -> Option<&Value> {
        self.values.get(name)
    }

    pub fn point(&self, name: &str) -> Option<&HPoint> {
        match self.values.get(name) {
            Some(Value::Point(p)) => Some(p),
            _ => None,
        }
    }

    pub fn line(&self, name: &str) -> Option<&HLine> {
        match self.values.get(name) {
            Some(Value::Line(l)) => Some(l),
            _ => None,
        }
    }

    pub fn conic(&self, name: &str) -> Option<&Conic> {
        match self.values.get(name) {
            Some(Value::Conic(c)) => Some(c),
            _ => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Value)> {
        self.order.iter().map(|n| (n.as_str(), &self.values[n]))
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    fn bind(&mut self, name: &str, v: Value) {
        self.order.push(name.to_string());
        self.values.insert(name.to_string(), v);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssertionResult {
    pub pos: Pos,
    pub assertion: Assertion,
    pub passed: bool,
    /// Canonical values of the operands, in argument order.
    pub operands: Vec<(String, String)>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Evaluation {
    pub env: Environment,
    pub results: Vec<AssertionResult>,
    /// The evaluation error that stopped the run, if any.
    pub error: Option<DslError>,
}

impl Evaluation {
    pub fn passed(&self) -> usize {
        self.results.iter().filter(|r| r.passed).count()
    }

    pub fn all_passed(&self) -> bool {
        self.error.is_none() && self.results.iter().all(|r| r.passed)
    }
}

// Names and kinds were resolved by the parser, so lookups cannot miss.
fn pt<'a>(env: &'a Environment, n: &str) -> &'a HPoint {
    env.point(n).expect("resolved point")
}

fn ln<'a>(env: &'a Environment, n: &str) -> &'a HLine {
    env.line(n).expect("resolved line")
}

fn construct(env: &Environment, expr: &Expr) -> Result<Value, GeomError> {
    Ok(match expr {
        Expr::Coords(x, y) => Value::Point(euclidean_embed(x, y)),
        Expr::Meet(a, b) => Value::Point(meet(ln(env, a), ln(env, b))?),
        Expr::InfPoint(a) => Value::Point(meet(ln(env, a), &HLine::omega())?),
        Expr::Harmonic(a, b, c) => Value::Point(harmonic_conjugate(pt(env, a), pt(env, b), pt(env, c))?),
        Expr::Join(a, b) => Value::Line(join(pt(env, a), pt(env, b))?),
        Expr::Omega => Value::Line(HLine::omega()),
        Expr::LineCoords(v) => Value::Line(HLine::from_rationals(v)?),
        Expr::Polar(p, c) => Value::Line(polar(pt(env, p), env.conic(c).expect("resolved conic"))?),
        Expr::Through(ids) => {
            let p: Vec<&HPoint> = ids.iter().map(|n| pt(env, n)).collect();
            Value::Conic(conic_through_five([p[0], p[1], p[2], p[3], p[4]])?)
        }
    })
}

/// Outcome of an assertion plus an optional reason for a failure.
fn check(env: &Environment, a: &Assertion) -> (bool, Option<String>) {
    match a {
        Assertion::Collinear(ids) => {
            let p: Vec<HPoint> = ids.iter().map(|n| pt(env, n).clone()).collect();
            (all_collinear(&p), None)
        }
        Assertion::Concurrent(ids) => {
            let l: Vec<HLine> = ids.iter().map(|n| ln(env, n).clone()).collect();
            (all_concurrent(&l), None)
        }
        Assertion::On(p, x) => {
            let p = pt(env, p);
            match env.get(x) {
                Some(Value::Line(l)) => (incident(p, l), None),
                Some(Value::Conic(c)) => (on_conic(p, c), None),
                _ => unreachable!("parser checks operand kinds"),
            }
        }
        Assertion::Parallel(l, m) => {
            let (l, m) = (ln(env, l), ln(env, m));
            match meet(l, m) {
                Ok(x) => (x.is_at_infinity(), None),
                Err(_) => (true, None),
            }
        }
        Assertion::Equal(a, b) => (env.get(a) == env.get(b), None),
        Assertion::Harmonic([a, b, c, d]) => {
            match cross_ratio(pt(env, a), pt(env, b), pt(env, c), pt(env, d)) {
                Ok(v) if v.is_harmonic() => (true, None),
                Ok(v) => (false, Some(format!("cross-ratio is {v}"))),
                Err(e) => (false, Some(e.to_string())),
            }
        }
    }
}

/// Run a parsed script. Failed assertions are recorded and evaluation goes
/// on; a construction error stops it.
pub fn evaluate(script: &Script) -> Evaluation {
    let mut out = Evaluation::default();
    for (stmt, &pos) in script.statements.iter().zip(&script.source_map) {
        match stmt {
            Stmt::Decl { name, expr, .. } => match construct(&out.env, expr) {
                Ok(v) => out.env.bind(name, v),
                Err(e) => {
                    out.error = Some(DslError::Evaluation {
                        pos,
                        message: format!("{name} = {expr}: {e}"),
                    });
                    return out;
                }
            },
            Stmt::Assert(a) => {
                let (passed, note) = check(&out.env, a);
                let operands = a
                    .operands()
                    .iter()
                    .map(|n| (n.to_string(), out.env.get(n).expect("resolved").to_string()))
                    .collect();
                out.results.push(AssertionResult { pos, assertion: a.clone(), passed, operands, note });
            }
        }
    }
    out
}

/// One PASS/FAIL line per assertion, then a summary line.
pub fn format_diagnostics(eval: &Evaluation) -> String {
    let mut s = String::new();
    for r in &eval.results {
        if r.passed {
            s.push_str(&format!("PASS {} {}\n", r.pos, r.assertion));
        } else {
            let vals: Vec<String> = r.operands.iter().map(|(n, v)| format!("{n} = {v}")).collect();
            s.push_str(&format!("FAIL {} {}: {}", r.pos, r.assertion, vals.join(", ")));
            if let Some(note) = &r.note {
                s.push_str(&format!(" ({note})"));
            }
            s.push('\n');
        }
    }
    s.push_str(&format!("{} assertions, {} passed\n", eval.results.len(), eval.passed()));
    s
}
