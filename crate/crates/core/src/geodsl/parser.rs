use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::lexer::{lex, Tok, Token};
use super::{Assertion, DslError, Expr, Kind, Pos, Script, Stmt};
use crate::rational::Rational;

const RESERVED: [&str; 5] = ["point", "line", "conic", "assert", "omega"];

struct Arg {
    name: String,
    pos: Pos,
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
    symbols: HashMap<String, Kind>,
}

fn quoted(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| format!("'{s}'")).collect()
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.at]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, expected: Vec<String>) -> DslError {
        let t = self.peek();
        DslError::Syntax { pos: t.pos, expected, found: t.tok.describe() }
    }

    fn expect(&mut self, tok: Tok, shown: &str) -> Result<Pos, DslError> {
        if self.peek().tok == tok {
            Ok(self.bump().pos)
        } else {
            Err(self.unexpected(quoted(&[shown])))
        }
    }

    fn ident(&mut self) -> Result<Arg, DslError> {
        match &self.peek().tok {
            Tok::Ident(s) if !RESERVED.contains(&s.as_str()) => {
                let name = s.clone();
                let pos = self.bump().pos;
                Ok(Arg { name, pos })
            }
            _ => Err(self.unexpected(vec!["identifier".into()])),
        }
    }

    fn integer(&mut self) -> Result<BigInt, DslError> {
        match &self.peek().tok {
            Tok::Int(n) => {
                let n = n.clone();
                self.bump();
                Ok(n)
            }
            _ => Err(self.unexpected(vec!["integer".into()])),
        }
    }

    /// `["-"] int ["/" int]`
    fn rational(&mut self) -> Result<Rational, DslError> {
        let negative = self.peek().tok == Tok::Minus;
        if negative {
            self.bump();
        }
        let mut p = self.integer()?;
        if negative {
            p = -p;
        }
        if self.peek().tok != Tok::Slash {
            return Ok(Rational::from_integer(p));
        }
        self.bump();
        let pos = self.peek().pos;
        let q = self.integer()?;
        if q.is_zero() {
            return Err(DslError::Syntax {
                pos,
                expected: vec!["nonzero denominator".into()],
                found: "'0'".into(),
            });
        }
        Ok(Rational::new(p, q))
    }

    /// `"(" ID (("," | ";") ID)* ")"`, returning the separators seen.
    fn args(&mut self) -> Result<(Vec<Arg>, Vec<Tok>, Pos), DslError> {
        let open = self.expect(Tok::LParen, "(")?;
        let mut args = vec![self.ident()?];
        let mut seps = Vec::new();
        loop {
            match self.peek().tok {
                Tok::Comma | Tok::Semi => {
                    seps.push(self.bump().tok);
                    args.push(self.ident()?);
                }
                Tok::RParen => {
                    self.bump();
                    return Ok((args, seps, open));
                }
                _ => return Err(self.unexpected(quoted(&[",", ";", ")"]))),
            }
        }
    }

    /// Arguments of a fixed-shape call; `semi_at` marks where `;` goes.
    fn call(&mut self, what: &str, n: usize, semi_at: Option<usize>) -> Result<Vec<Arg>, DslError> {
        let (args, seps, open) = self.args()?;
        if args.len() != n {
            return Err(DslError::ArityMismatch {
                pos: open,
                what: what.to_string(),
                expected: n.to_string(),
                found: args.len(),
            });
        }
        self.separators(&args, &seps, semi_at)?;
        Ok(args)
    }

    fn separators(&self, args: &[Arg], seps: &[Tok], semi_at: Option<usize>) -> Result<(), DslError> {
        for (n, sep) in seps.iter().enumerate() {
            let want = if Some(n) == semi_at { Tok::Semi } else { Tok::Comma };
            if *sep != want {
                let shown = if want == Tok::Semi { ";" } else { "," };
                return Err(DslError::Syntax {
                    pos: Pos { col: args[n + 1].pos.col.saturating_sub(1), ..args[n + 1].pos },
                    expected: quoted(&[shown]),
                    found: sep.describe(),
                });
            }
        }
        Ok(())
    }

    fn typed(&self, arg: &Arg, allowed: &[Kind]) -> Result<Kind, DslError> {
        let Some(&kind) = self.symbols.get(&arg.name) else {
            return Err(DslError::UseBeforeDecl { pos: arg.pos, name: arg.name.clone() });
        };
        if !allowed.contains(&kind) {
            let expected: Vec<&str> = allowed.iter().map(|k| k.keyword()).collect();
            return Err(DslError::TypeMismatch {
                pos: arg.pos,
                name: arg.name.clone(),
                expected: expected.join(" or "),
                found: kind,
            });
        }
        Ok(kind)
    }

    fn all_typed(&self, args: &[Arg], kind: Kind) -> Result<Vec<String>, DslError> {
        args.iter()
            .map(|a| self.typed(a, &[kind]).map(|_| a.name.clone()))
            .collect()
    }

    fn constructor(&mut self, allowed: &[&str]) -> Result<String, DslError> {
        match &self.peek().tok {
            Tok::Ident(s) if allowed.contains(&s.as_str()) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected(quoted(allowed))),
        }
    }

    fn point_expr(&mut self) -> Result<Expr, DslError> {
        if self.peek().tok == Tok::LParen {
            self.bump();
            let x = self.rational()?;
            self.expect(Tok::Comma, ",")?;
            let y = self.rational()?;
            self.expect(Tok::RParen, ")")?;
            return Ok(Expr::Coords(x, y));
        }
        let name = match &self.peek().tok {
            Tok::Ident(s) if ["meet", "infpoint", "harmonic"].contains(&s.as_str()) => s.clone(),
            _ => return Err(self.unexpected(quoted(&["(", "meet", "infpoint", "harmonic"]))),
        };
        self.bump();
        match name.as_str() {
            "meet" => {
                let a = self.call("meet", 2, None)?;
                let v = self.all_typed(&a, Kind::Line)?;
                Ok(Expr::Meet(v[0].clone(), v[1].clone()))
            }
            "infpoint" => {
                let a = self.call("infpoint", 1, None)?;
                let v = self.all_typed(&a, Kind::Line)?;
                Ok(Expr::InfPoint(v[0].clone()))
            }
            _ => {
                let a = self.call("harmonic", 3, Some(1))?;
                let v = self.all_typed(&a, Kind::Point)?;
                Ok(Expr::Harmonic(v[0].clone(), v[1].clone(), v[2].clone()))
            }
        }
    }

    fn line_expr(&mut self) -> Result<Expr, DslError> {
        if self.peek().tok == Tok::LBracket {
            self.bump();
            let a = self.rational()?;
            self.expect(Tok::Colon, ":")?;
            let b = self.rational()?;
            self.expect(Tok::Colon, ":")?;
            let c = self.rational()?;
            self.expect(Tok::RBracket, "]")?;
            return Ok(Expr::LineCoords([a, b, c]));
        }
        if self.peek().tok == Tok::Ident("omega".into()) {
            self.bump();
            return Ok(Expr::Omega);
        }
        let name = match &self.peek().tok {
            Tok::Ident(s) if s == "join" || s == "polar" => s.clone(),
            _ => return Err(self.unexpected(quoted(&["[", "omega", "join", "polar"]))),
        };
        self.bump();
        let a = self.call(&name, 2, None)?;
        if name == "join" {
            let v = self.all_typed(&a, Kind::Point)?;
            Ok(Expr::Join(v[0].clone(), v[1].clone()))
        } else {
            self.typed(&a[0], &[Kind::Point])?;
            self.typed(&a[1], &[Kind::Conic])?;
            Ok(Expr::Polar(a[0].name.clone(), a[1].name.clone()))
        }
    }

    fn conic_expr(&mut self) -> Result<Expr, DslError> {
        self.constructor(&["through"])?;
        let a = self.call("through", 5, None)?;
        let v = self.all_typed(&a, Kind::Point)?;
        Ok(Expr::Through(std::array::from_fn(|n| v[n].clone())))
    }

    fn decl(&mut self, kind: Kind) -> Result<Stmt, DslError> {
        let name = self.ident()?;
        if self.symbols.contains_key(&name.name) {
            return Err(DslError::Redeclaration { pos: name.pos, name: name.name });
        }
        self.expect(Tok::Eq, "=")?;
        let expr = match kind {
            Kind::Point => self.point_expr()?,
            Kind::Line => self.line_expr()?,
            Kind::Conic => self.conic_expr()?,
        };
        self.symbols.insert(name.name.clone(), kind);
        Ok(Stmt::Decl { kind, name: name.name, expr })
    }

    fn assertion(&mut self) -> Result<Stmt, DslError> {
        let names = ["collinear", "concurrent", "on", "parallel", "equal", "harmonic"];
        let what = self.constructor(&names)?;
        let a = match what.as_str() {
            "collinear" | "concurrent" => {
                let (args, seps, open) = self.args()?;
                if args.len() < 3 {
                    return Err(DslError::ArityMismatch {
                        pos: open,
                        what,
                        expected: "at least 3".into(),
                        found: args.len(),
                    });
                }
                self.separators(&args, &seps, None)?;
                if what == "collinear" {
                    Assertion::Collinear(self.all_typed(&args, Kind::Point)?)
                } else {
                    Assertion::Concurrent(self.all_typed(&args, Kind::Line)?)
                }
            }
            "on" => {
                let a = self.call("on", 2, None)?;
                self.typed(&a[0], &[Kind::Point])?;
                self.typed(&a[1], &[Kind::Line, Kind::Conic])?;
                Assertion::On(a[0].name.clone(), a[1].name.clone())
            }
            "parallel" => {
                let a = self.call("parallel", 2, None)?;
                let v = self.all_typed(&a, Kind::Line)?;
                Assertion::Parallel(v[0].clone(), v[1].clone())
            }
            "equal" => {
                let a = self.call("equal", 2, None)?;
                let k = self.typed(&a[0], &[Kind::Point, Kind::Line, Kind::Conic])?;
                self.typed(&a[1], &[k])?;
                Assertion::Equal(a[0].name.clone(), a[1].name.clone())
            }
            _ => {
                let a = self.call("harmonic", 4, Some(1))?;
                let v = self.all_typed(&a, Kind::Point)?;
                Assertion::Harmonic(std::array::from_fn(|n| v[n].clone()))
            }
        };
        Ok(Stmt::Assert(a))
    }

    fn statement(&mut self) -> Result<Stmt, DslError> {
        let kw = match &self.peek().tok {
            Tok::Ident(s) => s.clone(),
            _ => String::new(),
        };
        let stmt = match kw.as_str() {
            "point" | "line" | "conic" => {
                self.bump();
                let kind = match kw.as_str() {
                    "point" => Kind::Point,
                    "line" => Kind::Line,
                    _ => Kind::Conic,
                };
                self.decl(kind)?
            }
            "assert" => {
                self.bump();
                self.assertion()?
            }
            _ => return Err(self.unexpected(quoted(&["point", "line", "conic", "assert"]))),
        };
        match self.peek().tok {
            Tok::Newline | Tok::Eof => Ok(stmt),
            _ => Err(self.unexpected(vec!["end of line".into()])),
        }
    }
}

/// Parse a script, resolving names and argument kinds as it goes.
pub fn parse(source: &str) -> Result<Script, DslError> {
    let mut p = Parser { toks: lex(source)?, at: 0, symbols: HashMap::new() };
    let mut script = Script::default();
    loop {
        while p.peek().tok == Tok::Newline {
            p.bump();
        }
        if p.peek().tok == Tok::Eof {
            return Ok(script);
        }
        let pos = p.peek().pos;
        let stmt = p.statement()?;
        script.statements.push(stmt);
        script.source_map.push(pos);
    }
}
