use num_bigint::BigInt;

use super::{DslError, Pos};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    Minus,
    Slash,
    Eq,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    Newline,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Int(n) => format!("'{n}'"),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
            other => format!("'{}'", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Minus => "-",
            Tok::Slash => "/",
            Tok::Eq => "=",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Colon => ":",
            _ => "",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

pub fn lex(src: &str) -> Result<Vec<Token>, DslError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut n = 0;
    while n < bytes.len() {
        let c = bytes[n];
        let pos = Pos { line, col, offset: n };
        match c {
            b'\n' => {
                out.push(Token { tok: Tok::Newline, pos });
                n += 1;
                line += 1;
                col = 1;
                continue;
            }
            b' ' | b'\t' | b'\r' => {}
            b'#' => {
                while n < bytes.len() && bytes[n] != b'\n' {
                    n += 1;
                }
                continue;
            }
            b'0'..=b'9' => {
                let start = n;
                while n < bytes.len() && bytes[n].is_ascii_digit() {
                    n += 1;
                }
                let digits = &src[start..n];
                let value: BigInt = digits.parse().expect("ascii digits");
                out.push(Token { tok: Tok::Int(value), pos });
                col += n - start;
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = n;
                while n < bytes.len() && (bytes[n].is_ascii_alphanumeric() || bytes[n] == b'_' || bytes[n] == b'\'') {
                    n += 1;
                }
                out.push(Token { tok: Tok::Ident(src[start..n].to_string()), pos });
                col += n - start;
                continue;
            }
            _ => {
                let tok = match c {
                    b'-' => Tok::Minus,
                    b'/' => Tok::Slash,
                    b'=' => Tok::Eq,
                    b'(' => Tok::LParen,
                    b')' => Tok::RParen,
                    b'[' => Tok::LBracket,
                    b']' => Tok::RBracket,
                    b',' => Tok::Comma,
                    b';' => Tok::Semi,
                    b':' => Tok::Colon,
                    _ => {
                        return Err(DslError::Syntax {
                            pos,
                            expected: vec!["a token".into()],
                            found: format!("character {:?}", c as char),
                        })
                    }
                };
                out.push(Token { tok, pos });
            }
        }
        n += 1;
        col += 1;
    }
    out.push(Token { tok: Tok::Eof, pos: Pos { line, col, offset: n } });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_comments() {
        let toks = lex("point A = (1/2, -3) # note\nline g = omega").unwrap();
        let kinds: Vec<_> = toks.iter().map(|t| t.tok.clone()).collect();
        assert_eq!(kinds[0], Tok::Ident("point".into()));
        assert_eq!(kinds[4], Tok::Int(1.into()));
        assert_eq!(kinds[5], Tok::Slash);
        assert_eq!(kinds[8], Tok::Minus);
        assert_eq!(kinds[11], Tok::Newline);
        let g = &toks[13];
        assert_eq!(g.tok, Tok::Ident("g".into()));
        assert_eq!((g.pos.line, g.pos.col), (2, 6));
    }

    #[test]
    fn primes_in_names() {
        let toks = lex("point M' = meet(a, b)").unwrap();
        assert_eq!(toks[1].tok, Tok::Ident("M'".into()));
    }

    #[test]
    fn bad_character() {
        match lex("point A = (0, 0) @") {
            Err(DslError::Syntax { pos, .. }) => assert_eq!((pos.line, pos.col), (1, 18)),
            other => panic!("{other:?}"),
        }
    }
}
