//! Recursive-descent parser for calculator expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := NUMBER | '(' expr ')' | '-' factor | FUNC '(' expr (',' expr)? ')'
//! NUMBER := integer | integer '/' integer | integer '.' integer
//! FUNC   := sqrt | abs | min | max
//! ```
//!
//! `a/b` written without spaces between two integers is a single fraction
//! literal, so `1/2 + 1/3` parses as the sum of two literals.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::rational::Rational;

const MAX_DEPTH: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Lit(Rational),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Sqrt(Box<Expr>),
    Abs(Box<Expr>),
    Min(Box<Expr>, Box<Expr>),
    Max(Box<Expr>, Box<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Lit(q) => write!(f, "{q}"),
            Expr::Neg(e) => write!(f, "-({e})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Sqrt(e) => write!(f, "sqrt({e})"),
            Expr::Abs(e) => write!(f, "abs({e})"),
            Expr::Min(a, b) => write!(f, "min({a}, {b})"),
            Expr::Max(a, b) => write!(f, "max({a}, {b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: {message} (expected {})", .expected.join(", "))]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
    pub expected: Vec<&'static str>,
}

const FACTOR_START: &[&str] = &["number", "'('", "'-'", "sqrt", "abs", "min", "max"];
const AFTER_OPERAND: &[&str] = &["'+'", "'-'", "'*'", "'/'"];

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(q) => format!("number {q}"),
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits_from = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'0'..=b'9' => {
                let int_end = digits_from(i);
                let int: BigInt = src[i..int_end].parse().expect("ascii digits");
                if bytes.get(int_end) == Some(&b'.') {
                    let frac_end = digits_from(int_end + 1);
                    if frac_end == int_end + 1 {
                        return Err(ParseError {
                            offset: int_end + 1,
                            message: "missing digits after decimal point".into(),
                            expected: vec!["digit"],
                        });
                    }
                    let lit = &src[i..frac_end];
                    i = frac_end;
                    out.push((start, Tok::Num(lit.parse().expect("decimal literal"))));
                    continue;
                }
                let den_end = if bytes.get(int_end) == Some(&b'/') {
                    digits_from(int_end + 1)
                } else {
                    int_end
                };
                let is_fraction = den_end > int_end + 1 && bytes.get(den_end) != Some(&b'.');
                if is_fraction {
                    let den: BigInt = src[int_end + 1..den_end].parse().expect("ascii digits");
                    let q = Rational::new(int, den).map_err(|_| ParseError {
                        offset: int_end + 1,
                        message: "zero denominator in fraction literal".into(),
                        expected: vec!["nonzero denominator"],
                    })?;
                    i = den_end;
                    out.push((start, Tok::Num(q)));
                } else {
                    i = int_end;
                    out.push((start, Tok::Num(Rational::from_integer(int))));
                }
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_alphanumeric() {
                    j += 1;
                }
                let word = src[i..j].to_string();
                i = j;
                out.push((start, Tok::Ident(word)));
                continue;
            }
            _ => {
                let ch = src[i..].chars().next().expect("non-empty remainder");
                return Err(ParseError {
                    offset: i,
                    message: format!("unexpected character {ch:?}"),
                    expected: FACTOR_START.to_vec(),
                });
            }
        };
        i += 1;
        out.push((start, tok));
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: Vec<&'static str>) -> ParseError {
        ParseError {
            offset: self.offset(),
            message: format!("unexpected {}", self.peek().describe()),
            expected,
        }
    }

    fn expect(&mut self, tok: Tok, name: &'static str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            let mut expected = AFTER_OPERAND.to_vec();
            expected.push(name);
            Err(self.error(expected))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseError {
                offset: self.offset(),
                message: format!("expression nested deeper than {MAX_DEPTH} levels"),
                expected: vec!["shallower expression"],
            });
        }
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Num(q) => {
                self.bump();
                Ok(Expr::Lit(q))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Minus => {
                self.depth += 1;
                if self.depth > MAX_DEPTH {
                    return Err(ParseError {
                        offset: self.offset(),
                        message: format!("expression nested deeper than {MAX_DEPTH} levels"),
                        expected: vec!["shallower expression"],
                    });
                }
                self.bump();
                let inner = self.factor()?;
                self.depth -= 1;
                Ok(Expr::Neg(Box::new(inner)))
            }
            Tok::Ident(name) => {
                let arity = match name.as_str() {
                    "sqrt" | "abs" => 1,
                    "min" | "max" => 2,
                    _ => {
                        return Err(ParseError {
                            offset: self.offset(),
                            message: format!("unknown function {name:?}"),
                            expected: vec!["sqrt", "abs", "min", "max"],
                        })
                    }
                };
                self.bump();
                self.expect(Tok::LParen, "'('").map_err(|mut e| {
                    e.expected = vec!["'('"];
                    e
                })?;
                let first = Box::new(self.expr()?);
                let second = if arity == 2 {
                    self.expect(Tok::Comma, "','")?;
                    Some(Box::new(self.expr()?))
                } else {
                    None
                };
                self.expect(Tok::RParen, "')'")?;
                Ok(match (name.as_str(), second) {
                    ("sqrt", _) => Expr::Sqrt(first),
                    ("abs", _) => Expr::Abs(first),
                    ("min", Some(second)) => Expr::Min(first, second),
                    (_, Some(second)) => Expr::Max(first, second),
                    _ => unreachable!("arity checked above"),
                })
            }
            _ => Err(self.error(FACTOR_START.to_vec())),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        depth: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        let mut expected = AFTER_OPERAND.to_vec();
        expected.push("end of input");
        return Err(p.error(expected));
    }
    Ok(e)
}
