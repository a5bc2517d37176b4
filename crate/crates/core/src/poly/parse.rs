//! Text syntax shared by polynomials and operators:
//! `3/2*z1^2*w2 - w1*w2`, with `+ - * / ^` and parentheses.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Dims, Poly, Rational, Var};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = s[start..i].parse().expect("digits parse");
            out.push((start, Tok::Num(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(s[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse {
                pos: i,
                msg: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

/// Value algebra a parsed expression is evaluated in.
pub(crate) trait Builder {
    type Value: Clone;
    fn number(&self, q: Rational) -> Self::Value;
    fn ident(&self, name: &str) -> std::result::Result<Self::Value, String>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn neg(&self, a: Self::Value) -> Self::Value;
    fn mul(&self, a: Self::Value, b: Self::Value) -> std::result::Result<Self::Value, String>;
    fn div(&self, a: Self::Value, b: Self::Value) -> std::result::Result<Self::Value, String>;
}

struct Parser<'a, B: Builder> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    builder: &'a B,
}

impl<B: Builder> Parser<'_, B> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn lift<T>(&self, r: std::result::Result<T, String>) -> Result<T> {
        r.or_else(|m| self.err(m))
    }

    fn expr(&mut self) -> Result<B::Value> {
        let mut acc = self.term()?;
        while let Some(Tok::Sym(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' {
                self.builder.add(acc, rhs)
            } else {
                self.builder.add(acc, self.builder.neg(rhs))
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<B::Value> {
        let mut acc = self.unary()?;
        while let Some(Tok::Sym(c @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.unary()?;
            let r = if c == '*' {
                self.builder.mul(acc, rhs)
            } else {
                self.builder.div(acc, rhs)
            };
            acc = self.lift(r)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<B::Value> {
        match self.peek() {
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                let v = self.unary()?;
                Ok(self.builder.neg(v))
            }
            Some(Tok::Sym('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<B::Value> {
        let base = self.atom()?;
        if let Some(Tok::Sym('^')) = self.peek() {
            self.pos += 1;
            let Some(Tok::Num(e)) = self.peek().cloned() else {
                return self.err("exponent must be a nonnegative integer literal");
            };
            self.pos += 1;
            let e: u32 = match e.try_into() {
                Ok(e) => e,
                Err(_) => return self.err("exponent too large"),
            };
            let mut acc = self.builder.number(Rational::one());
            for _ in 0..e {
                let r = self.builder.mul(acc, base.clone());
                acc = self.lift(r)?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<B::Value> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(self.builder.number(Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                let r = self.builder.ident(&name);
                let v = self.lift(r)?;
                self.pos += 1;
                Ok(v)
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(&Tok::Sym(')')) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

pub(crate) fn parse_expr<B: Builder>(s: &str, builder: &B) -> Result<B::Value> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty expression".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: s.len(),
        builder,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

/// `z3` ↦ `Z(2)`, `w1` ↦ `W(0)`, checked against `dims`.
pub(crate) fn parse_var(name: &str, dims: Dims) -> std::result::Result<Var, String> {
    let (block, idx) = name.split_at(1.min(name.len()));
    let i: usize = idx
        .parse()
        .map_err(|_| format!("unknown identifier {name:?}"))?;
    if i == 0 {
        return Err(format!("variables are numbered from 1: {name:?}"));
    }
    match block {
        "z" if i <= dims.n => Ok(Var::Z(i - 1)),
        "w" if i <= dims.p => Ok(Var::W(i - 1)),
        "z" | "w" => Err(format!("variable {name} outside dims {dims}")),
        _ => Err(format!("unknown identifier {name:?}")),
    }
}

struct PolyBuilder(Dims);

impl Builder for PolyBuilder {
    type Value = Poly;

    fn number(&self, q: Rational) -> Poly {
        Poly::constant(self.0, q)
    }

    fn ident(&self, name: &str) -> std::result::Result<Poly, String> {
        parse_var(name, self.0).map(|v| Poly::var(self.0, v))
    }

    fn add(&self, a: Poly, b: Poly) -> Poly {
        a + b
    }

    fn neg(&self, a: Poly) -> Poly {
        -a
    }

    fn mul(&self, a: Poly, b: Poly) -> std::result::Result<Poly, String> {
        Ok(a * b)
    }

    fn div(&self, a: Poly, b: Poly) -> std::result::Result<Poly, String> {
        match b.constant_value() {
            Some(c) if !c.is_zero() => Ok(a.scale(&c.recip())),
            Some(_) => Err("division by zero".into()),
            None => Err("polynomials may only be divided by nonzero constants".into()),
        }
    }
}

pub(crate) fn parse_poly(s: &str, dims: Dims) -> Result<Poly> {
    parse_expr(s, &PolyBuilder(dims))
}

/// Parses `7`, `-3/4` or a decimal such as `0.25` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let err = || Error::Parse {
        pos: 0,
        msg: format!("not a rational number: {s:?}"),
    };
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let q = if let Some((a, b)) = body.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| err())?;
        let b: BigInt = b.trim().parse().map_err(|_| err())?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Rational::new(a, b)
    } else if let Some((a, b)) = body.split_once('.') {
        if b.is_empty() || !b.bytes().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let whole: BigInt = if a.is_empty() {
            BigInt::zero()
        } else {
            a.parse().map_err(|_| err())?
        };
        let frac: BigInt = b.parse().map_err(|_| err())?;
        let scale = num_traits::pow(BigInt::from(10), b.len());
        Rational::new(whole * &scale + frac, scale)
    } else {
        Rational::from_integer(body.parse().map_err(|_| err())?)
    };
    Ok(if neg { -q } else { q })
}
