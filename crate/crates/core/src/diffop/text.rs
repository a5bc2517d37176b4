//! Operator text: `z1*dw1 + z2*dw2`, `dz1^2*dw2`, `(z2)/(z1)*dw1`, with an
//! optional `; premult: <poly>` suffix. Coefficients are written to the left
//! of the derivative monomial.

use std::collections::BTreeMap;
use std::fmt;

use super::{DiffOp, OpKey};
use crate::error::{Error, Result};
use crate::poly::{parse_expr, parse_var, Builder, Dims, MultiIndex, Poly, RatFunc, Rational, Var};

const PREMULT: &str = "; premult:";

type Symbol = BTreeMap<OpKey, RatFunc>;

struct OpBuilder(Dims);

impl OpBuilder {
    fn single(&self, key: OpKey, c: RatFunc) -> Symbol {
        let mut s = Symbol::new();
        if !c.is_zero() {
            s.insert(key, c);
        }
        s
    }

    fn identity(&self) -> OpKey {
        OpKey::identity(self.0)
    }
}

impl Builder for OpBuilder {
    type Value = Symbol;

    fn number(&self, q: Rational) -> Symbol {
        self.single(self.identity(), RatFunc::constant(self.0, q))
    }

    fn ident(&self, name: &str) -> std::result::Result<Symbol, String> {
        let dims = self.0;
        if let Some(rest) = name.strip_prefix('d') {
            let key = match parse_var(rest, dims)? {
                Var::Z(j) => OpKey::new(MultiIndex::zeros(dims.p), MultiIndex::unit(dims.n, j)),
                Var::W(k) => OpKey::new(MultiIndex::unit(dims.p, k), MultiIndex::zeros(dims.n)),
            };
            return Ok(self.single(key, RatFunc::one(dims)));
        }
        match parse_var(name, dims)? {
            Var::Z(j) => Ok(self.single(self.identity(), RatFunc::from_poly(Poly::z(dims, j)))),
            Var::W(_) => Err(format!("operator coefficients cannot contain {name}")),
        }
    }

    fn add(&self, mut a: Symbol, b: Symbol) -> Symbol {
        for (k, c) in b {
            let merged = match a.remove(&k) {
                Some(old) => &old + &c,
                None => c,
            };
            if !merged.is_zero() {
                a.insert(k, merged);
            }
        }
        a
    }

    fn neg(&self, a: Symbol) -> Symbol {
        a.into_iter().map(|(k, c)| (k, -c)).collect()
    }

    fn mul(&self, a: Symbol, b: Symbol) -> std::result::Result<Symbol, String> {
        let mut out = Symbol::new();
        for (ka, ca) in &a {
            for (kb, cb) in &b {
                out = self.add(out, self.single(ka.add(kb), ca * cb));
            }
        }
        Ok(out)
    }

    fn div(&self, a: Symbol, b: Symbol) -> std::result::Result<Symbol, String> {
        let id = self.identity();
        if b.keys().any(|k| *k != id) {
            return Err("can only divide by a coefficient".into());
        }
        let d = b.get(&id).ok_or("division by zero")?;
        let inv = d.recip().map_err(|e| e.to_string())?;
        Ok(a.into_iter().map(|(k, c)| (k, &c * &inv)).collect())
    }
}

pub(super) fn parse_op(s: &str, dims: Dims) -> Result<DiffOp> {
    let (body, pre) = match s.find(PREMULT) {
        Some(i) => (&s[..i], Some(&s[i + PREMULT.len()..])),
        None => (s, None),
    };
    let sym = parse_expr(body, &OpBuilder(dims))?;
    let op = DiffOp::from_terms(dims, sym);
    match pre {
        Some(p) => {
            let a = Poly::parse(p, dims).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse {
                    pos: pos + body.len() + PREMULT.len(),
                    msg,
                },
                other => other,
            })?;
            op.precompose_mult(&a)
        }
        None => Ok(op),
    }
}

fn fmt_derivative(key: &OpKey) -> String {
    let mut parts = Vec::new();
    let mut push = |name: String, e: u32| match e {
        0 => {}
        1 => parts.push(name),
        _ => parts.push(format!("{name}^{e}")),
    };
    for (j, &e) in key.beta.as_slice().iter().enumerate() {
        push(format!("dz{}", j + 1), e);
    }
    for (k, &e) in key.m.as_slice().iter().enumerate() {
        push(format!("dw{}", k + 1), e);
    }
    parts.join("*")
}

fn fmt_coeff(c: &RatFunc) -> String {
    if !c.den().is_one() {
        return c.to_string();
    }
    let s = c.num().to_string();
    if c.num().num_terms() > 1 {
        format!("({s})")
    } else {
        s
    }
}

pub(super) fn fmt_op(op: &DiffOp, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if op.terms.is_empty() {
        write!(f, "0")?;
    }
    for (i, (key, c)) in op.terms.iter().rev().enumerate() {
        let term = if key.order() == 0 {
            fmt_coeff(c)
        } else if c.is_one() {
            fmt_derivative(key)
        } else if (-c).is_one() {
            format!("-{}", fmt_derivative(key))
        } else {
            format!("{}*{}", fmt_coeff(c), fmt_derivative(key))
        };
        match (i, term.strip_prefix('-')) {
            (0, _) => write!(f, "{term}")?,
            (_, Some(rest)) => write!(f, " - {rest}")?,
            (_, None) => write!(f, " + {term}")?,
        }
    }
    if !op.pre_mult.is_one() {
        write!(f, "{PREMULT} {}", op.pre_mult)?;
    }
    Ok(())
}
