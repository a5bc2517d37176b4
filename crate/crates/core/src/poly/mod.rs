//! Sparse multivariate polynomials over ℚ in two variable blocks: the base
//! coordinates `z1..zn` and the normal coordinates `w1..wp`.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose order is
//! lexicographic with the w-block ahead of the z-block and, inside each
//! block, `x1 > x2 > …`. No zero coefficient is ever stored, so structural
//! equality is polynomial equality.

mod gcd;
mod multiindex;
mod parse;
mod ratfunc;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::diffop::TiltMatrix;
use crate::error::{Error, Result};

pub use gcd::gcd;
pub use multiindex::{binomial, factorial, simplex_count, MultiIndex};
pub use parse::parse_rational;
pub(crate) use parse::{parse_expr, parse_var, Builder};
pub use ratfunc::format_point;
pub use ratfunc::RatFunc;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Block dimensions: `n` base variables, `p` normal variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dims {
    pub n: usize,
    pub p: usize,
}

impl Dims {
    pub fn new(n: usize, p: usize) -> Self {
        Dims { n, p }
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> {
        let (n, p) = (self.n, self.p);
        (0..n).map(Var::Z).chain((0..p).map(Var::W))
    }

    fn check(&self, other: &Dims) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: *self,
                right: *other,
            })
        }
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, p={})", self.n, self.p)
    }
}

/// A variable, zero-based within its block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Z(usize),
    W(usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Z(i) => write!(f, "z{}", i + 1),
            Var::W(i) => write!(f, "w{}", i + 1),
        }
    }
}

/// Total degree; the zero polynomial has degree `NegInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

/// `w^σ z^δ`. Field order makes the derived `Ord` the crate's monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    w: MultiIndex,
    z: MultiIndex,
}

impl Monomial {
    pub fn new(z: MultiIndex, w: MultiIndex) -> Self {
        Monomial { w, z }
    }

    pub fn one(dims: Dims) -> Self {
        Monomial {
            w: MultiIndex::zeros(dims.p),
            z: MultiIndex::zeros(dims.n),
        }
    }

    pub fn var(dims: Dims, v: Var) -> Self {
        let mut m = Monomial::one(dims);
        m.set_exp(v, 1);
        m
    }

    pub fn z(&self) -> &MultiIndex {
        &self.z
    }

    pub fn w(&self) -> &MultiIndex {
        &self.w
    }

    pub fn exp(&self, v: Var) -> u32 {
        match v {
            Var::Z(i) => self.z.get(i),
            Var::W(i) => self.w.get(i),
        }
    }

    pub fn set_exp(&mut self, v: Var, e: u32) {
        match v {
            Var::Z(i) => self.z.set(i, e),
            Var::W(i) => self.w.set(i, e),
        }
    }

    pub fn degree(&self) -> u32 {
        self.z.abs() + self.w.abs()
    }

    pub fn is_one(&self) -> bool {
        self.z.is_zero() && self.w.is_zero()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            w: self.w.add(&other.w),
            z: self.z.add(&other.z),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.w.le(&other.w) && self.z.le(&other.z)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        Some(Monomial {
            w: other.w.checked_sub(&self.w)?,
            z: other.z.checked_sub(&self.z)?,
        })
    }

    /// All monomials of total degree `≤ degree` in the given dims, graded.
    pub fn up_to_degree(dims: Dims, degree: u32) -> Vec<Monomial> {
        MultiIndex::simplex(dims.n + dims.p, degree)
            .into_iter()
            .map(|a| {
                let e = a.as_slice();
                Monomial {
                    z: MultiIndex::new(e[..dims.n].to_vec()),
                    w: MultiIndex::new(e[dims.n..].to_vec()),
                }
            })
            .collect()
    }

    fn fmt_vars(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let blocks = [('z', &self.z), ('w', &self.w)];
        for (name, idx) in blocks {
            for (i, &e) in idx.as_slice().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{name}{}", i + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        self.fmt_vars(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    dims: Dims,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(dims: Dims) -> Self {
        Poly {
            dims,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dims: Dims) -> Self {
        Poly::constant(dims, Rational::one())
    }

    pub fn constant(dims: Dims, c: Rational) -> Self {
        Poly::monomial(dims, Monomial::one(dims), c)
    }

    pub fn var(dims: Dims, v: Var) -> Self {
        Poly::monomial(dims, Monomial::var(dims, v), Rational::one())
    }

    pub fn z(dims: Dims, i: usize) -> Self {
        Poly::var(dims, Var::Z(i))
    }

    pub fn w(dims: Dims, i: usize) -> Self {
        Poly::var(dims, Var::W(i))
    }

    pub fn monomial(dims: Dims, m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { dims, terms }
    }

    /// Sums the given terms; repeated monomials are combined.
    pub fn from_terms(dims: Dims, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero(dims);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn parse(s: &str, dims: Dims) -> Result<Self> {
        parse::parse_poly(s, dims)
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(
                self.terms
                    .values()
                    .next()
                    .cloned()
                    .unwrap_or_else(Rational::zero),
            )
        } else {
            None
        }
    }

    /// Coefficient of the monomial `1`.
    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.dims))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest term in the monomial order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(Monomial::degree)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn degree_in(&self, v: Var) -> Degree {
        self.terms
            .keys()
            .map(|m| m.exp(v))
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// True when no term carries a w-variable.
    pub fn is_z_only(&self) -> bool {
        self.terms.keys().all(|m| m.w.is_zero())
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c·other`, in place.
    pub(crate) fn add_scaled(&mut self, other: &Poly, c: &Rational) {
        debug_assert_eq!(self.dims, other.dims);
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.dims.check(&other.dims)?;
        let (mut acc, small) = if self.terms.len() >= other.terms.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &small.terms {
            acc.add_term(m.clone(), c.clone());
        }
        Ok(acc)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.dims.check(&other.dims)?;
        let mut acc = self.clone();
        for (m, c) in &other.terms {
            acc.add_term(m.clone(), -c.clone());
        }
        Ok(acc)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.dims.check(&other.dims)?;
        let mut acc = Poly::zero(self.dims);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                acc.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.dims);
        }
        Poly {
            dims: self.dims,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.dims);
        }
        Poly {
            dims: self.dims,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.dims);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative in one variable.
    pub fn partial(&self, v: Var) -> Poly {
        let mut out = Poly::zero(self.dims);
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            let mut m = m.clone();
            m.set_exp(v, e - 1);
            out.terms
                .insert(m, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// `∂_w^m ∂_z^β` applied in one pass.
    pub fn partial_multi(&self, m: &MultiIndex, beta: &MultiIndex) -> Poly {
        if m.is_zero() && beta.is_zero() {
            return self.clone();
        }
        let mut out = Poly::zero(self.dims);
        for (t, c) in &self.terms {
            let (Some(w), Some(z)) = (t.w.checked_sub(m), t.z.checked_sub(beta)) else {
                continue;
            };
            let k = t.w.falling(m) * t.z.falling(beta);
            out.terms
                .insert(Monomial { w, z }, c * Rational::from_integer(k));
        }
        out
    }

    /// Drops every term carrying a w-variable, i.e. evaluation at `w = 0`.
    pub fn restrict_w0(&self) -> Poly {
        Poly {
            dims: self.dims,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.w.is_zero())
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Keeps only terms whose w-exponent is componentwise `≤ bound`.
    pub fn truncate_w(&self, bound: &MultiIndex) -> Poly {
        Poly {
            dims: self.dims,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.w.le(bound))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Splits into `Σ_σ c_σ(z) w^σ`, returning the z-only coefficients.
    pub fn w_coefficients(&self) -> BTreeMap<MultiIndex, Poly> {
        let mut out: BTreeMap<MultiIndex, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let z_part = Monomial {
                w: MultiIndex::zeros(self.dims.p),
                z: m.z.clone(),
            };
            out.entry(m.w.clone())
                .or_insert_with(|| Poly::zero(self.dims))
                .terms
                .insert(z_part, c.clone());
        }
        out
    }

    /// Coefficients with respect to one variable, as polynomials free of it.
    pub fn coefficients_in(&self, v: Var) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let mut rest = m.clone();
            rest.set_exp(v, 0);
            out.entry(e)
                .or_insert_with(|| Poly::zero(self.dims))
                .terms
                .insert(rest, c.clone());
        }
        out
    }

    /// Substitutes `z_j ↦ z_j + Σ_k b[k][j] w_k` (the tilted coordinates
    /// `z = ζ + bη, w = η`, read back in the same two blocks).
    pub fn substitute_tilt(&self, b: &TiltMatrix) -> Result<Poly> {
        if b.rows() != self.dims.p || b.cols() != self.dims.n {
            return Err(Error::invalid(format!(
                "tilt matrix is {}x{}, expected {}x{}",
                b.rows(),
                b.cols(),
                self.dims.p,
                self.dims.n
            )));
        }
        let dims = self.dims;
        let forms: Vec<Poly> = (0..dims.n)
            .map(|j| {
                let mut f = Poly::z(dims, j);
                for k in 0..dims.p {
                    f.add_term(Monomial::var(dims, Var::W(k)), b.entry(k, j).clone());
                }
                f
            })
            .collect();
        let mut powers: Vec<Vec<Poly>> = forms
            .iter()
            .map(|f| vec![Poly::one(dims), f.clone()])
            .collect();
        let mut out = Poly::zero(dims);
        for (m, c) in &self.terms {
            let mut t = Poly::monomial(
                dims,
                Monomial {
                    w: m.w.clone(),
                    z: MultiIndex::zeros(dims.n),
                },
                c.clone(),
            );
            for j in 0..dims.n {
                let e = m.z.get(j) as usize;
                while powers[j].len() <= e {
                    let next = &powers[j][powers[j].len() - 1] * &forms[j];
                    powers[j].push(next);
                }
                if e > 0 {
                    t = &t * &powers[j][e];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Exact division by `f` via lex division by a single divisor: the
    /// quotient when the remainder is zero, `NotDivisible` otherwise.
    pub fn exact_divide(&self, f: &Poly) -> Result<Poly> {
        self.dims.check(&f.dims)?;
        let (lm, lc) = f.leading_term().ok_or(Error::DivisionByZero)?;
        if let Some(c) = f.constant_value() {
            return Ok(self.scale(&c.recip()));
        }
        let mut rest = self.clone();
        let mut quotient = Poly::zero(self.dims);
        while let Some((m, c)) = rest.leading_term() {
            // A leading term lm(f) does not divide lands in the remainder
            // for good: later steps only touch smaller monomials.
            let q = lm.quotient_of(m).ok_or(Error::NotDivisible)?;
            let qc = c / lc;
            rest = &rest - &f.mul_monomial(&q, &qc);
            quotient.add_term(q, qc);
        }
        Ok(quotient)
    }

    /// Value at `w = 0`, `z = point`.
    pub fn eval_z(&self, point: &[Rational]) -> Rational {
        assert_eq!(
            point.len(),
            self.dims.n,
            "evaluation point has wrong dimension"
        );
        let mut acc = Rational::zero();
        for (m, c) in self.terms.iter().filter(|(m, _)| m.w.is_zero()) {
            let mut t = c.clone();
            for (j, &e) in m.z.as_slice().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[j].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Rescales so the leading coefficient is one.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Reinterprets the polynomial in larger dims (new variables absent).
    pub fn embed(&self, dims: Dims) -> Result<Poly> {
        if dims.n < self.dims.n || dims.p < self.dims.p {
            return Err(Error::DimensionMismatch {
                left: self.dims,
                right: dims,
            });
        }
        let pad = |idx: &MultiIndex, len: usize| {
            let mut v = idx.as_slice().to_vec();
            v.resize(len, 0);
            MultiIndex::new(v)
        };
        Ok(Poly {
            dims,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    (
                        Monomial {
                            z: pad(&m.z, dims.n),
                            w: pad(&m.w, dims.p),
                        },
                        c.clone(),
                    )
                })
                .collect(),
        })
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                m.fmt_vars(f)?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            /// Panics on a dimension mismatch; use the `checked_*` form to recover.
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("polynomial dimension mismatch")
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            dims: self.dims,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize, p: usize) -> Dims {
        Dims::new(n, p)
    }

    fn pp(s: &str, dims: Dims) -> Poly {
        Poly::parse(s, dims).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let dims = d(1, 1);
        let a = pp("w1 + z1", dims);
        let b = pp("w1 - z1", dims);
        assert_eq!(&a * &b, pp("w1^2 - z1^2", dims));
        assert_eq!(&Poly::zero(dims) + &a, a);
    }

    #[test]
    fn ideal_element_expansion() {
        let dims = d(2, 2);
        let f = pp("w1*z2 - w2*z1", dims);
        assert_eq!(&f * &Poly::w(dims, 0), pp("w1^2*z2 - w1*w2*z1", dims));
    }

    #[test]
    fn mismatched_dims_are_rejected() {
        let a = Poly::one(d(1, 1));
        let b = Poly::one(d(2, 1));
        assert!(matches!(
            a.checked_add(&b),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn partials() {
        let dims = d(1, 1);
        assert_eq!(pp("w1^3", dims).partial(Var::W(0)), pp("3*w1^2", dims));
        let dims = d(2, 2);
        assert_eq!(
            pp("w1*z2 - w2*z1", dims).partial(Var::Z(0)),
            pp("-w2", dims)
        );
        let f = pp("w1*w2", dims);
        assert_eq!(f.partial(Var::W(0)).partial(Var::W(1)), Poly::one(dims));
        assert_eq!(
            f.partial_multi(&MultiIndex::new(vec![1, 1]), &MultiIndex::zeros(2)),
            Poly::one(dims)
        );
    }

    #[test]
    fn restriction() {
        let dims = d(2, 2);
        assert_eq!(pp("w1 + z1", dims).restrict_w0(), pp("z1", dims));
        assert!(pp("w1^3", dims).restrict_w0().is_zero());
        assert!(pp("z1*w2 + z2*w1", dims).restrict_w0().is_zero());
    }

    #[test]
    fn tilt_substitution() {
        let dims = d(1, 1);
        let b = TiltMatrix::new(vec![vec![rat(1)]]).unwrap();
        assert_eq!(
            pp("z1", dims).substitute_tilt(&b).unwrap(),
            pp("z1 + w1", dims)
        );
        assert_eq!(pp("w1", dims).substitute_tilt(&b).unwrap(), pp("w1", dims));
        assert_eq!(
            pp("z1*w1", dims).substitute_tilt(&b).unwrap(),
            pp("z1*w1 + w1^2", dims)
        );
        let wrong = TiltMatrix::new(vec![vec![rat(1), rat(2)]]).unwrap();
        assert!(pp("z1", dims).substitute_tilt(&wrong).is_err());
    }

    #[test]
    fn exact_division() {
        let dims = d(2, 1);
        let f = pp("z1^2 + z2^2 - 1", dims);
        assert_eq!((&f * &f).exact_divide(&f).unwrap(), f);
        assert_eq!(
            (&f + &Poly::one(dims)).exact_divide(&f),
            Err(Error::NotDivisible)
        );
        let p = &(&pp("z1", dims) * &f) + &(&pp("w1", dims) * &f);
        assert_eq!(p.exact_divide(&f).unwrap(), pp("z1 + w1", dims));
        assert_eq!(
            p.exact_divide(&Poly::zero(dims)),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            pp("4*z1", dims).exact_divide(&pp("2", dims)).unwrap(),
            pp("2*z1", dims)
        );
    }

    #[test]
    fn degrees() {
        let dims = d(1, 1);
        assert_eq!(Poly::zero(dims).total_degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(pp("z1^2*w1 + 1", dims).total_degree(), Degree::Finite(3));
    }

    #[test]
    fn evaluation() {
        let dims = d(2, 1);
        let p = pp("3*z1^2*z2 - z2 + w1", dims);
        assert_eq!(p.eval_z(&[rat(2), ratio(1, 3)]), rat(4) - ratio(1, 3));
    }

    #[test]
    fn w_coefficients_split() {
        let dims = d(1, 2);
        let p = pp("z1*w1 + 2*w1 + z1^2 + w1*w2", dims);
        let c = p.w_coefficients();
        assert_eq!(c[&MultiIndex::new(vec![1, 0])], pp("z1 + 2", dims));
        assert_eq!(c[&MultiIndex::new(vec![0, 0])], pp("z1^2", dims));
        assert_eq!(c.len(), 3);
    }
}
