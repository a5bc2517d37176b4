use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{gcd, Dims, Poly, Rational};
use crate::error::{Error, Result};

/// Quotient of two z-only polynomials.
///
/// Not kept in lowest terms; [`RatFunc::normalize`] cancels the gcd on
/// request. Equality is cross-multiplication, so it never depends on
/// whether either side was normalized.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.dims() != den.dims() {
            return Err(Error::DimensionMismatch {
                left: num.dims(),
                right: den.dims(),
            });
        }
        if !num.is_z_only() || !den.is_z_only() {
            return Err(Error::invalid("rational function with a w-variable"));
        }
        Ok(RatFunc { num, den }.tidy())
    }

    pub fn zero(dims: Dims) -> Self {
        RatFunc {
            num: Poly::zero(dims),
            den: Poly::one(dims),
        }
    }

    pub fn one(dims: Dims) -> Self {
        RatFunc {
            num: Poly::one(dims),
            den: Poly::one(dims),
        }
    }

    pub fn constant(dims: Dims, c: Rational) -> Self {
        RatFunc {
            num: Poly::constant(dims, c),
            den: Poly::one(dims),
        }
    }

    /// Panics if `p` has a w-variable.
    pub fn from_poly(p: Poly) -> Self {
        assert!(p.is_z_only(), "rational function with a w-variable");
        let dims = p.dims();
        RatFunc {
            num: p,
            den: Poly::one(dims),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn dims(&self) -> Dims {
        self.num.dims()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The polynomial this equals, if the denominator divides the numerator.
    pub fn to_poly(&self) -> Option<Poly> {
        self.num.exact_divide(&self.den).ok()
    }

    /// Folds a constant denominator into the numerator.
    fn tidy(self) -> Self {
        if self.num.is_zero() {
            return RatFunc::zero(self.num.dims());
        }
        match self.den.constant_value() {
            Some(c) if !c.is_one() => {
                let dims = self.num.dims();
                RatFunc {
                    num: self.num.scale(&c.recip()),
                    den: Poly::one(dims),
                }
            }
            _ => self,
        }
    }

    /// Cancels the gcd of numerator and denominator and makes the
    /// denominator monic.
    pub fn normalize(&self) -> RatFunc {
        if self.den.is_constant() {
            return self.clone().tidy();
        }
        let g = gcd(&self.num, &self.den);
        let num = self.num.exact_divide(&g).expect("gcd divides numerator");
        let den = self.den.exact_divide(&g).expect("gcd divides denominator");
        let lc = den
            .leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::one);
        RatFunc {
            num: num.scale(&lc.recip()),
            den: den.scale(&lc.recip()),
        }
        .tidy()
    }

    pub fn checked_add(&self, other: &RatFunc) -> Result<RatFunc> {
        if self.den == other.den {
            return Ok(RatFunc {
                num: self.num.checked_add(&other.num)?,
                den: self.den.clone(),
            }
            .tidy());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let num = (&self.num * &other.den).checked_add(&(&other.num * &self.den))?;
        Ok(RatFunc {
            num,
            den: &self.den * &other.den,
        }
        .tidy())
    }

    pub fn checked_mul(&self, other: &RatFunc) -> Result<RatFunc> {
        if self.is_zero() || other.is_zero() {
            return Ok(RatFunc::zero(self.dims()));
        }
        let num = self.num.checked_mul(&other.num)?;
        let den = if other.den.is_one() {
            self.den.clone()
        } else if self.den.is_one() {
            other.den.clone()
        } else {
            &self.den * &other.den
        };
        Ok(RatFunc { num, den }.tidy())
    }

    pub fn recip(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc {
            num: self.den.clone(),
            den: self.num.clone(),
        }
        .tidy())
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc> {
        self.checked_mul(&other.recip()?)
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
        .tidy()
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFunc {
        RatFunc {
            num: &self.num * p,
            den: self.den.clone(),
        }
        .tidy()
    }

    /// Value at a point of `Z`.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let d = self.den.eval_z(point);
        if d.is_zero() {
            return Err(Error::DenominatorVanishes {
                point: format_point(point),
            });
        }
        Ok(self.num.eval_z(point) / d)
    }
}

/// `(x1,…,xn)` with exact rationals.
pub fn format_point(point: &[Rational]) -> String {
    let parts: Vec<String> = point.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFunc {}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                let f: fn(&RatFunc, &RatFunc) -> RatFunc = $body;
                f(self, rhs)
            }
        }
        impl $trait<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a
    .checked_add(b)
    .expect("rational function dimension mismatch"));
forward_binop!(Sub, sub, |a, b| a
    .checked_add(&-b)
    .expect("rational function dimension mismatch"));
forward_binop!(Mul, mul, |a, b| a
    .checked_mul(b)
    .expect("rational function dimension mismatch"));

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}
