//! Multivariate gcd over ℚ by the recursive primitive polynomial remainder
//! sequence. Adequate for the small denominators met in operator
//! coefficients; no attempt at modular or heuristic speedups.

use num_traits::One;

use super::{Degree, Monomial, Poly, Rational, Var};

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.dims());
    }
    let x = a
        .dims()
        .vars()
        .find(|&v| a.contains_var(v) || b.contains_var(v))
        .expect("non-constant polynomial has a variable");
    if !a.contains_var(x) {
        return gcd(a, &content(b, x));
    }
    if !b.contains_var(x) {
        return gcd(&content(a, x), b);
    }
    let (ca, cb) = (content(a, x), content(b, x));
    let pa = a.exact_divide(&ca).expect("content divides");
    let pb = b.exact_divide(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let g = primitive_prs(pa, pb, x);
    (&c * &g).monic()
}

fn degree_in(p: &Poly, x: Var) -> u32 {
    match p.degree_in(x) {
        Degree::Finite(d) => d,
        Degree::NegInfinity => 0,
    }
}

/// gcd of the coefficients of `p` viewed as a polynomial in `x`.
fn content(p: &Poly, x: Var) -> Poly {
    let mut acc = Poly::zero(p.dims());
    for c in p.coefficients_in(x).into_values() {
        acc = gcd(&acc, &c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive_part(p: &Poly, x: Var) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    p.exact_divide(&content(p, x)).expect("content divides")
}

fn leading_coeff(p: &Poly, x: Var) -> Poly {
    p.coefficients_in(x)
        .into_iter()
        .next_back()
        .map(|(_, c)| c)
        .unwrap_or_else(|| Poly::zero(p.dims()))
}

/// `lc(b)^k · a mod b` in `x`, for the smallest useful `k`.
fn pseudo_remainder(a: &Poly, b: &Poly, x: Var) -> Poly {
    let db = degree_in(b, x);
    let lcb = leading_coeff(b, x);
    let mut r = a.clone();
    while !r.is_zero() && r.contains_var(x) && degree_in(&r, x) >= db {
        let e = degree_in(&r, x) - db;
        let lcr = leading_coeff(&r, x);
        let mut shift = Monomial::one(r.dims());
        shift.set_exp(x, e);
        let t = &lcr * &b.mul_monomial(&shift, &Rational::one());
        r = &(&r * &lcb) - &t;
    }
    r
}

fn primitive_prs(a: Poly, b: Poly, x: Var) -> Poly {
    let (mut a, mut b) = if degree_in(&a, x) >= degree_in(&b, x) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        let r = pseudo_remainder(&a, &b, x);
        if r.is_zero() {
            return primitive_part(&b, x);
        }
        if !r.contains_var(x) {
            return Poly::one(a.dims());
        }
        a = b;
        b = primitive_part(&r, x);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Dims;

    fn pp(s: &str) -> Poly {
        Poly::parse(s, Dims::new(3, 0)).unwrap()
    }

    #[test]
    fn shared_factor() {
        let g = pp("z1*z2 - z3 + 2");
        let a = &g * &pp("z1 + z2^2");
        let b = &g * &pp("z1 - 3*z3");
        assert_eq!(gcd(&a, &b), g.monic());
    }

    #[test]
    fn coprime_and_trivial() {
        assert!(gcd(&pp("z1 + 1"), &pp("z1 - 1")).is_one());
        assert_eq!(gcd(&pp("0"), &pp("2*z2")), pp("z2"));
        assert!(gcd(&pp("3"), &pp("z1")).is_one());
        assert!(gcd(&pp("0"), &pp("0")).is_zero());
    }

    #[test]
    fn content_in_other_variables() {
        let a = pp("z2*z1^2 + z2*z1");
        let b = pp("z2^2*z1");
        assert_eq!(gcd(&a, &b), pp("z1*z2"));
    }
}
