//! Ideal membership through Noetherian operators, a bounded-degree cofactor
//! oracle to cross-check it, pointwise squared norms, norm equivalence
//! certificates and the extension test for punctured functions.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::diffop::{module_membership, Combination, DiffOp};
use crate::error::{Error, Result};
use crate::linalg::SparseEchelon;
use crate::noetherian::{IdealSpec, NoetherianGens};
use crate::poly::{Dims, Monomial, Poly, RatFunc, Rational};

/// Outcome of a membership test; `witness` is the first operator index with
/// a nonzero value, and that value.
#[derive(Clone, Debug, PartialEq)]
pub struct MembershipVerdict {
    pub member: bool,
    pub witness: Option<(usize, RatFunc)>,
}

/// `φ ∈ J` iff every generator annihilates `φ` on `Z`.
pub fn ideal_member(phi: &Poly, gens: &NoetherianGens) -> Result<MembershipVerdict> {
    for (i, op) in gens.ops().iter().enumerate() {
        let v = op.apply(phi)?;
        if !v.is_zero() {
            return Ok(MembershipVerdict {
                member: false,
                witness: Some((i, v)),
            });
        }
    }
    Ok(MembershipVerdict {
        member: true,
        witness: None,
    })
}

/// Membership in `⟨f²⟩` on an undivided block: `f` must divide the value of
/// every operator of [`crate::noetherian::kollekt_gens`].
pub fn kollekt_member(phi: &Poly, f: &Poly, gens: &NoetherianGens) -> Result<MembershipVerdict> {
    for (i, op) in gens.ops().iter().enumerate() {
        let v = op.apply_poly(phi)?;
        match v.exact_divide(f) {
            Ok(_) => {}
            Err(Error::NotDivisible) => {
                return Ok(MembershipVerdict {
                    member: false,
                    witness: Some((i, RatFunc::from_poly(v))),
                })
            }
            Err(e) => return Err(e),
        }
    }
    Ok(MembershipVerdict {
        member: true,
        witness: None,
    })
}

/// Spans `{g · f_i : deg g ≤ D}` for growing `D`, kept per degree so that
/// repeated queries reuse the elimination.
#[derive(Clone, Debug)]
pub struct CofactorOracle {
    dims: Dims,
    gens: Vec<Poly>,
    spans: Vec<SparseEchelon>,
}

impl CofactorOracle {
    pub fn new(gens: &[Poly]) -> Self {
        let dims = gens.first().map_or(Dims::new(0, 0), Poly::dims);
        CofactorOracle {
            dims,
            gens: gens.to_vec(),
            spans: Vec::new(),
        }
    }

    fn span(&mut self, bound: u32) -> &SparseEchelon {
        while self.spans.len() <= bound as usize {
            let d = self.spans.len() as u32;
            let mut span = self.spans.last().cloned().unwrap_or_default();
            let multipliers = Monomial::up_to_degree(self.dims, d)
                .into_iter()
                .filter(|m| m.degree() == d);
            for mono in multipliers {
                for f in &self.gens {
                    span.insert(f.mul_monomial(&mono, &Rational::one()));
                }
            }
            self.spans.push(span);
        }
        &self.spans[bound as usize]
    }

    /// True when cofactors of degree `≤ bound` exist. False only means
    /// none were found at this bound.
    pub fn contains(&mut self, phi: &Poly, bound: u32) -> bool {
        if phi.is_zero() {
            return true;
        }
        if phi.dims() != self.dims {
            return false;
        }
        self.span(bound).contains(phi)
    }
}

/// One-shot form of [`CofactorOracle::contains`].
pub fn cofactor_member(phi: &Poly, ideal: &IdealSpec, bound: u32) -> bool {
    CofactorOracle::new(ideal.gens()).contains(phi, bound)
}

/// `Σ_j |(L_j φ)(z0)|²` for a generator family.
#[derive(Clone, Debug, PartialEq)]
pub struct NormValue {
    pub squared: Rational,
    pub point: Vec<Rational>,
    pub gens_id: String,
}

impl NormValue {
    /// The square root truncated to `digits` decimals.
    pub fn sqrt_display(&self, digits: usize) -> String {
        sqrt_decimal(&self.squared, digits)
    }
}

/// `√q` truncated to `digits` decimals, for `q ≥ 0`.
pub fn sqrt_decimal(q: &Rational, digits: usize) -> String {
    assert!(!q.is_negative(), "square root of a negative number");
    let scale = num_traits::pow(BigInt::from(10), 2 * digits);
    let root = ((q.numer() * scale) / q.denom()).sqrt();
    let s = root.to_string();
    if digits == 0 {
        return s;
    }
    let s = format!("{s:0>width$}", width = digits + 1);
    let (int, frac) = s.split_at(s.len() - digits);
    format!("{int}.{frac}")
}

pub fn norm_eval(phi: &Poly, gens: &NoetherianGens, point: &[Rational]) -> Result<NormValue> {
    let values = operator_values(gens.ops(), phi, point)?;
    Ok(NormValue {
        squared: sum_squares(&values),
        point: point.to_vec(),
        gens_id: gens.label().to_string(),
    })
}

/// `(L_j φ)(z0)` for each operator.
pub fn operator_values(ops: &[DiffOp], phi: &Poly, point: &[Rational]) -> Result<Vec<Rational>> {
    ops.iter().map(|op| op.apply(phi)?.eval(point)).collect()
}

pub fn sum_squares(values: &[Rational]) -> Rational {
    values.iter().fold(Rational::zero(), |acc, v| acc + v * v)
}

/// Squared operator-norm bound `C²` of a matrix: the smaller of the
/// Frobenius bound and the Schur bound (max row sum times max column sum
/// of absolute values).
pub fn operator_bound_sq(mat: &[Vec<Rational>]) -> Rational {
    let frob = mat
        .iter()
        .flatten()
        .fold(Rational::zero(), |acc, x| acc + x * x);
    let cols = mat.first().map_or(0, Vec::len);
    let row_max = mat
        .iter()
        .map(|r| r.iter().fold(Rational::zero(), |a, x| a + x.abs()))
        .max();
    let col_max = (0..cols)
        .map(|j| mat.iter().fold(Rational::zero(), |a, r| a + r[j].abs()))
        .max();
    let schur = match (row_max, col_max) {
        (Some(r), Some(c)) => r * c,
        _ => Rational::zero(),
    };
    frob.min(schur)
}

/// Each operator of `from` written over `onto`.
fn transition(from: &NoetherianGens, onto: &NoetherianGens) -> Result<Vec<Combination>> {
    from.ops()
        .iter()
        .map(|op| {
            module_membership(op, onto.ops()).ok_or_else(|| Error::NotEquivalent {
                witness: op.to_string(),
            })
        })
        .collect()
}

/// Transition matrices both ways between two generator families:
/// `a_i = Σ_j a_to_b[i][j] · b_j` and `b_i = Σ_j b_to_a[i][j] · a_j`.
#[derive(Clone, Debug)]
pub struct NormEquivalence {
    pub a_to_b: Vec<Combination>,
    pub b_to_a: Vec<Combination>,
    /// Both transitions are defined off the zero set of this polynomial.
    pub locus: Poly,
}

/// Squared constants at one point: `|φ|_A² ≤ a_le_b · |φ|_B²` and
/// `|φ|_B² ≤ b_le_a · |φ|_A²`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceBounds {
    pub a_le_b: Rational,
    pub b_le_a: Rational,
}

fn evaluate(rows: &[Combination], point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    rows.iter()
        .map(|c| c.coeffs.iter().map(|h| h.eval(point)).collect())
        .collect()
}

impl NormEquivalence {
    pub fn bounds_at(&self, point: &[Rational]) -> Result<EquivalenceBounds> {
        Ok(EquivalenceBounds {
            a_le_b: operator_bound_sq(&evaluate(&self.a_to_b, point)?),
            b_le_a: operator_bound_sq(&evaluate(&self.b_to_a, point)?),
        })
    }

    pub fn a_to_b_at(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        evaluate(&self.a_to_b, point)
    }

    pub fn b_to_a_at(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        evaluate(&self.b_to_a, point)
    }
}

pub fn norm_equiv(a: &NoetherianGens, b: &NoetherianGens) -> Result<NormEquivalence> {
    if a.dims() != b.dims() {
        return Err(Error::DimensionMismatch {
            left: a.dims(),
            right: b.dims(),
        });
    }
    let a_to_b = transition(a, b)?;
    let b_to_a = transition(b, a)?;
    let dims = a.dims();
    let dens: Vec<Poly> = a_to_b
        .iter()
        .chain(&b_to_a)
        .map(|c| c.denominator_locus(dims))
        .collect();
    let locus = crate::diffop::lcm_all(dens.iter(), dims);
    Ok(NormEquivalence {
        a_to_b,
        b_to_a,
        locus,
    })
}

/// `φ = φ0 + (h/z1)·w1` on the part of the punctured space where `z1 ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct PuncturedFunction {
    pub phi0: Poly,
    pub h: Poly,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExtensionResult {
    /// `h = c1·z1 + c2·z2`, extended by `φ0 + c1·w1 + c2·w2`.
    Extends {
        c1: Poly,
        c2: Poly,
        representative: Poly,
    },
    NoExtension,
}

/// Extends across the origin iff `h(0) = 0`, splitting `h` as
/// (terms containing `z1`)/`z1` · `z1` + rest/`z2` · `z2`.
pub fn extension_test(pf: &PuncturedFunction) -> Result<ExtensionResult> {
    let dims = pf.h.dims();
    if dims.n != 2 || dims.p != 2 {
        return Err(Error::invalid(format!(
            "extension test needs dims (2,2), got {dims}"
        )));
    }
    if pf.phi0.dims() != dims {
        return Err(Error::DimensionMismatch {
            left: dims,
            right: pf.phi0.dims(),
        });
    }
    if !pf.h.is_z_only() || !pf.phi0.is_z_only() {
        return Err(Error::invalid("phi0 and h must only involve z"));
    }
    if !pf.h.constant_term().is_zero() {
        return Ok(ExtensionResult::NoExtension);
    }
    let z1 = crate::poly::Var::Z(0);
    let (with_z1, rest): (Vec<_>, Vec<_>) =
        pf.h.terms()
            .map(|(m, c)| (m.clone(), c.clone()))
            .partition(|(m, _)| m.exp(z1) > 0);
    let c1 = Poly::from_terms(dims, with_z1).exact_divide(&Poly::z(dims, 0))?;
    let c2 = Poly::from_terms(dims, rest).exact_divide(&Poly::z(dims, 1))?;
    let representative = &(&pf.phi0 + &(&c1 * &Poly::w(dims, 0))) + &(&c2 * &Poly::w(dims, 1));
    Ok(ExtensionResult::Extends {
        c1,
        c2,
        representative,
    })
}

impl ExtensionResult {
    /// Checks `z_k (ext − φ0) − h·w_k ∈ J` for `k = 1, 2` with the cofactor
    /// oracle at `bound`.
    pub fn round_trip(
        &self,
        pf: &PuncturedFunction,
        oracle: &mut CofactorOracle,
        bound: u32,
    ) -> bool {
        let ExtensionResult::Extends { representative, .. } = self else {
            return false;
        };
        let dims = pf.h.dims();
        let diff = representative - &pf.phi0;
        (0..2).all(|k| {
            let t = &(&Poly::z(dims, k) * &diff) - &(&pf.h * &Poly::w(dims, k));
            oracle.contains(&t, bound)
        })
    }
}

impl fmt::Display for ExtensionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionResult::Extends {
                c1,
                c2,
                representative,
            } => {
                write!(f, "extends c1={c1} c2={c2} representative={representative}")
            }
            ExtensionResult::NoExtension => write!(f, "no extension"),
        }
    }
}
