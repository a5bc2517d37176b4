//! `O_U/J` as a module over functions of `z`: a monomial basis over ℚ(z),
//! coefficient representations in that basis, and the comparison of the
//! resulting pointwise norm with the operator norm.

use std::cmp::{Ordering, Reverse};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::diffop::{lcm_all, module_membership, Combination, DiffOp, OpKey};
use crate::error::{Error, Result};
use crate::linalg;
use crate::membership::{norm_eval, operator_bound_sq, sum_squares};
use crate::noetherian::{IdealSpec, NoetherianGens};
use crate::poly::{Dims, Monomial, MultiIndex, Poly, RatFunc, Rational};

/// Basis preference: lower degree first, then `w1` before `w2`.
fn preference(a: &MultiIndex, b: &MultiIndex) -> Ordering {
    (a.abs(), Reverse(a.as_slice())).cmp(&(b.abs(), Reverse(b.as_slice())))
}

#[derive(Clone, Debug)]
pub struct CMBasis {
    dims: Dims,
    /// Basis monomials `w^{α_j}` in preference order; the first is `1`.
    monomials: Vec<MultiIndex>,
    /// Every `w^γ` with `γ ≤ M`, in box order.
    columns: Vec<MultiIndex>,
    /// `reduction[c][j]`: coefficient of basis monomial `j` in `w^{columns[c]}` mod `J`.
    reduction: Vec<Vec<RatFunc>>,
    denominator_locus: Poly,
}

impl CMBasis {
    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn monomials(&self) -> &[MultiIndex] {
        &self.monomials
    }

    pub fn columns(&self) -> &[MultiIndex] {
        &self.columns
    }

    /// Coefficients of `w^γ` in the basis, for `γ ≤ M`.
    pub fn reduce(&self, gamma: &MultiIndex) -> Option<&[RatFunc]> {
        self.columns
            .iter()
            .position(|c| c == gamma)
            .map(|i| self.reduction[i].as_slice())
    }

    /// Monic polynomial off whose zero set the reduction is defined.
    pub fn denominator_locus(&self) -> &Poly {
        &self.denominator_locus
    }

    /// `L·Σ_j φ̂_j w^{α_j} − L·φ` with `L` the common denominator of the
    /// representation; lies in `J` when the representation is right.
    pub fn cleared_residual(&self, phi: &Poly) -> Result<Poly> {
        let coeffs = cm_represent(phi, self)?;
        let l = lcm_all(coeffs.iter().map(RatFunc::den), self.dims);
        let mut acc = -(&l * phi);
        for (c, alpha) in coeffs.iter().zip(&self.monomials) {
            let num = (c.num() * &l).exact_divide(c.den())?;
            acc = &acc
                + &num.mul_monomial(
                    &Monomial::new(MultiIndex::zeros(self.dims.n), alpha.clone()),
                    &Rational::one(),
                );
        }
        Ok(acc)
    }
}

impl fmt::Display for CMBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = MultiIndex::zeros(self.dims.n);
        let name = |a: &MultiIndex| Monomial::new(z.clone(), a.clone()).to_string();
        let names: Vec<String> = self.monomials.iter().map(name).collect();
        writeln!(f, "basis: {}", names.join(", "))?;
        for (gamma, row) in self.columns.iter().zip(&self.reduction) {
            let terms: Vec<String> = row
                .iter()
                .zip(&names)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, n)| {
                    if c.is_one() {
                        n.clone()
                    } else {
                        format!("{c}*{n}")
                    }
                })
                .collect();
            let rhs = if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            };
            writeln!(f, "{} -> {rhs}", name(gamma))?;
        }
        write!(f, "denominator locus: {}", self.denominator_locus)
    }
}

/// Row-reduces the relations `w^γ f_i` (truncated to `γ ≤ M`) over ℚ(z) on
/// the columns `w^γ`, least preferred first; the pivot-free columns form
/// the basis.
pub fn cm_basis(ideal: &IdealSpec) -> Result<CMBasis> {
    let dims = ideal.dims();
    let bound = ideal.m();
    let columns = MultiIndex::boxed(bound);
    let mut order: Vec<usize> = (0..columns.len()).collect();
    order.sort_by(|&a, &b| preference(&columns[b], &columns[a]));

    let mut rows = Vec::new();
    for gamma in &columns {
        let shift = Monomial::new(MultiIndex::zeros(dims.n), gamma.clone());
        for f in ideal.gens() {
            let r = f.mul_monomial(&shift, &Rational::one()).truncate_w(bound);
            if r.is_zero() {
                continue;
            }
            let coeffs = r.w_coefficients();
            rows.push(
                order
                    .iter()
                    .map(|&c| {
                        coeffs
                            .get(&columns[c])
                            .cloned()
                            .unwrap_or_else(|| Poly::zero(dims))
                    })
                    .collect(),
            );
        }
    }
    let width = order.len();
    let ech = linalg::fraction_free_echelon(rows, width, dims);

    // reduced[k]: coefficients over ordered columns
    let mut reduced: Vec<Option<Vec<RatFunc>>> = vec![None; width];
    let pivot_cols: Vec<usize> = ech.pivots.iter().map(|&(_, c)| c).collect();
    for k in 0..width {
        if !pivot_cols.contains(&k) {
            let mut unit = vec![RatFunc::zero(dims); width];
            unit[k] = RatFunc::one(dims);
            reduced[k] = Some(unit);
        }
    }
    for &(r, c) in ech.pivots.iter().rev() {
        let row = &ech.rows[r];
        let mut acc = vec![RatFunc::zero(dims); width];
        for j in c + 1..width {
            if row[j].is_zero() {
                continue;
            }
            let red = reduced[j]
                .as_ref()
                .expect("later columns are reduced first");
            for (a, x) in acc.iter_mut().zip(red) {
                if !x.is_zero() {
                    *a = &*a - &x.mul_poly(&row[j]);
                }
            }
        }
        let inv = RatFunc::from_poly(row[c].clone()).recip()?;
        reduced[c] = Some(acc.iter().map(|a| (a * &inv).normalize()).collect());
    }

    let mut basis_pos: Vec<usize> = (0..width).filter(|k| !pivot_cols.contains(k)).collect();
    basis_pos.sort_by(|&a, &b| preference(&columns[order[a]], &columns[order[b]]));
    let monomials: Vec<MultiIndex> = basis_pos
        .iter()
        .map(|&k| columns[order[k]].clone())
        .collect();
    if monomials.first().is_none_or(|m| !m.is_zero()) {
        return Err(Error::invalid("the ideal is generically the unit ideal"));
    }

    let mut reduction = vec![Vec::new(); columns.len()];
    for (k, &c) in order.iter().enumerate() {
        let red = reduced[k].as_ref().expect("all columns reduced");
        reduction[c] = basis_pos.iter().map(|&b| red[b].clone()).collect();
    }
    let denominator_locus = lcm_all(reduction.iter().flatten().map(RatFunc::den), dims);
    Ok(CMBasis {
        dims,
        monomials,
        columns,
        reduction,
        denominator_locus,
    })
}

/// Coefficients `φ̂_j(z)` with `φ ≡ Σ_j φ̂_j w^{α_j}` mod `J`.
pub fn cm_represent(phi: &Poly, basis: &CMBasis) -> Result<Vec<RatFunc>> {
    if phi.dims() != basis.dims {
        return Err(Error::DimensionMismatch {
            left: basis.dims,
            right: phi.dims(),
        });
    }
    let dims = basis.dims;
    let mut out = vec![RatFunc::zero(dims); basis.monomials.len()];
    for (gamma, coeff) in phi.w_coefficients() {
        let Some(row) = basis.reduce(&gamma) else {
            continue;
        };
        for (o, r) in out.iter_mut().zip(row) {
            if !r.is_zero() {
                *o = &*o + &r.mul_poly(&coeff);
            }
        }
    }
    Ok(out.iter().map(RatFunc::normalize).collect())
}

/// `Σ_j |φ̂_j(z0)|²`.
pub fn basic4_norm(phi: &Poly, basis: &CMBasis, point: &[Rational]) -> Result<Rational> {
    let values: Vec<Rational> = cm_represent(phi, basis)?
        .iter()
        .map(|c| c.eval(point))
        .collect::<Result<_>>()?;
    Ok(sum_squares(&values))
}

/// Operators `E_j = Σ_γ R_{γ,j}/γ! · ∂_w^γ` with `E_j φ = φ̂_j`.
pub fn coefficient_extractors(basis: &CMBasis) -> Vec<DiffOp> {
    let dims = basis.dims;
    (0..basis.monomials.len())
        .map(|j| {
            DiffOp::from_terms(
                dims,
                basis
                    .columns
                    .iter()
                    .zip(&basis.reduction)
                    .map(|(gamma, row)| {
                        let inv = Rational::new(BigInt::one(), gamma.factorial());
                        (
                            OpKey::new(gamma.clone(), MultiIndex::zeros(dims.n)),
                            row[j].scale(&inv),
                        )
                    }),
            )
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct DominationRow {
    pub phi: Poly,
    pub basic4_sq: Rational,
    pub normx_sq: Rational,
}

impl DominationRow {
    pub fn holds(&self, c_sq: &Rational) -> bool {
        self.basic4_sq <= c_sq * &self.normx_sq
    }
}

/// `basic4 ≤ C² · normX` at one point, with `C²` the operator-norm bound of
/// the matrix expressing the coefficient extractors through the generators.
#[derive(Clone, Debug)]
pub struct DominationReport {
    pub point: Vec<Rational>,
    pub c_sq: Rational,
    pub transition: Vec<Combination>,
    pub rows: Vec<DominationRow>,
}

impl DominationReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.holds(&self.c_sq))
    }
}

impl fmt::Display for DominationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pt = crate::poly::format_point(&self.point);
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(
                f,
                "{pt}; {}; {}; {}; {}",
                r.phi, r.basic4_sq, r.normx_sq, self.c_sq
            )?;
        }
        Ok(())
    }
}

pub fn domination(
    gens: &NoetherianGens,
    basis: &CMBasis,
    point: &[Rational],
    samples: &[Poly],
) -> Result<DominationReport> {
    let extractors = coefficient_extractors(basis);
    let transition: Vec<Combination> = extractors
        .iter()
        .map(|e| {
            module_membership(e, gens.ops()).ok_or_else(|| Error::NotEquivalent {
                witness: e.to_string(),
            })
        })
        .collect::<Result<_>>()?;
    let mat: Vec<Vec<Rational>> = transition
        .iter()
        .map(|c| {
            c.coeffs
                .iter()
                .map(|h| h.eval(point))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let c_sq = operator_bound_sq(&mat);
    let rows = samples
        .iter()
        .map(|phi| {
            Ok(DominationRow {
                phi: phi.clone(),
                basic4_sq: basic4_norm(phi, basis, point)?,
                normx_sq: norm_eval(phi, gens, point)?.squared,
            })
        })
        .collect::<Result<_>>()?;
    Ok(DominationReport {
        point: point.to_vec(),
        c_sq,
        transition,
        rows,
    })
}
