//! Exact linear algebra: dense Gauss–Jordan over ℚ, fraction-free (Bareiss)
//! elimination over ℚ[z] with back-substitution into ℚ(z), and a sparse
//! row-echelon span over monomial-indexed vectors.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Dims, Monomial, Poly, RatFunc, Rational};

pub fn identity(size: usize) -> Vec<Vec<Rational>> {
    (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "matrix shapes do not match");
            (0..cols)
                .map(|j| (0..inner).fold(Rational::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Exact inverse of a square matrix.
pub fn invert(mat: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let n = mat.len();
    if mat.iter().any(|r| r.len() != n) {
        return Err(Error::invalid("matrix is not square"));
    }
    let mut a: Vec<Vec<Rational>> = mat
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::SingularMatrix)?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            let pivot = a[col].clone();
            for (x, p) in a[r].iter_mut().zip(&pivot).skip(col) {
                *x -= &f * p;
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Row-reduces in place; returns pivot columns in row order.
fn rref(a: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i == r || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            let pivot_row = a[r].clone();
            for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

pub fn rank(mat: &[Vec<Rational>]) -> usize {
    let cols = mat.first().map_or(0, Vec::len);
    let mut a = mat.to_vec();
    rref(&mut a, cols).len()
}

/// A particular solution of `mat · x = rhs` (free unknowns set to zero),
/// or `None` if the system is inconsistent.
pub fn solve(mat: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(mat.len(), rhs.len());
    let cols = mat.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<Rational>> = mat
        .iter()
        .zip(rhs)
        .map(|(row, b)| row.iter().cloned().chain([b.clone()]).collect())
        .collect();
    let pivots = rref(&mut a, cols);
    if a[pivots.len()..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = a[r][cols].clone();
    }
    Some(x)
}

/// Result of fraction-free elimination: the transformed rows and the
/// `(row, column)` pivot positions.
#[derive(Clone, Debug)]
pub struct PolyEchelon {
    pub rows: Vec<Vec<Poly>>,
    pub pivots: Vec<(usize, usize)>,
}

/// Bareiss elimination over ℚ[z] on the first `elim_cols` columns.
///
/// The pivot for each column is the first remaining row, in the given row
/// order, with a nonzero entry; it is rotated up so the other rows keep
/// their relative order. Every division is exact because each entry is a
/// minor of the input.
pub fn fraction_free_echelon(
    mut rows: Vec<Vec<Poly>>,
    elim_cols: usize,
    dims: Dims,
) -> PolyEchelon {
    let total = rows.first().map_or(0, Vec::len);
    let mut prev = Poly::one(dims);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..elim_cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        let row = rows.remove(p);
        rows.insert(r, row);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let lead = row[col].clone();
            for j in col + 1..total {
                let mut e = &pivot_row[col] * &row[j];
                if !lead.is_zero() {
                    e = &e - &(&lead * &pivot_row[j]);
                }
                row[j] = if prev.is_one() {
                    e
                } else {
                    e.exact_divide(&prev).expect("Bareiss division is exact")
                };
            }
            row[col] = Poly::zero(dims);
        }
        prev = rows[r][col].clone();
        pivots.push((r, col));
        r += 1;
    }
    PolyEchelon { rows, pivots }
}

/// Solves `Σ_j a[i][j]·x_j = rhs[i]` over ℚ(z) for polynomial entries,
/// returning a particular solution (free unknowns zero) or `None`.
pub fn solve_over_fractions(a: &[Vec<Poly>], rhs: &[Poly], dims: Dims) -> Option<Vec<RatFunc>> {
    assert_eq!(a.len(), rhs.len());
    let cols = a.first().map_or(0, Vec::len);
    let rows: Vec<Vec<Poly>> = a
        .iter()
        .zip(rhs)
        .map(|(row, b)| row.iter().cloned().chain([b.clone()]).collect())
        .collect();
    let ech = fraction_free_echelon(rows, cols, dims);
    let rank = ech.pivots.len();
    if ech.rows[rank..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![RatFunc::zero(dims); cols];
    for &(r, c) in ech.pivots.iter().rev() {
        let row = &ech.rows[r];
        let mut acc = RatFunc::from_poly(row[cols].clone());
        for (j, xj) in x.iter().enumerate().skip(c + 1) {
            if !row[j].is_zero() && !xj.is_zero() {
                acc = &acc - &xj.mul_poly(&row[j]);
            }
        }
        let pivot = RatFunc::from_poly(row[c].clone());
        x[c] = acc
            .checked_div(&pivot)
            .expect("pivot is nonzero")
            .normalize();
    }
    Some(x)
}

/// Span of sparse vectors indexed by monomials, kept in echelon form with
/// pairwise distinct leading monomials (leading coefficient one).
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    pivots: BTreeMap<Monomial, Poly>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        SparseEchelon::default()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Top-reduces `v`; stops at the first leading monomial without a pivot.
    fn top_reduce(&self, mut v: Poly) -> Poly {
        while let Some((m, c)) = v.leading_term() {
            let Some(row) = self.pivots.get(m) else {
                break;
            };
            let c = -c.clone();
            v.add_scaled(row, &c);
        }
        v
    }

    /// Adds `v` to the span; false when it was already inside.
    pub fn insert(&mut self, v: Poly) -> bool {
        let v = self.top_reduce(v);
        match v.leading_term() {
            None => false,
            Some((m, c)) => {
                let m = m.clone();
                let v = v.scale(&c.recip());
                self.pivots.insert(m, v);
                true
            }
        }
    }

    pub fn contains(&self, v: &Poly) -> bool {
        self.top_reduce(v.clone()).is_zero()
    }
}
