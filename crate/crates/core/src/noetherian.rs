//! Generating sets of Noetherian operators built from Coleff–Herrera data
//! `(a, M)` and from tilted submersions, plus the Vandermonde machinery
//! that converts between the two.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::diffop::{noetherian_check, power_compose, DiffOp, OpKey, TiltMatrix};
use crate::error::{Error, Result};
use crate::linalg;
use crate::membership::CofactorOracle;
use crate::poly::{simplex_count, Dims, Monomial, MultiIndex, Poly, RatFunc, Rational};

/// An ideal `J = ⟨f_1, …, f_r⟩` together with `M` such that
/// `w_k^{M_k + 1} ∈ J` for every `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealSpec {
    dims: Dims,
    gens: Vec<Poly>,
    m: MultiIndex,
    asserted: bool,
}

impl IdealSpec {
    /// Trusts the caller that `w^{M+1} ⊆ J`.
    pub fn asserted(gens: Vec<Poly>, m: MultiIndex) -> Result<Self> {
        let dims = match gens.first() {
            Some(f) => f.dims(),
            None => return Err(Error::invalid("an ideal needs at least one generator")),
        };
        if let Some(f) = gens.iter().find(|f| f.dims() != dims) {
            return Err(Error::DimensionMismatch {
                left: dims,
                right: f.dims(),
            });
        }
        if m.len() != dims.p {
            return Err(Error::invalid(format!(
                "M has {} entries but p = {}",
                m.len(),
                dims.p
            )));
        }
        Ok(IdealSpec {
            dims,
            gens,
            m,
            asserted: true,
        })
    }

    /// Confirms each `w_k^{M_k+1} ∈ J` with cofactors of degree at most
    /// `degree_bound`.
    pub fn certified(gens: Vec<Poly>, m: MultiIndex, degree_bound: u32) -> Result<Self> {
        let mut spec = IdealSpec::asserted(gens, m)?;
        let mut oracle = CofactorOracle::new(&spec.gens);
        for k in 0..spec.dims.p {
            let target = Poly::w(spec.dims, k).pow(spec.m.get(k) + 1);
            if !oracle.contains(&target, degree_bound) {
                return Err(Error::invalid(format!(
                    "could not certify {target} in the ideal with cofactors of degree <= {degree_bound}"
                )));
            }
        }
        spec.asserted = false;
        Ok(spec)
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn m(&self) -> &MultiIndex {
        &self.m
    }

    pub fn is_asserted(&self) -> bool {
        self.asserted
    }
}

/// Density `a` against the monomial residue of order `M`.
#[derive(Clone, Debug, PartialEq)]
pub struct CHDatum {
    a: Poly,
    m: MultiIndex,
}

impl CHDatum {
    pub fn new(a: Poly, m: MultiIndex) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::invalid("density a must be nonzero"));
        }
        if m.len() != a.dims().p {
            return Err(Error::invalid(format!(
                "M has {} entries but p = {}",
                m.len(),
                a.dims().p
            )));
        }
        Ok(CHDatum { a, m })
    }

    pub fn a(&self) -> &Poly {
        &self.a
    }

    pub fn m(&self) -> &MultiIndex {
        &self.m
    }
}

/// Where a generator came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// `∂_z^β ∂_w^m (a_datum · φ)` at `w = 0`.
    Datum {
        datum: usize,
        m: MultiIndex,
        beta: MultiIndex,
    },
    /// `(1/M!) (∂/∂η)^M (w^γ a_datum φ)` at `w = 0` for tilt number `tilt`.
    Tilt {
        datum: usize,
        gamma: MultiIndex,
        tilt: usize,
    },
    /// Identity (`None`) or `∂/∂z_k` on an undivided ambient block.
    Ambient { partial: Option<usize> },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Datum { datum, m, beta } => {
                write!(f, "datum={} m={m} beta={beta}", datum + 1)
            }
            Provenance::Tilt { datum, gamma, tilt } => {
                write!(f, "datum={} gamma={gamma} tilt={}", datum + 1, tilt + 1)
            }
            Provenance::Ambient { partial: None } => write!(f, "identity"),
            Provenance::Ambient { partial: Some(k) } => write!(f, "partial={}", k + 1),
        }
    }
}

/// An indexed family of expanded Noetherian operators.
#[derive(Clone, Debug)]
pub struct NoetherianGens {
    dims: Dims,
    label: String,
    ops: Vec<DiffOp>,
    provenance: Vec<Provenance>,
}

impl NoetherianGens {
    pub fn new(
        dims: Dims,
        label: impl Into<String>,
        items: Vec<(DiffOp, Provenance)>,
    ) -> Result<Self> {
        if let Some((op, _)) = items.iter().find(|(op, _)| op.dims() != dims) {
            return Err(Error::DimensionMismatch {
                left: dims,
                right: op.dims(),
            });
        }
        let (ops, provenance) = items.into_iter().map(|(op, p)| (op.expand(), p)).unzip();
        Ok(NoetherianGens {
            dims,
            label: label.into(),
            ops,
            provenance,
        })
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    /// Short identifier of the construction, carried into norm values.
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ops(&self) -> &[DiffOp] {
        &self.ops
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DiffOp, &Provenance)> {
        self.ops.iter().zip(&self.provenance)
    }

    pub fn find(&self, provenance: &Provenance) -> Option<&DiffOp> {
        self.iter()
            .find(|(_, p)| *p == provenance)
            .map(|(op, _)| op)
    }

    /// Fails with the first operator that is not Noetherian for `ideal`.
    pub fn verify(&self, ideal: &IdealSpec) -> Result<()> {
        for (i, (op, prov)) in self.iter().enumerate() {
            let check = noetherian_check(op, ideal)?;
            if let Some((g, mono, value)) = check.witness {
                return Err(Error::VerificationFailed {
                    index: i,
                    detail: format!("{prov}: {op} maps {mono}*f{} to {value}", g + 1),
                });
            }
        }
        Ok(())
    }
}

fn check_data(data: &[CHDatum], ideal: &IdealSpec) -> Result<()> {
    if data.is_empty() {
        return Err(Error::invalid("no Coleff-Herrera data given"));
    }
    for (i, d) in data.iter().enumerate() {
        if d.a.dims() != ideal.dims() {
            return Err(Error::DimensionMismatch {
                left: ideal.dims(),
                right: d.a.dims(),
            });
        }
        if !d.m.le(ideal.m()) {
            return Err(Error::invalid(format!(
                "datum {} has M = {} above the ideal's {}",
                i + 1,
                d.m,
                ideal.m()
            )));
        }
    }
    Ok(())
}

/// `L_{m,β,k} φ = ∂_z^β ∂_w^m (a_k φ)(z, 0)` for `m ≤ M_k`, `|β| ≤ |M_k − m|`.
pub fn gens_from_ch(data: &[CHDatum], ideal: &IdealSpec) -> Result<NoetherianGens> {
    check_data(data, ideal)?;
    let dims = ideal.dims();
    let mut items = Vec::new();
    for (k, d) in data.iter().enumerate() {
        let total = d.m.abs();
        for m in MultiIndex::boxed(&d.m) {
            for beta in MultiIndex::simplex(dims.n, total - m.abs()) {
                let op = DiffOp::derivative(dims, m.clone(), beta.clone()).precompose_mult(&d.a)?;
                items.push((
                    op,
                    Provenance::Datum {
                        datum: k,
                        m: m.clone(),
                        beta,
                    },
                ));
            }
        }
    }
    let gens = NoetherianGens::new(dims, "ch", items)?;
    gens.verify(ideal)?;
    Ok(gens)
}

/// `(1/M_k!) (∂/∂η^T)^{M_k} (w^γ a_k φ)(z, 0)` for every datum, `γ ≤ M_k`
/// and tilt `T`.
pub fn gens_from_tilts(
    data: &[CHDatum],
    ideal: &IdealSpec,
    tilts: &[TiltMatrix],
) -> Result<NoetherianGens> {
    check_data(data, ideal)?;
    let dims = ideal.dims();
    check_tilts(dims, tilts)?;
    let derivs: Vec<Vec<DiffOp>> = tilts
        .iter()
        .map(|t| (0..dims.p).map(|k| t.derivative(k)).collect())
        .collect();
    let mut items = Vec::new();
    for (k, d) in data.iter().enumerate() {
        let inv_fact = Rational::new(BigInt::one(), d.m.factorial());
        let inv_fact = RatFunc::constant(dims, inv_fact);
        for gamma in MultiIndex::boxed(&d.m) {
            let mult = &Poly::monomial(
                dims,
                Monomial::new(MultiIndex::zeros(dims.n), gamma.clone()),
                Rational::one(),
            ) * &d.a;
            for (l, ds) in derivs.iter().enumerate() {
                let op = power_compose(ds, &d.m)?
                    .scale(&inv_fact)
                    .precompose_mult(&mult)?;
                items.push((
                    op,
                    Provenance::Tilt {
                        datum: k,
                        gamma: gamma.clone(),
                        tilt: l,
                    },
                ));
            }
        }
    }
    let gens = NoetherianGens::new(dims, format!("tilts({})", tilts.len()), items)?;
    gens.verify(ideal)?;
    Ok(gens)
}

fn check_tilts(dims: Dims, tilts: &[TiltMatrix]) -> Result<()> {
    if tilts.is_empty() {
        return Err(Error::invalid("no tilts given"));
    }
    for t in tilts {
        if t.rows() != dims.p || t.cols() != dims.n {
            return Err(Error::invalid(format!(
                "tilt {t} is not {} x {}",
                dims.p, dims.n
            )));
        }
    }
    Ok(())
}

/// Operators `{1, ∂/∂z_1, …, ∂/∂z_N}` on an undivided block of `N`
/// variables, for the ideal `⟨f²⟩`.
pub fn kollekt_gens(f: &Poly) -> Result<NoetherianGens> {
    let dims = f.dims();
    if dims.p != 0 {
        return Err(Error::invalid(
            "expected an undivided variable block (p = 0)",
        ));
    }
    if f.is_zero() {
        return Err(Error::invalid("f must be nonzero"));
    }
    let mut items = vec![(
        DiffOp::identity(dims),
        Provenance::Ambient { partial: None },
    )];
    for k in 0..dims.n {
        items.push((
            DiffOp::derivative(dims, MultiIndex::zeros(0), MultiIndex::unit(dims.n, k)),
            Provenance::Ambient { partial: Some(k) },
        ));
    }
    NoetherianGens::new(dims, "kollekt", items)
}

/// Rows `((b^ℓ)^α)_α` with `α` over `|α| ≤ degree` in graded order.
pub fn vandermonde_matrix(points: &[Vec<Rational>], degree: u32) -> Vec<Vec<Rational>> {
    let n = points.first().map_or(0, Vec::len);
    let alphas = MultiIndex::simplex(n, degree);
    points
        .iter()
        .map(|b| alphas.iter().map(|a| point_power(b, a)).collect())
        .collect()
}

fn point_power(b: &[Rational], alpha: &MultiIndex) -> Rational {
    b.iter()
        .zip(alpha.as_slice())
        .fold(Rational::one(), |acc, (x, &e)| {
            acc * num_traits::pow(x.clone(), e as usize)
        })
}

/// Exact inverse of the square Vandermonde matrix of `points` at `degree`.
pub fn vandermonde_solve(points: &[Vec<Rational>], degree: u32) -> Result<Vec<Vec<Rational>>> {
    let n = points.first().map_or(0, Vec::len);
    if points.iter().any(|b| b.len() != n) {
        return Err(Error::invalid("points have different lengths"));
    }
    let need = simplex_count(n, degree);
    if points.len() != need {
        return Err(Error::invalid(format!(
            "{} points given, degree {degree} needs {need}",
            points.len()
        )));
    }
    linalg::invert(&vandermonde_matrix(points, degree))
}

/// Deterministic points of `ℚ^n` whose Vandermonde matrix at `degree`
/// has full rank.
///
/// Candidates are `(ℓ, ℓ², …, ℓⁿ)` for `ℓ = 0, 1, 2, …` followed by the
/// lattice points `{α : |α| ≤ degree}`; a candidate is kept only if it
/// raises the rank. The lattice points alone are unisolvent, so the scan
/// always succeeds. If `count` exceeds the number needed, further unused
/// curve points are appended.
pub fn generic_points(n: usize, degree: u32, count: usize) -> Vec<Vec<Rational>> {
    let need = simplex_count(n, degree);
    let curve = |l: usize| -> Vec<Rational> {
        (1..=n)
            .map(|e| Rational::from_integer(num_traits::pow(BigInt::from(l), e)))
            .collect()
    };
    let lattice = MultiIndex::simplex(n, degree).into_iter().map(|a| {
        a.as_slice()
            .iter()
            .map(|&x| Rational::from_integer(BigInt::from(x)))
            .collect()
    });
    let mut chosen: Vec<Vec<Rational>> = Vec::new();
    let mut rank = 0;
    for cand in (0..need).map(curve).chain(lattice) {
        if chosen.len() == count || rank == need {
            break;
        }
        if chosen.contains(&cand) {
            continue;
        }
        chosen.push(cand);
        let r = linalg::rank(&vandermonde_matrix(&chosen, degree));
        if r > rank {
            rank = r;
        } else {
            chosen.pop();
        }
    }
    let mut l = 0;
    while chosen.len() < count {
        let cand = curve(l);
        if !chosen.contains(&cand) {
            chosen.push(cand);
        }
        l += 1;
    }
    chosen
}

/// Every `p`-tuple of `points` as the rows of a tilt, first row slowest.
pub fn tilt_grid(dims: Dims, points: &[Vec<Rational>]) -> Result<Vec<TiltMatrix>> {
    if points.iter().any(|b| b.len() != dims.n) {
        return Err(Error::invalid(format!(
            "tilt points must have {} coordinates",
            dims.n
        )));
    }
    let mut tuples: Vec<Vec<Vec<Rational>>> = vec![Vec::new()];
    for _ in 0..dims.p {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                points.iter().map(move |b| {
                    let mut t = t.clone();
                    t.push(b.clone());
                    t
                })
            })
            .collect();
    }
    tuples.into_iter().map(TiltMatrix::new).collect()
}

/// The default tilts: `C_d` generic points per direction with `d` the
/// largest entry of `M`, arranged as a grid.
pub fn default_tilts(ideal: &IdealSpec) -> Result<Vec<TiltMatrix>> {
    let dims = ideal.dims();
    let d = ideal.m().as_slice().iter().copied().max().unwrap_or(0);
    tilts_with_count(dims, d, simplex_count(dims.n, d))
}

/// A grid of `count` points per direction, generic up to `degree`.
pub fn tilts_with_count(dims: Dims, degree: u32, count: usize) -> Result<Vec<TiltMatrix>> {
    tilt_grid(dims, &generic_points(dims.n, degree, count))
}

/// One term `coeff · (∂/∂η^{tilt})^γ` of a [`TiltExpression`].
#[derive(Clone, Debug, PartialEq)]
pub struct TiltTerm {
    pub tilt: usize,
    pub gamma: MultiIndex,
    pub coeff: Rational,
}

/// `∂_z^β ∂_w^m = Σ coeff · (∂/∂η^{tilt})^γ`, checked on every monomial of
/// degree at most the order.
#[derive(Clone, Debug, PartialEq)]
pub struct TiltExpression {
    pub target: OpKey,
    pub terms: Vec<TiltTerm>,
    pub checked_monomials: usize,
}

impl TiltExpression {
    pub fn to_op(&self, dims: Dims, tilts: &[TiltMatrix]) -> Result<DiffOp> {
        let mut acc = DiffOp::zero(dims);
        for t in &self.terms {
            let ds: Vec<DiffOp> = (0..dims.p).map(|k| tilts[t.tilt].derivative(k)).collect();
            let op = power_compose(&ds, &t.gamma)?.scale(&RatFunc::constant(dims, t.coeff.clone()));
            acc = acc.checked_add(&op)?;
        }
        Ok(acc)
    }
}

/// Splits `β` over the `p` directions so that `|β_k| ≤ M_k − m_k`.
fn split_beta(beta: &MultiIndex, m: &MultiIndex, cap: &MultiIndex) -> Option<Vec<MultiIndex>> {
    let p = m.len();
    let mut room: Vec<u32> = (0..p)
        .map(|k| cap.get(k).saturating_sub(m.get(k)))
        .collect();
    let mut parts = vec![MultiIndex::zeros(beta.len()); p];
    for j in 0..beta.len() {
        for _ in 0..beta.get(j) {
            let k = room.iter().position(|&r| r > 0)?;
            room[k] -= 1;
            let e = parts[k].get(j);
            parts[k].set(j, e + 1);
        }
    }
    Some(parts)
}

/// Coefficients `d_ℓ` with `Σ_ℓ d_ℓ (b^ℓ)^α = δ_{αβ} / C(k; α)` for all
/// `|α| ≤ k`, so that `Σ_ℓ d_ℓ (∂/∂η^ℓ)^k = ∂_z^β ∂_w^{k − |β|}` in one
/// normal direction.
fn direction_coefficients(
    points: &[Vec<Rational>],
    beta: &MultiIndex,
    k: u32,
) -> Option<Vec<Rational>> {
    let n = beta.len();
    let alphas = MultiIndex::simplex(n, k);
    let mat: Vec<Vec<Rational>> = alphas
        .iter()
        .map(|a| points.iter().map(|b| point_power(b, a)).collect())
        .collect();
    let rhs: Vec<Rational> = alphas
        .iter()
        .map(|a| {
            if a == beta {
                let multinomial = crate::poly::factorial(k)
                    / (a.factorial() * crate::poly::factorial(k - a.abs()));
                Rational::new(BigInt::one(), multinomial)
            } else {
                Rational::zero()
            }
        })
        .collect();
    linalg::solve(&mat, &rhs)
}

/// Expresses `∂_z^β ∂_w^m` through powers of the tilt derivatives.
///
/// `β` is split over the normal directions; in each direction the
/// one-variable identity is solved on that direction's distinct tilt rows,
/// and the product is matched against the given tilts.
pub fn fan1_express(
    m: &MultiIndex,
    beta: &MultiIndex,
    ideal: &IdealSpec,
    tilts: &[TiltMatrix],
) -> Result<TiltExpression> {
    let dims = ideal.dims();
    check_tilts(dims, tilts)?;
    if m.len() != dims.p || beta.len() != dims.n {
        return Err(Error::invalid(
            "derivative index does not match the dimensions",
        ));
    }
    let cap = ideal.m();
    let order = m.abs() + beta.abs();
    if !m.le(cap) {
        return Err(Error::invalid(format!("m = {m} exceeds M = {cap}")));
    }
    let parts = split_beta(beta, m, cap)
        .ok_or_else(|| Error::invalid(format!("|beta| = {} exceeds |M - m|", beta.abs())))?;

    // per direction: (point, coefficient) pairs
    let mut factors: Vec<Vec<(Vec<Rational>, Rational)>> = Vec::new();
    let mut gamma = MultiIndex::zeros(dims.p);
    for (k, part) in parts.iter().enumerate() {
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for t in tilts {
            if !rows.iter().any(|r| r.as_slice() == t.row(k)) {
                rows.push(t.row(k).to_vec());
            }
        }
        let o = part.abs() + m.get(k);
        gamma.set(k, o);
        let d = direction_coefficients(&rows, part, o).ok_or(Error::InsufficientTilts { order })?;
        factors.push(
            rows.into_iter()
                .zip(d)
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        );
    }

    let mut combos: Vec<(Vec<&Vec<Rational>>, Rational)> = vec![(Vec::new(), Rational::one())];
    for f in &factors {
        combos = combos
            .into_iter()
            .flat_map(|(rows, c)| {
                f.iter().map(move |(r, d)| {
                    let mut rows = rows.clone();
                    rows.push(r);
                    (rows, &c * d)
                })
            })
            .collect();
    }
    let mut by_tilt: BTreeMap<usize, Rational> = BTreeMap::new();
    for (rows, c) in combos {
        let idx = tilts
            .iter()
            .position(|t| {
                rows.iter()
                    .enumerate()
                    .all(|(k, r)| t.row(k) == r.as_slice())
            })
            .ok_or(Error::InsufficientTilts { order })?;
        *by_tilt.entry(idx).or_insert_with(Rational::zero) += c;
    }
    let terms: Vec<TiltTerm> = by_tilt
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(tilt, coeff)| TiltTerm {
            tilt,
            gamma: gamma.clone(),
            coeff,
        })
        .collect();
    let mut expr = TiltExpression {
        target: OpKey::new(m.clone(), beta.clone()),
        terms,
        checked_monomials: 0,
    };

    let lhs = DiffOp::derivative(dims, m.clone(), beta.clone());
    let rhs = expr.to_op(dims, tilts)?;
    let monomials = Monomial::up_to_degree(dims, order);
    for mono in &monomials {
        let phi = Poly::monomial(dims, mono.clone(), Rational::one());
        if lhs.apply(&phi)? != rhs.apply(&phi)? {
            return Err(Error::VerificationFailed {
                index: 0,
                detail: format!("tilt expression for {lhs} disagrees on {mono}"),
            });
        }
    }
    expr.checked_monomials = monomials.len();
    Ok(expr)
}
