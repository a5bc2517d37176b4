//! Noetherian-operator candidates: finite sums `c(z)·∂_w^m ∂_z^β` evaluated
//! at `w = 0`, optionally precomposed with multiplication by a polynomial.

mod text;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::noetherian::IdealSpec;
use crate::poly::{gcd, Dims, Monomial, MultiIndex, Poly, RatFunc, Rational};

/// Derivative index `(m, β)` of `∂_w^m ∂_z^β`.
///
/// Ordered by `(|m|, m, |β|, β)`; this is also the row order, and hence the
/// pivot tie-break, of every linear solve over operators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpKey {
    pub m: MultiIndex,
    pub beta: MultiIndex,
}

impl OpKey {
    pub fn new(m: MultiIndex, beta: MultiIndex) -> Self {
        OpKey { m, beta }
    }

    pub fn identity(dims: Dims) -> Self {
        OpKey {
            m: MultiIndex::zeros(dims.p),
            beta: MultiIndex::zeros(dims.n),
        }
    }

    pub fn order(&self) -> u32 {
        self.m.abs() + self.beta.abs()
    }

    fn add(&self, other: &OpKey) -> OpKey {
        OpKey {
            m: self.m.add(&other.m),
            beta: self.beta.add(&other.beta),
        }
    }
}

impl Ord for OpKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.m
            .graded_cmp(&other.m)
            .then_with(|| self.beta.graded_cmp(&other.beta))
    }
}

impl PartialOrd for OpKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Constant `p × n` tilt: row `k` holds the z-components of `∂/∂η_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TiltMatrix {
    rows: Vec<Vec<Rational>>,
    cols: usize,
}

impl TiltMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid("tilt matrix rows have different lengths"));
        }
        Ok(TiltMatrix { rows, cols })
    }

    pub fn zero(dims: Dims) -> Self {
        TiltMatrix {
            rows: vec![vec![Rational::zero(); dims.n]; dims.p],
            cols: dims.n,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, k: usize, j: usize) -> &Rational {
        &self.rows[k][j]
    }

    pub fn row(&self, k: usize) -> &[Rational] {
        &self.rows[k]
    }

    /// `∂/∂η_k = ∂/∂w_k + Σ_j b_{kj} ∂/∂z_j`.
    pub fn derivative(&self, k: usize) -> DiffOp {
        tilt_derivative(Dims::new(self.cols, self.rows.len()), &self.rows[k], k)
    }
}

impl fmt::Display for TiltMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, row) in self.rows.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            let parts: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "{}", parts.join(" "))?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug)]
pub struct DiffOp {
    dims: Dims,
    terms: BTreeMap<OpKey, RatFunc>,
    pre_mult: Poly,
}

impl DiffOp {
    pub fn zero(dims: Dims) -> Self {
        DiffOp {
            dims,
            terms: BTreeMap::new(),
            pre_mult: Poly::one(dims),
        }
    }

    pub fn identity(dims: Dims) -> Self {
        DiffOp::derivative(dims, MultiIndex::zeros(dims.p), MultiIndex::zeros(dims.n))
    }

    /// The pure derivative `∂_w^m ∂_z^β`.
    pub fn derivative(dims: Dims, m: MultiIndex, beta: MultiIndex) -> Self {
        DiffOp::from_terms(dims, [(OpKey::new(m, beta), RatFunc::one(dims))])
    }

    pub fn from_terms(dims: Dims, terms: impl IntoIterator<Item = (OpKey, RatFunc)>) -> Self {
        let mut op = DiffOp::zero(dims);
        for (k, c) in terms {
            op.add_term(k, c);
        }
        op
    }

    pub fn parse(s: &str, dims: Dims) -> Result<Self> {
        text::parse_op(s, dims)
    }

    fn add_term(&mut self, key: OpKey, c: RatFunc) {
        debug_assert_eq!(key.m.len(), self.dims.p);
        debug_assert_eq!(key.beta.len(), self.dims.n);
        if c.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(key, merged);
        }
    }

    /// `self ∘ (multiplication by a)`.
    pub fn precompose_mult(&self, a: &Poly) -> Result<DiffOp> {
        Ok(DiffOp {
            dims: self.dims,
            terms: self.terms.clone(),
            pre_mult: self.pre_mult.checked_mul(a)?,
        })
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OpKey, &RatFunc)> {
        self.terms.iter()
    }

    pub fn pre_mult(&self) -> &Poly {
        &self.pre_mult
    }

    pub fn is_expanded(&self) -> bool {
        self.pre_mult.is_one()
    }

    /// True when the operator is the zero map.
    pub fn is_zero(&self) -> bool {
        self.expand().terms.is_empty()
    }

    pub fn coeff(&self, key: &OpKey) -> RatFunc {
        self.terms
            .get(key)
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(self.dims))
    }

    /// Componentwise maxima of the w- and z-derivative orders.
    pub fn order_bounds(&self) -> (MultiIndex, MultiIndex) {
        self.terms.keys().fold(
            (
                MultiIndex::zeros(self.dims.p),
                MultiIndex::zeros(self.dims.n),
            ),
            |(m, b), k| (m.join(&k.m), b.join(&k.beta)),
        )
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(OpKey::order).max().unwrap_or(0)
    }

    pub fn is_constant_coefficient(&self) -> bool {
        self.is_expanded()
            && self
                .terms
                .values()
                .all(|c| c.is_polynomial() && c.num().is_constant())
    }

    /// `Σ c_{m,β}(z) · (∂_w^m ∂_z^β (a·φ))(z, 0)`.
    pub fn apply(&self, phi: &Poly) -> Result<RatFunc> {
        let g = self.pre_mult.checked_mul(phi)?;
        let mut polys = Poly::zero(self.dims);
        let mut fractions = RatFunc::zero(self.dims);
        for (key, c) in &self.terms {
            let d = g.partial_multi(&key.m, &key.beta).restrict_w0();
            if d.is_zero() {
                continue;
            }
            if c.den().is_one() {
                polys = &polys + &(c.num() * &d);
            } else {
                fractions = &fractions + &c.mul_poly(&d);
            }
        }
        Ok(&RatFunc::from_poly(polys) + &fractions)
    }

    /// [`DiffOp::apply`] for operators whose result is a polynomial.
    pub fn apply_poly(&self, phi: &Poly) -> Result<Poly> {
        self.apply(phi)?
            .to_poly()
            .ok_or_else(|| Error::invalid("operator value is not a polynomial"))
    }

    /// The equal-as-a-map operator with premultiplier one (Leibniz rule).
    pub fn expand(&self) -> DiffOp {
        if self.pre_mult.is_one() {
            return self.clone();
        }
        let a = &self.pre_mult;
        let mut out = DiffOp::zero(self.dims);
        for (key, c) in &self.terms {
            for m1 in MultiIndex::boxed(&key.m) {
                let m_rest = key.m.checked_sub(&m1).expect("box element");
                for b1 in MultiIndex::boxed(&key.beta) {
                    let b_rest = key.beta.checked_sub(&b1).expect("box element");
                    let da = a.partial_multi(&m_rest, &b_rest).restrict_w0();
                    if da.is_zero() {
                        continue;
                    }
                    let k = Rational::from_integer(key.m.binomial(&m1) * key.beta.binomial(&b1));
                    out.add_term(OpKey::new(m1.clone(), b1), c.mul_poly(&da.scale(&k)));
                }
            }
        }
        out
    }

    pub fn checked_add(&self, other: &DiffOp) -> Result<DiffOp> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch {
                left: self.dims,
                right: other.dims,
            });
        }
        let mut out = self.expand();
        for (k, c) in other.expand().terms {
            out.add_term(k, c);
        }
        Ok(out)
    }

    /// `c(z)·L`.
    pub fn scale(&self, c: &RatFunc) -> DiffOp {
        let mut out = DiffOp {
            dims: self.dims,
            terms: BTreeMap::new(),
            pre_mult: self.pre_mult.clone(),
        };
        for (k, a) in &self.terms {
            out.add_term(k.clone(), a * c);
        }
        out
    }

    /// Symbol of a constant-coefficient operator.
    fn constant_symbol(&self) -> Result<BTreeMap<OpKey, Rational>> {
        if !self.is_constant_coefficient() {
            return Err(Error::NonConstantCoefficient);
        }
        Ok(self
            .terms
            .iter()
            .map(|(k, c)| (k.clone(), c.num().constant_value().expect("constant")))
            .collect())
    }

    fn from_symbol(dims: Dims, sym: BTreeMap<OpKey, Rational>) -> DiffOp {
        DiffOp::from_terms(
            dims,
            sym.into_iter()
                .map(|(k, c)| (k, RatFunc::constant(dims, c))),
        )
    }
}

fn symbol_mul(
    a: &BTreeMap<OpKey, Rational>,
    b: &BTreeMap<OpKey, Rational>,
) -> BTreeMap<OpKey, Rational> {
    let mut out: BTreeMap<OpKey, Rational> = BTreeMap::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            *out.entry(ka.add(kb)).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

impl PartialEq for DiffOp {
    /// Equality as maps to functions on `Z`: expanded term maps agree.
    fn eq(&self, other: &Self) -> bool {
        if self.dims != other.dims {
            return false;
        }
        let (a, b) = (self.expand(), other.expand());
        a.terms.len() == b.terms.len() && a.terms.iter().all(|(k, c)| b.terms.get(k) == Some(c))
    }
}

impl Eq for DiffOp {}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::fmt_op(self, f)
    }
}

/// First-order `∂/∂w_k + Σ_j b_j ∂/∂z_j`.
pub fn tilt_derivative(dims: Dims, b: &[Rational], k: usize) -> DiffOp {
    assert_eq!(b.len(), dims.n, "tilt column has wrong length");
    let mut op = DiffOp::derivative(dims, MultiIndex::unit(dims.p, k), MultiIndex::zeros(dims.n));
    for (j, bj) in b.iter().enumerate() {
        op.add_term(
            OpKey::new(MultiIndex::zeros(dims.p), MultiIndex::unit(dims.n, j)),
            RatFunc::constant(dims, bj.clone()),
        );
    }
    op
}

/// `ops[p-1]^{γ_p} ⋯ ops[0]^{γ_1}` for constant-coefficient operators.
pub fn power_compose(ops: &[DiffOp], gamma: &MultiIndex) -> Result<DiffOp> {
    if ops.len() != gamma.len() {
        return Err(Error::invalid(format!(
            "{} operators for a {}-component exponent",
            ops.len(),
            gamma.len()
        )));
    }
    let dims = match ops.first() {
        Some(op) => op.dims,
        None => return Err(Error::invalid("power_compose needs at least one operator")),
    };
    let mut acc: BTreeMap<OpKey, Rational> = [(OpKey::identity(dims), Rational::one())].into();
    for (op, &e) in ops.iter().zip(gamma.as_slice()) {
        if op.dims != dims {
            return Err(Error::DimensionMismatch {
                left: dims,
                right: op.dims,
            });
        }
        let sym = op.constant_symbol()?;
        for _ in 0..e {
            acc = symbol_mul(&acc, &sym);
        }
    }
    Ok(DiffOp::from_symbol(dims, acc))
}

/// Coefficients `h_i` with `op = Σ h_i · gens_i` over ℚ(z).
#[derive(Clone, Debug, PartialEq)]
pub struct Combination {
    pub coeffs: Vec<RatFunc>,
}

impl Combination {
    pub fn combine(&self, gens: &[DiffOp], dims: Dims) -> DiffOp {
        self.coeffs
            .iter()
            .zip(gens)
            .filter(|(h, _)| !h.is_zero())
            .fold(DiffOp::zero(dims), |acc, (h, g)| {
                acc.checked_add(&g.expand().scale(h)).expect("same dims")
            })
    }

    /// Product of the coefficient denominators: the combination is valid
    /// off this locus.
    pub fn denominator_locus(&self, dims: Dims) -> Poly {
        lcm_all(self.coeffs.iter().map(RatFunc::den), dims)
    }
}

pub(crate) fn lcm_all<'a>(polys: impl Iterator<Item = &'a Poly>, dims: Dims) -> Poly {
    polys.fold(Poly::one(dims), |acc, d| {
        if d.is_constant() {
            return acc;
        }
        let g = gcd(&acc, d);
        (&acc * &d.exact_divide(&g).expect("gcd divides")).monic()
    })
}

/// Decides generically over ℚ(z) whether `op` lies in the module spanned
/// by `gens`, by fraction-free elimination on the `(m, β)` coefficient
/// vectors after clearing denominators column by column.
pub fn module_membership(op: &DiffOp, gens: &[DiffOp]) -> Option<Combination> {
    let dims = op.dims;
    let op = op.expand();
    let gens: Vec<DiffOp> = gens.iter().map(DiffOp::expand).collect();
    if gens.iter().any(|g| g.dims != dims) {
        return None;
    }
    let mut keys: Vec<OpKey> = op
        .terms
        .keys()
        .chain(gens.iter().flat_map(|g| g.terms.keys()))
        .cloned()
        .collect();
    keys.sort();
    keys.dedup();

    let cleared = |g: &DiffOp| -> (Poly, Vec<Poly>) {
        let scale = lcm_all(g.terms.values().map(RatFunc::den), dims);
        let col = keys
            .iter()
            .map(|k| {
                let c = g.coeff(k);
                (c.num() * &scale)
                    .exact_divide(c.den())
                    .expect("lcm clears the denominator")
            })
            .collect();
        (scale, col)
    };
    let (rhs_scale, rhs) = cleared(&op);
    let columns: Vec<(Poly, Vec<Poly>)> = gens.iter().map(cleared).collect();
    let matrix: Vec<Vec<Poly>> = (0..keys.len())
        .map(|i| columns.iter().map(|(_, col)| col[i].clone()).collect())
        .collect();

    let x = if gens.is_empty() {
        if op.terms.is_empty() {
            Vec::new()
        } else {
            return None;
        }
    } else {
        linalg::solve_over_fractions(&matrix, &rhs, dims)?
    };
    let inv_rhs = RatFunc::new(Poly::one(dims), rhs_scale).expect("nonzero scale");
    let coeffs: Vec<RatFunc> = x
        .iter()
        .zip(&columns)
        .map(|(xi, (s, _))| (&xi.mul_poly(s) * &inv_rhs).normalize())
        .collect();
    let combo = Combination { coeffs };
    assert!(
        combo.combine(&gens, dims) == op,
        "module membership certificate failed to recombine"
    );
    Some(combo)
}

/// Outcome of the finite Leibniz check behind [`verify_noetherian`].
#[derive(Clone, Debug, PartialEq)]
pub struct NoetherianCheck {
    pub holds: bool,
    /// Multipliers `z^δ w^γ` range over `δ ≤ z_bound`, `γ ≤ w_bound`.
    pub w_bound: MultiIndex,
    pub z_bound: MultiIndex,
    /// First generator index and multiplier with nonzero image.
    pub witness: Option<(usize, Monomial, RatFunc)>,
}

/// Checks `op(z^δ w^γ f_i) = 0` on `Z` for every generator and every
/// multiplier in the box given by the operator's orders; by Leibniz this
/// covers all of `J`.
pub fn noetherian_check(op: &DiffOp, ideal: &IdealSpec) -> Result<NoetherianCheck> {
    let op = op.expand();
    if op.dims != ideal.dims() {
        return Err(Error::DimensionMismatch {
            left: op.dims,
            right: ideal.dims(),
        });
    }
    let (w_bound, z_bound) = op.order_bounds();
    let ws = MultiIndex::boxed(&w_bound);
    let zs = MultiIndex::boxed(&z_bound);
    for (i, f) in ideal.gens().iter().enumerate() {
        for gw in &ws {
            for dz in &zs {
                let mono = Monomial::new(dz.clone(), gw.clone());
                let v = op.apply(&f.mul_monomial(&mono, &Rational::one()))?;
                if !v.is_zero() {
                    return Ok(NoetherianCheck {
                        holds: false,
                        w_bound,
                        z_bound,
                        witness: Some((i, mono, v)),
                    });
                }
            }
        }
    }
    Ok(NoetherianCheck {
        holds: true,
        w_bound,
        z_bound,
        witness: None,
    })
}

pub fn verify_noetherian(op: &DiffOp, ideal: &IdealSpec) -> bool {
    noetherian_check(op, ideal).is_ok_and(|c| c.holds)
}
