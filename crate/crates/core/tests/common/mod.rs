#![allow(dead_code)]

use noether::diffop::DiffOp;
use noether::noetherian::{gens_from_ch, CHDatum, IdealSpec, NoetherianGens};
use noether::poly::{rat, ratio, Dims, Monomial, MultiIndex, Poly, Rational};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn p(s: &str, dims: Dims) -> Poly {
    Poly::parse(s, dims).unwrap()
}

pub fn op(s: &str, dims: Dims) -> DiffOp {
    DiffOp::parse(s, dims).unwrap()
}

pub fn mi(v: &[u32]) -> MultiIndex {
    MultiIndex::new(v.to_vec())
}

/// `J = ⟨w^{m+1}⟩` on `n = p = 1`.
pub fn line_ideal(m: u32) -> IdealSpec {
    let d = Dims::new(1, 1);
    IdealSpec::asserted(vec![Poly::w(d, 0).pow(m + 1)], mi(&[m])).unwrap()
}

pub fn line_data(m: u32) -> Vec<CHDatum> {
    vec![CHDatum::new(Poly::one(Dims::new(1, 1)), mi(&[m])).unwrap()]
}

pub fn d22() -> Dims {
    Dims::new(2, 2)
}

/// `⟨w1², w2², w1w2, w1z2 − w2z1⟩` on `n = p = 2`.
pub fn plane_ideal() -> IdealSpec {
    IdealSpec::asserted(
        ["w1^2", "w2^2", "w1*w2", "w1*z2 - w2*z1"]
            .iter()
            .map(|s| p(s, d22()))
            .collect(),
        mi(&[1, 1]),
    )
    .unwrap()
}

pub fn plane_data() -> Vec<CHDatum> {
    vec![
        CHDatum::new(Poly::one(d22()), mi(&[0, 0])).unwrap(),
        CHDatum::new(p("z1*w2 + z2*w1", d22()), mi(&[1, 1])).unwrap(),
    ]
}

pub fn plane_gens() -> NoetherianGens {
    gens_from_ch(&plane_data(), &plane_ideal()).unwrap()
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let q = small_rational(rng);
        if q != rat(0) {
            return q;
        }
    }
}

/// Random polynomial with up to `terms` monomials of total degree `≤ degree`.
pub fn random_poly(rng: &mut ChaCha8Rng, dims: Dims, degree: u32, terms: usize) -> Poly {
    let monos = Monomial::up_to_degree(dims, degree);
    let picks = (0..terms).map(|_| {
        (
            monos[rng.gen_range(0..monos.len())].clone(),
            small_rational(rng),
        )
    });
    Poly::from_terms(dims, picks.collect::<Vec<_>>())
}

/// Random z-only polynomial of degree `≤ degree`.
pub fn random_z_poly(rng: &mut ChaCha8Rng, dims: Dims, degree: u32, terms: usize) -> Poly {
    let zd = Dims::new(dims.n, 0);
    random_poly(rng, zd, degree, terms).embed(dims).unwrap()
}

/// `Σ g_i f_i` with random cofactors keeping the total degree `≤ degree`.
pub fn random_ideal_element(rng: &mut ChaCha8Rng, ideal: &IdealSpec, degree: u32) -> Poly {
    let dims = ideal.dims();
    let mut acc = Poly::zero(dims);
    for f in ideal.gens() {
        let fd = match f.total_degree() {
            noether::poly::Degree::Finite(d) => d,
            noether::poly::Degree::NegInfinity => continue,
        };
        if fd > degree {
            continue;
        }
        let g = random_poly(rng, dims, degree - fd, 3);
        acc = &acc + &(&g * f);
    }
    acc
}

pub fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| nonzero_rational(rng)).collect()
}
