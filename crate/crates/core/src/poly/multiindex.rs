use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

/// Exponent vector over one variable block.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zeros(len: usize) -> Self {
        MultiIndex(vec![0; len])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = vec![0; len];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, e: u32) {
        self.0[i] = e;
    }

    /// `|α|`, the sum of the entries.
    pub fn abs(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &MultiIndex) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn factorial(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, &e| acc * factorial(e))
    }

    /// `∏ C(self_i, lower_i)`; zero unless `lower ≤ self`.
    pub fn binomial(&self, lower: &MultiIndex) -> BigInt {
        self.0
            .iter()
            .zip(&lower.0)
            .fold(BigInt::one(), |acc, (&a, &b)| acc * binomial(a, b))
    }

    /// Falling factorial `∏ self_i! / (self_i - k_i)!`, the coefficient that
    /// `∂^k` pulls out of `x^self`. Zero unless `k ≤ self`.
    pub fn falling(&self, k: &MultiIndex) -> BigInt {
        let mut acc = BigInt::one();
        for (&a, &b) in self.0.iter().zip(&k.0) {
            if b > a {
                return BigInt::from(0);
            }
            for t in (a - b + 1)..=a {
                acc *= t;
            }
        }
        acc
    }

    /// Graded order: `|α|` first, then lexicographic on the exponent vector.
    pub fn graded_cmp(&self, other: &MultiIndex) -> Ordering {
        self.abs()
            .cmp(&other.abs())
            .then_with(|| self.0.cmp(&other.0))
    }

    /// All `α ≤ bound` componentwise, in graded order.
    pub fn boxed(bound: &MultiIndex) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex::zeros(bound.len())];
        for (i, &b) in bound.0.iter().enumerate() {
            out = out
                .into_iter()
                .flat_map(|a| {
                    (0..=b).map(move |e| {
                        let mut a = a.clone();
                        a.0[i] = e;
                        a
                    })
                })
                .collect();
        }
        out.sort_by(|a, b| a.graded_cmp(b));
        out
    }

    /// All `α` of the given length with `|α| ≤ degree`, in graded order.
    pub fn simplex(len: usize, degree: u32) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex::zeros(len)];
        for i in 0..len {
            out = out
                .into_iter()
                .flat_map(|a| {
                    let used = a.abs();
                    (0..=degree - used).map(move |e| {
                        let mut a = a.clone();
                        a.0[i] = e;
                        a
                    })
                })
                .collect();
        }
        out.sort_by(|a, b| a.graded_cmp(b));
        out
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of multi-indices of length `len` with `|α| ≤ degree`.
pub fn simplex_count(len: usize, degree: u32) -> usize {
    let c = binomial(degree + len as u32, len as u32);
    c.try_into().expect("simplex count fits in usize")
}
