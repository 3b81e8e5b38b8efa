//! Multi-indices, the graded-lexicographic order, and monomial enumeration.
//!
//! A [`MultiIndex`] is an exponent vector `α = (α₁, …, α_k)`; it indexes both
//! the monomial `x^α` and the derivative `D^α`. Every matrix in the crate
//! labels its rows and columns by multi-indices, so one fixed enumeration is
//! used everywhere: monomials are listed by ascending total degree, and
//! within one degree from the highest leading exponent down (`x^d` first,
//! `y^d` last). [`monomial_index`] is the position of a multi-index in that
//! listing and [`monomials_of_degree`] / [`monomials_up_to`] are its
//! inverses.

use std::cmp::Ordering;

use num::{BigInt, One};

/// Exponent vector of fixed arity.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    /// Builds a multi-index from its exponents. Panics on empty input;
    /// arity is always at least one.
    pub fn new(exponents: Vec<u32>) -> Self {
        assert!(!exponents.is_empty(), "multi-index arity must be positive");
        MultiIndex(exponents)
    }

    /// The constant monomial `(0, …, 0)`.
    pub fn zero(arity: usize) -> Self {
        Self::new(vec![0; arity])
    }

    /// The exponent vector of the single variable `x_var`.
    pub fn unit(arity: usize, var: usize) -> Self {
        assert!(var < arity, "variable index out of range");
        let mut e = vec![0; arity];
        e[var] = 1;
        Self::new(e)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0[var]
    }

    /// Total degree `|α|`.
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise sum (monomial product).
    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        assert_eq!(self.arity(), other.arity(), "arity mismatch");
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise `self ≥ other`, the divisibility order on monomials.
    pub fn dominates(&self, other: &MultiIndex) -> bool {
        self.arity() == other.arity() && self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// Componentwise difference, `None` unless `self` dominates `other`.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if self.dominates(other) {
            Some(MultiIndex(
                self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
            ))
        } else {
            None
        }
    }

    /// `α! = α₁!⋯α_k!`, exactly.
    pub fn factorial(&self) -> BigInt {
        self.0.iter().map(|&e| factorial(e)).product()
    }

    /// `β!/(β−α)!` for `β = self`, `α = lower`: the coefficient produced by
    /// `D^α x^β`. Requires `self.dominates(lower)`.
    pub fn falling_factorial(&self, lower: &MultiIndex) -> BigInt {
        debug_assert!(self.dominates(lower));
        let mut acc = BigInt::one();
        for (&b, &a) in self.0.iter().zip(&lower.0) {
            for j in (b - a + 1)..=b {
                acc *= BigInt::from(j);
            }
        }
        acc
    }
}

/// Storage order: total degree first, then lexicographic on the exponent
/// vector (so `x > y` within one degree). Descending iteration over this
/// order is the display order of `expr::format`.
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `n!` as an exact big integer.
pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=n {
        acc *= BigInt::from(j);
    }
    acc
}

/// Binomial coefficient `C(n, k)` as an exact big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

fn usize_binomial(n: u64, k: u64) -> usize {
    use num::ToPrimitive;
    binomial(n, k)
        .to_usize()
        .expect("monomial count exceeds usize")
}

/// Number of monomials of exact degree `d` in `arity` variables.
pub fn count_of_degree(arity: usize, d: u32) -> usize {
    debug_assert!(arity >= 1);
    usize_binomial(d as u64 + arity as u64 - 1, arity as u64 - 1)
}

/// Number of monomials of degree at most `d` in `arity` variables; 0 for
/// `d < 0` (the degree sentinel of the zero polynomial).
pub fn count_up_to(arity: usize, d: i32) -> usize {
    debug_assert!(arity >= 1);
    if d < 0 {
        0
    } else {
        usize_binomial(d as u64 + arity as u64, arity as u64)
    }
}

/// All multi-indices with `|α| = degree`, highest leading exponent first.
pub fn monomials_of_degree(arity: usize, degree: u32) -> Vec<MultiIndex> {
    assert!(arity >= 1);
    let mut out = Vec::with_capacity(count_of_degree(arity, degree));
    let mut prefix = Vec::with_capacity(arity);
    fill_degree(arity, degree, &mut prefix, &mut out);
    out
}

fn fill_degree(arity: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
    if arity == 1 {
        prefix.push(degree);
        out.push(MultiIndex::new(prefix.clone()));
        prefix.pop();
        return;
    }
    for e in (0..=degree).rev() {
        prefix.push(e);
        fill_degree(arity - 1, degree - e, prefix, out);
        prefix.pop();
    }
}

/// All multi-indices with `|α| ≤ degree`, by ascending degree; empty for
/// `degree < 0`.
pub fn monomials_up_to(arity: usize, degree: i32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    if degree < 0 {
        return out;
    }
    out.reserve(count_up_to(arity, degree));
    for d in 0..=degree as u32 {
        out.extend(monomials_of_degree(arity, d));
    }
    out
}

/// Position of `α` within the degree-`|α|` block of the enumeration.
pub fn index_in_degree(alpha: &MultiIndex) -> usize {
    let exps = alpha.exponents();
    let k = exps.len();
    let mut rank = 0;
    let mut remaining = alpha.total_degree();
    for (i, &e) in exps.iter().enumerate().take(k - 1) {
        // Listings with a larger exponent in position i come first.
        for bigger in (e + 1)..=remaining {
            rank += count_of_degree(k - 1 - i, remaining - bigger);
        }
        remaining -= e;
    }
    rank
}

/// Position of `α` in the global enumeration of `monomials_up_to`.
pub fn monomial_index(alpha: &MultiIndex) -> usize {
    count_up_to(alpha.arity(), alpha.total_degree() as i32 - 1) + index_in_degree(alpha)
}
