//! Sparse multivariate polynomials over exact rationals, homogeneous layers,
//! and the action of constant-coefficient differential operators `p(D)`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigRational, Zero};
use thiserror::Error;

use crate::monomial::MultiIndex;
use crate::rational::Rational;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("arity mismatch: {left} vs {right} variables")]
    ArityMismatch { left: usize, right: usize },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
}

/// A polynomial in `arity` variables, stored as a canonical sparse map from
/// exponent vectors to nonzero rational coefficients.
///
/// Two polynomials are equal iff their arities and term maps are equal; the
/// arithmetic below never stores a zero coefficient, so `==` is semantic
/// equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    arity: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl Polynomial {
    pub fn zero(arity: usize) -> Self {
        assert!(arity >= 1, "arity must be positive");
        Polynomial {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        Self::monomial(MultiIndex::zero(arity), c)
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Rational::from_integer(1.into()))
    }

    /// The single variable `x_var`.
    pub fn variable(arity: usize, var: usize) -> Self {
        Self::monomial(
            MultiIndex::unit(arity, var),
            Rational::from_integer(1.into()),
        )
    }

    /// `c · x^alpha`; the zero polynomial when `c = 0`.
    pub fn monomial(alpha: MultiIndex, c: Rational) -> Self {
        let mut p = Polynomial::zero(alpha.arity());
        if !c.is_zero() {
            p.terms.insert(alpha, c);
        }
        p
    }

    /// Accumulates `(exponent, coefficient)` pairs into canonical form;
    /// repeated exponents are summed and zero sums dropped.
    pub fn from_terms<I>(arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let mut p = Polynomial::zero(arity);
        for (alpha, c) in terms {
            p.add_term(alpha, c);
        }
        p
    }

    fn add_term(&mut self, alpha: MultiIndex, c: Rational) {
        assert_eq!(alpha.arity(), self.arity, "term arity mismatch");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(alpha);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `-1` for the zero polynomial (the empty space `Π₋₁`).
    pub fn degree(&self) -> i32 {
        self.terms
            .keys()
            .map(|a| a.total_degree() as i32)
            .max()
            .unwrap_or(-1)
    }

    /// Coefficient at `alpha` (zero when absent).
    pub fn coeff(&self, alpha: &MultiIndex) -> Rational {
        self.terms.get(alpha).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_coeff(&self) -> Rational {
        self.coeff(&MultiIndex::zero(self.arity))
    }

    /// Terms in ascending storage order (degree, then leading exponent).
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    /// The degree-`j` homogeneous layer; zero when the layer is empty.
    pub fn layer(&self, j: u32) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| a.total_degree() == j)
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    /// All terms have the same total degree (vacuously true for zero).
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|a| a.total_degree());
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Index of the lowest nonzero layer: the zero order `s` of the origin.
    pub fn zero_order(&self) -> Result<u32, PolyError> {
        self.terms
            .keys()
            .map(|a| a.total_degree())
            .min()
            .ok_or(PolyError::ZeroPolynomial)
    }

    /// The lowest nonzero homogeneous layer `p↓`.
    pub fn lower_layer(&self) -> Result<Polynomial, PolyError> {
        Ok(self.layer(self.zero_order()?))
    }

    /// The highest nonzero homogeneous layer `p↑`.
    pub fn upper_layer(&self) -> Result<Polynomial, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(self.layer(self.degree() as u32))
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.arity);
        }
        Polynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(a, v)| (a.clone(), v * c))
                .collect(),
        }
    }

    /// `self^e` by repeated squaring; `e = 0` gives the constant one.
    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(self.arity);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `∂f/∂x_var`.
    pub fn partial_derivative(&self, var: usize) -> Polynomial {
        let op = Polynomial::variable(self.arity, var);
        apply_operator(&op, self).expect("arities match by construction")
    }

    /// Coefficients of `self` read off at each basis monomial. Terms outside
    /// the basis are not represented; callers bound the degree first.
    pub fn coeff_vector(&self, basis: &[MultiIndex]) -> Vec<Rational> {
        basis.iter().map(|a| self.coeff(a)).collect()
    }

    /// Rebuilds a polynomial from coordinates in a monomial basis.
    pub fn from_coeff_vector(arity: usize, basis: &[MultiIndex], coords: &[Rational]) -> Self {
        assert_eq!(basis.len(), coords.len());
        Polynomial::from_terms(
            arity,
            basis.iter().cloned().zip(coords.iter().cloned()),
        )
    }

    fn assert_same_arity(&self, other: &Polynomial) {
        assert_eq!(
            self.arity, other.arity,
            "polynomial arity mismatch: {} vs {}",
            self.arity, other.arity
        );
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_arity(rhs);
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_arity(rhs);
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_arity(rhs);
        let mut out = Polynomial::zero(self.arity);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.add(b), ca * cb);
            }
        }
        out
    }
}

/// Applies the constant-coefficient operator `p(D)` to `f`, using the term
/// rule `D^α x^β = β!/(β−α)! · x^(β−α)` when `β ≥ α` componentwise and `0`
/// otherwise. Bilinear in `(p, f)`.
pub fn apply_operator(p: &Polynomial, f: &Polynomial) -> Result<Polynomial, PolyError> {
    if p.arity() != f.arity() {
        return Err(PolyError::ArityMismatch {
            left: p.arity(),
            right: f.arity(),
        });
    }
    let mut out = Polynomial::zero(p.arity());
    for (alpha, a) in &p.terms {
        for (beta, b) in &f.terms {
            if let Some(gamma) = beta.checked_sub(alpha) {
                let scale = BigRational::from_integer(beta.falling_factorial(alpha));
                out.add_term(gamma, a * b * scale);
            }
        }
    }
    Ok(out)
}
