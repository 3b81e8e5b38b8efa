//! Seeded random instances for property suites: small integer coefficients
//! keep the fraction-free eliminations modest while still exercising every
//! code path.

use num::Zero;
use rand::Rng;

use crate::monomial::{self, MultiIndex};
use crate::poly::Polynomial;
use crate::rational::{rat_int, Rational};

const COEFF_RANGE: std::ops::RangeInclusive<i64> = -9..=9;

fn random_coeff(rng: &mut impl Rng) -> Rational {
    rat_int(rng.gen_range(COEFF_RANGE))
}

fn random_nonzero_coeff(rng: &mut impl Rng) -> Rational {
    loop {
        let c = random_coeff(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Random polynomial of total degree at most `max_degree` with integer
/// coefficients in `[-9, 9]`; roughly `density` of the candidate monomials
/// appear. May be zero.
pub fn random_polynomial(
    rng: &mut impl Rng,
    arity: usize,
    max_degree: u32,
    density: f64,
) -> Polynomial {
    let mut terms = Vec::new();
    for alpha in monomial::monomials_up_to(arity, max_degree as i32) {
        if rng.gen_bool(density) {
            terms.push((alpha, random_nonzero_coeff(rng)));
        }
    }
    Polynomial::from_terms(arity, terms)
}

/// Random nonzero homogeneous polynomial of exact degree `degree`.
pub fn random_homogeneous(rng: &mut impl Rng, arity: usize, degree: u32) -> Polynomial {
    let candidates = monomial::monomials_of_degree(arity, degree);
    loop {
        let mut terms = Vec::new();
        for alpha in &candidates {
            if rng.gen_bool(0.6) {
                terms.push((alpha.clone(), random_nonzero_coeff(rng)));
            }
        }
        let p = Polynomial::from_terms(arity, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random operator with prescribed zero order: layers below `zero_order`
/// are dropped and layer `zero_order` is forced nonzero.
pub fn random_with_zero_order(
    rng: &mut impl Rng,
    arity: usize,
    zero_order: u32,
    max_degree: u32,
) -> Polynomial {
    assert!(zero_order <= max_degree);
    let draft = random_polynomial(rng, arity, max_degree, 0.4);
    let mut terms: Vec<(MultiIndex, Rational)> = draft
        .terms()
        .filter(|(alpha, _)| alpha.total_degree() >= zero_order)
        .map(|(alpha, c)| (alpha.clone(), c.clone()))
        .collect();
    if !terms.iter().any(|(a, _)| a.total_degree() == zero_order) {
        let layer = monomial::monomials_of_degree(arity, zero_order);
        let pick = rng.gen_range(0..layer.len());
        terms.push((layer[pick].clone(), random_nonzero_coeff(rng)));
    }
    Polynomial::from_terms(arity, terms)
}
