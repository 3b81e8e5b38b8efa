//! Exact rational coefficients.
//!
//! All coefficients, matrix entries and solution values in this crate are
//! arbitrary-precision rationals kept in lowest terms with a positive
//! denominator. `num`'s `BigRational` already maintains exactly that
//! canonical form, so it is used directly.

pub use num::{BigInt, BigRational};

/// The coefficient type used throughout the crate.
pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
