//! Exact polynomial solutions of constant-coefficient PDEs `p(D)f = q`.
//!
//! Everything is computed over arbitrary-precision rationals, so results
//! verify exactly: for any operator polynomial `p ≠ 0` and right-hand side
//! `q`, [`solve_pde`] returns a particular solution of total degree at most
//! `deg(q) + s` (with `s` the zero order of the origin for `p`) whose
//! residual is the zero polynomial, [`kernel_basis`] spans the homogeneous
//! solutions in a chosen `Π_k`, and [`solution_family`] combines both into
//! the full affine solution set. [`oracle_solve`] solves the same equation
//! by brute force over a dense operator matrix and exists purely to
//! cross-check the structured algorithm.
//!
//! ```
//! use poldif::{expr, solver};
//!
//! let vars = expr::VariableSet::default();
//! let p = expr::parse("x^2 + y^2", &vars).unwrap(); // the Laplacian
//! let q = expr::parse("1", &vars).unwrap();
//! let outcome = solver::solve_pde(&p, &q).unwrap();
//! assert!(solver::verify(&p, &outcome.particular, &q).unwrap().is_zero());
//! ```

pub mod expr;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod rational;
pub mod sample;
pub mod selftest;
pub mod solver;
pub mod structured;

pub use expr::{format, parse, ParseError, VariableSet};
pub use linalg::{AffineSolution, RationalMatrix};
pub use monomial::MultiIndex;
pub use poly::{apply_operator, PolyError, Polynomial};
pub use rational::Rational;
pub use solver::{
    dim_hom, dim_pi, kernel_basis, kernel_dim, oracle_solve, sigma_free, solution_family,
    solve_layer, solve_pde, solve_unit, verify, SolveError, SolveOutcome,
};
