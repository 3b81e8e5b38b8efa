//! Polynomial solutions of `p(D)f = q`.
//!
//! The solver peels homogeneous layers: the lowest nonzero layer `p↓` of the
//! operator against the top layer of the running right-hand side gives a
//! homogeneous equation whose linear system (rows `x^α₀·p`, unknowns
//! `γ′_β = β!·γ_β`) always has full row rank, so each step strictly lowers
//! the right-hand side degree. Summing the per-layer solutions yields a
//! particular solution of total degree at most `deg(q) + s`, where `s` is
//! the zero order of the origin for `p`. Kernel bases come from the
//! nullspace of the dense operator matrix on `Π_k`, which doubles as a
//! structure-blind oracle ([`oracle_solve`]) for cross-checking the layered
//! algorithm.

use num::{BigRational, One, Zero};
use thiserror::Error;

use crate::linalg::{self, LinalgError, RationalMatrix};
use crate::monomial::{self, MultiIndex};
use crate::poly::{apply_operator, PolyError, Polynomial};
use crate::rational::Rational;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("arity mismatch: {left} vs {right} variables")]
    ArityMismatch { left: usize, right: usize },
    #[error("{}", zero_operator_message(.rhs_is_zero))]
    ZeroOperator { rhs_is_zero: bool },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("expected a homogeneous polynomial")]
    NotHomogeneous,
    #[error("operator has zero constant term")]
    ZeroConstantTerm,
    #[error("ambient degree {given} is below the required minimum {required}")]
    AmbientTooSmall { given: u32, required: u32 },
    #[error("internal defect: layer system inconsistent despite the full-rank guarantee")]
    InconsistentSystem,
    #[error("internal defect: residual degree {got} did not drop below {expected}")]
    DegreeDescentFailure { expected: i32, got: i32 },
}

fn zero_operator_message(rhs_is_zero: &bool) -> String {
    if *rhs_is_zero {
        "operator polynomial is zero: every polynomial solves 0 = 0, no canonical solution".into()
    } else {
        "operator polynomial is zero: 0 = q has no solution for nonzero q".into()
    }
}

impl SolveError {
    /// True for conditions that signal a bug in the solver rather than bad
    /// input.
    pub fn is_internal_defect(&self) -> bool {
        matches!(
            self,
            SolveError::InconsistentSystem | SolveError::DegreeDescentFailure { .. }
        )
    }
}

impl From<PolyError> for SolveError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::ArityMismatch { left, right } => SolveError::ArityMismatch { left, right },
            PolyError::ZeroPolynomial => SolveError::ZeroPolynomial,
        }
    }
}

/// A solve result: one particular solution plus (when requested) a kernel
/// basis, so the full solution set is `particular + Σ λᵢ·kernel_basis[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub particular: Polynomial,
    pub kernel_basis: Vec<Polynomial>,
    pub free_count: usize,
    pub zero_order: u32,
    pub rhs_degree: i32,
    pub ambient_degree: i32,
}

/// The linear system of one homogeneous layer equation `p(D)f = q` with
/// `deg p = n`, `deg q = m`: rows are labelled by `α₀` with `|α₀| = m`,
/// columns by `β` with `|β| = n + m`, and row `α₀` holds the coefficients of
/// `x^α₀·p(x)` restricted to degree `n+m`. Unknowns are the substituted
/// `γ′_β = β!·γ_β`; right-hand entries are `α₀!·b_α₀`.
#[derive(Clone, Debug)]
pub struct LayerSystem {
    pub matrix: RationalMatrix,
    /// Unknowns are the primed `γ′` coordinates; divide by `β!` to recover
    /// the solution coefficients.
    pub primed_unknowns: bool,
}

impl LayerSystem {
    /// Builds the system for homogeneous `p_hom` against a right-hand side
    /// of homogeneous degree `rhs_degree`.
    pub fn new(p_hom: &Polynomial, rhs_degree: u32) -> Result<Self, SolveError> {
        if p_hom.is_zero() {
            return Err(SolveError::ZeroPolynomial);
        }
        if !p_hom.is_homogeneous() {
            return Err(SolveError::NotHomogeneous);
        }
        let arity = p_hom.arity();
        let n = p_hom.degree() as u32;
        let row_index = monomial::monomials_of_degree(arity, rhs_degree);
        let col_index = monomial::monomials_of_degree(arity, n + rhs_degree);
        let mut matrix = RationalMatrix::zero(row_index.len(), col_index.len());
        for (i, alpha0) in row_index.iter().enumerate() {
            for (j, beta) in col_index.iter().enumerate() {
                if let Some(alpha) = beta.checked_sub(alpha0) {
                    let a = p_hom.coeff(&alpha);
                    if !a.is_zero() {
                        matrix.set(i, j, a);
                    }
                }
            }
        }
        Ok(LayerSystem {
            matrix: matrix.with_labels(row_index, col_index),
            primed_unknowns: true,
        })
    }

    pub fn row_index(&self) -> &[MultiIndex] {
        self.matrix.row_labels().expect("layer system rows labelled")
    }

    pub fn col_index(&self) -> &[MultiIndex] {
        self.matrix.col_labels().expect("layer system columns labelled")
    }

    /// Right-hand vector `α₀!·b_α₀` for a homogeneous `q` of the row degree.
    pub fn rhs_vector(&self, q_hom: &Polynomial) -> Vec<Rational> {
        self.row_index()
            .iter()
            .map(|alpha0| {
                BigRational::from_integer(alpha0.factorial()) * q_hom.coeff(alpha0)
            })
            .collect()
    }
}

/// Solves one homogeneous layer equation `p_hom(D)f = q_hom` with
/// `deg f = deg p + deg q`, fixing all free `γ′` coordinates to zero.
pub fn solve_layer(p_hom: &Polynomial, q_hom: &Polynomial) -> Result<Polynomial, SolveError> {
    check_arity(p_hom, q_hom)?;
    if p_hom.is_zero() {
        return Err(SolveError::ZeroPolynomial);
    }
    if !p_hom.is_homogeneous() || !q_hom.is_homogeneous() {
        return Err(SolveError::NotHomogeneous);
    }
    if q_hom.is_zero() {
        return Ok(Polynomial::zero(p_hom.arity()));
    }
    let system = LayerSystem::new(p_hom, q_hom.degree() as u32)?;
    let rhs = system.rhs_vector(q_hom);
    let affine = linalg::solve_affine(&system.matrix, &rhs).map_err(|e| match e {
        LinalgError::Inconsistent => SolveError::InconsistentSystem,
    })?;
    // Undo the substitution γ′_β = β!·γ_β.
    let terms = system
        .col_index()
        .iter()
        .zip(&affine.particular)
        .map(|(beta, gamma_primed)| {
            (
                beta.clone(),
                gamma_primed / BigRational::from_integer(beta.factorial()),
            )
        });
    Ok(Polynomial::from_terms(p_hom.arity(), terms.collect::<Vec<_>>()))
}

/// Particular polynomial solution of `p(D)f = q` with
/// `deg f ≤ deg q + zero_order(p)`, found by layer peeling: solve the top
/// layer against `p↓`, subtract, and recurse on the strictly lower-degree
/// remainder.
pub fn solve_pde(p: &Polynomial, q: &Polynomial) -> Result<SolveOutcome, SolveError> {
    check_arity(p, q)?;
    if p.is_zero() {
        return Err(SolveError::ZeroOperator {
            rhs_is_zero: q.is_zero(),
        });
    }
    let s = p.zero_order()?;
    let p_low = p.lower_layer()?;
    let rhs_degree = q.degree();

    let mut particular = Polynomial::zero(p.arity());
    let mut remainder = q.clone();
    while !remainder.is_zero() {
        let m = remainder.degree() as u32;
        let layer_solution = solve_layer(&p_low, &remainder.layer(m))?;
        let image = apply_operator(p, &layer_solution)?;
        let next = &remainder - &image;
        if next.degree() >= m as i32 {
            return Err(SolveError::DegreeDescentFailure {
                expected: m as i32 - 1,
                got: next.degree(),
            });
        }
        particular = &particular + &layer_solution;
        remainder = next;
    }

    Ok(SolveOutcome {
        particular,
        kernel_basis: Vec::new(),
        free_count: 0,
        zero_order: s,
        rhs_degree,
        ambient_degree: rhs_degree + s as i32,
    })
}

/// Fast path for operators with nonzero constant term `a₀₀`: the unique
/// solution in `Π_m` via the terminating series
/// `f = Σ_{j=0..m} (−1)^j T^j q / a₀₀` with `T = (p − a₀₀)(D)/a₀₀`, which
/// strictly lowers degree. Independent of the layer-peeling route.
pub fn solve_unit(p: &Polynomial, q: &Polynomial) -> Result<Polynomial, SolveError> {
    check_arity(p, q)?;
    let a00 = p.constant_coeff();
    if a00.is_zero() {
        return Err(SolveError::ZeroConstantTerm);
    }
    let tail = p - &Polynomial::constant(p.arity(), a00.clone());
    let inv_a00 = Rational::one() / &a00;

    let mut acc = q.clone();
    let mut term = q.clone();
    let mut negate = true;
    while !term.is_zero() {
        term = apply_operator(&tail, &term)?.scale(&inv_a00);
        if term.is_zero() {
            break;
        }
        acc = if negate { &acc - &term } else { &acc + &term };
        negate = !negate;
    }
    Ok(acc.scale(&inv_a00))
}

/// Dense matrix of `p(D): Π_k → Π_k` in the monomial basis (rows and
/// columns both in enumeration order); rows of degree above `k − s` are
/// necessarily zero.
pub fn operator_matrix(p: &Polynomial, ambient: u32) -> RationalMatrix {
    let arity = p.arity();
    let basis = monomial::monomials_up_to(arity, ambient as i32);
    let mut matrix = RationalMatrix::zero(basis.len(), basis.len());
    for (j, beta) in basis.iter().enumerate() {
        for (alpha, a) in p.terms() {
            if let Some(target) = beta.checked_sub(alpha) {
                let i = monomial::monomial_index(&target);
                let value = matrix.get(i, j)
                    + a * BigRational::from_integer(beta.falling_factorial(alpha));
                matrix.set(i, j, value);
            }
        }
    }
    matrix.with_labels(basis.clone(), basis)
}

/// Basis of `{f ∈ Π_k : p(D)f = 0}` from the nullspace of the operator
/// matrix.
pub fn kernel_basis(p: &Polynomial, ambient: u32) -> Result<Vec<Polynomial>, SolveError> {
    if p.is_zero() {
        return Err(SolveError::ZeroPolynomial);
    }
    let arity = p.arity();
    let matrix = operator_matrix(p, ambient);
    let basis = matrix.col_labels().expect("operator matrix labelled").to_vec();
    Ok(linalg::nullspace(&matrix)
        .into_iter()
        .map(|v| Polynomial::from_coeff_vector(arity, &basis, &v))
        .collect())
}

/// Dimension of the kernel of a bivariate operator with zero order `s` on
/// `Π_k`: the partial sum `Σ_{j=0..k} min(j+1, s)`, validated against the
/// nullspace oracle. For `k ≥ s−1` this closes to `s(2k−s+3)/2`.
pub fn kernel_dim(s: u32, k: u32) -> usize {
    (0..=k).map(|j| (j + 1).min(s) as usize).sum()
}

/// Free-variable count of a layer system with `deg p = n`, `deg q = m` in
/// `k` variables: `C(n+m+k−1, k−1) − C(m+k−1, k−1)`. Equals `n` for `k = 2`.
pub fn sigma_free(n: u32, m: u32, arity: usize) -> usize {
    assert!(arity >= 1);
    monomial::count_of_degree(arity, n + m) - monomial::count_of_degree(arity, m)
}

/// `dim Π_n = C(n+k, k)`; zero for `n = −1` (the empty space).
pub fn dim_pi(n: i32, arity: usize) -> usize {
    monomial::count_up_to(arity, n)
}

/// `dim Π̄_n = C(n+k−1, k−1)`, the homogeneous slice; zero for `n < 0`.
pub fn dim_hom(n: i32, arity: usize) -> usize {
    if n < 0 {
        0
    } else {
        monomial::count_of_degree(arity, n as u32)
    }
}

/// The full affine solution family in `Π_k`: a particular solution plus a
/// kernel basis, so every solution is `particular + Σ λᵢ·fᵢ`.
pub fn solution_family(
    p: &Polynomial,
    q: &Polynomial,
    ambient: u32,
) -> Result<SolveOutcome, SolveError> {
    check_arity(p, q)?;
    if p.is_zero() {
        return Err(SolveError::ZeroOperator {
            rhs_is_zero: q.is_zero(),
        });
    }
    let s = p.zero_order()?;
    // Π_k contains a solution iff k ≥ deg(q) + s, except that for q = 0 the
    // zero solution lies in every Π_k.
    if !q.is_zero() {
        let required = (q.degree() + s as i32) as u32;
        if ambient < required {
            return Err(SolveError::AmbientTooSmall {
                given: ambient,
                required,
            });
        }
    }
    let solved = solve_pde(p, q)?;
    let kernel = kernel_basis(p, ambient)?;
    Ok(SolveOutcome {
        particular: solved.particular,
        free_count: kernel.len(),
        kernel_basis: kernel,
        zero_order: s,
        rhs_degree: solved.rhs_degree,
        ambient_degree: ambient as i32,
    })
}

/// Structure-blind brute force: solve `p(D)f = q` directly on all of `Π_k`
/// through the dense operator matrix, ignoring layer structure. Returns
/// `None` when no solution exists in `Π_k`.
pub fn oracle_solve(
    p: &Polynomial,
    q: &Polynomial,
    ambient: u32,
) -> Result<Option<Polynomial>, SolveError> {
    check_arity(p, q)?;
    if p.is_zero() {
        return Err(SolveError::ZeroOperator {
            rhs_is_zero: q.is_zero(),
        });
    }
    if q.degree() > ambient as i32 {
        return Ok(None);
    }
    let matrix = operator_matrix(p, ambient);
    let basis = matrix.col_labels().expect("operator matrix labelled").to_vec();
    let rhs = q.coeff_vector(&basis);
    match linalg::solve_affine(&matrix, &rhs) {
        Ok(affine) => Ok(Some(Polynomial::from_coeff_vector(
            p.arity(),
            &basis,
            &affine.particular,
        ))),
        Err(LinalgError::Inconsistent) => Ok(None),
    }
}

/// Exact residual `q − p(D)f`; the zero polynomial iff `f` solves the PDE.
pub fn verify(p: &Polynomial, f: &Polynomial, q: &Polynomial) -> Result<Polynomial, SolveError> {
    check_arity(p, q)?;
    check_arity(p, f)?;
    Ok(q - &apply_operator(p, f)?)
}

fn check_arity(a: &Polynomial, b: &Polynomial) -> Result<(), SolveError> {
    if a.arity() != b.arity() {
        Err(SolveError::ArityMismatch {
            left: a.arity(),
            right: b.arity(),
        })
    } else {
        Ok(())
    }
}
