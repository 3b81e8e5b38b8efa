//! Structured (JSON) documents for polynomials and solve outcomes.
//!
//! A polynomial document is
//!
//! ```json
//! {
//!   "arity": 2,
//!   "vars": ["x", "y"],
//!   "terms": [{ "exp": [2, 0], "num": "1", "den": "2" }]
//! }
//! ```
//!
//! with numerators and denominators carried as decimal strings so big
//! integers survive any host. Terms are emitted in descending
//! graded-lexicographic order; input field order is not significant and
//! terms are renormalized on read, so the round trip is lossless.

use num::{BigInt, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{VariableSet, VariableSetError, MAX_TOTAL_DEGREE};
use crate::monomial::MultiIndex;
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::solver::SolveOutcome;

#[derive(Error, Debug)]
pub enum SchemaError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("arity must be at least 1")]
    ZeroArity,
    #[error("invalid variable set: {0}")]
    Variables(#[from] VariableSetError),
    #[error("expected {expected} variables, found {found}")]
    VariableCount { expected: usize, found: usize },
    #[error("term exponent vector has length {found}, expected arity {expected}")]
    ExponentArity { expected: usize, found: usize },
    #[error("invalid integer literal `{0}`")]
    BadInteger(String),
    #[error("denominator must be positive, got `{0}`")]
    BadDenominator(String),
    #[error("term total degree {0} exceeds the supported maximum {MAX_TOTAL_DEGREE}")]
    DegreeTooLarge(u64),
    #[error("kernel document variables disagree with the particular solution")]
    InconsistentVariables,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct TermDoc {
    pub exp: Vec<u32>,
    pub num: String,
    pub den: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct PolynomialDoc {
    pub arity: usize,
    pub vars: Vec<String>,
    pub terms: Vec<TermDoc>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct OutcomeDoc {
    pub particular: PolynomialDoc,
    pub kernel_basis: Vec<PolynomialDoc>,
    pub free_count: usize,
    pub zero_order: u32,
    pub rhs_degree: i32,
    pub ambient_degree: i32,
}

/// Document form of a polynomial, terms in descending graded-lex order.
pub fn polynomial_doc(f: &Polynomial, vars: &VariableSet) -> PolynomialDoc {
    assert_eq!(f.arity(), vars.arity(), "arity mismatch");
    let mut terms: Vec<(&MultiIndex, &Rational)> = f.terms().collect();
    terms.sort_by(|a, b| b.0.cmp(a.0));
    PolynomialDoc {
        arity: f.arity(),
        vars: vars.names().to_vec(),
        terms: terms
            .into_iter()
            .map(|(alpha, c)| TermDoc {
                exp: alpha.exponents().to_vec(),
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect(),
    }
}

/// Reconstructs a polynomial (and its variable set) from a document,
/// renormalizing terms into canonical form.
pub fn polynomial_from_doc(doc: &PolynomialDoc) -> Result<(Polynomial, VariableSet), SchemaError> {
    if doc.arity == 0 {
        return Err(SchemaError::ZeroArity);
    }
    let vars = VariableSet::new(doc.vars.iter().cloned())?;
    if vars.arity() != doc.arity {
        return Err(SchemaError::VariableCount {
            expected: doc.arity,
            found: vars.arity(),
        });
    }
    let mut terms = Vec::with_capacity(doc.terms.len());
    for term in &doc.terms {
        if term.exp.len() != doc.arity {
            return Err(SchemaError::ExponentArity {
                expected: doc.arity,
                found: term.exp.len(),
            });
        }
        let total: u64 = term.exp.iter().map(|&e| u64::from(e)).sum();
        if total > MAX_TOTAL_DEGREE {
            return Err(SchemaError::DegreeTooLarge(total));
        }
        let num: BigInt = term
            .num
            .parse()
            .map_err(|_| SchemaError::BadInteger(term.num.clone()))?;
        let den: BigInt = term
            .den
            .parse()
            .map_err(|_| SchemaError::BadInteger(term.den.clone()))?;
        if den.is_zero() || den.is_negative() {
            return Err(SchemaError::BadDenominator(term.den.clone()));
        }
        terms.push((MultiIndex::new(term.exp.clone()), Rational::new(num, den)));
    }
    Ok((Polynomial::from_terms(doc.arity, terms), vars))
}

pub fn outcome_doc(outcome: &SolveOutcome, vars: &VariableSet) -> OutcomeDoc {
    OutcomeDoc {
        particular: polynomial_doc(&outcome.particular, vars),
        kernel_basis: outcome
            .kernel_basis
            .iter()
            .map(|f| polynomial_doc(f, vars))
            .collect(),
        free_count: outcome.free_count,
        zero_order: outcome.zero_order,
        rhs_degree: outcome.rhs_degree,
        ambient_degree: outcome.ambient_degree,
    }
}

pub fn outcome_from_doc(doc: &OutcomeDoc) -> Result<(SolveOutcome, VariableSet), SchemaError> {
    let (particular, vars) = polynomial_from_doc(&doc.particular)?;
    let mut kernel_basis = Vec::with_capacity(doc.kernel_basis.len());
    for poly_doc in &doc.kernel_basis {
        let (f, f_vars) = polynomial_from_doc(poly_doc)?;
        if f_vars != vars {
            return Err(SchemaError::InconsistentVariables);
        }
        kernel_basis.push(f);
    }
    Ok((
        SolveOutcome {
            particular,
            kernel_basis,
            free_count: doc.free_count,
            zero_order: doc.zero_order,
            rhs_degree: doc.rhs_degree,
            ambient_degree: doc.ambient_degree,
        },
        vars,
    ))
}

/// Serializes a polynomial to its structured text form.
pub fn to_structured_polynomial(f: &Polynomial, vars: &VariableSet) -> String {
    serde_json::to_string_pretty(&polynomial_doc(f, vars)).expect("document serializes")
}

/// Parses the structured text form of a polynomial.
pub fn from_structured_polynomial(text: &str) -> Result<(Polynomial, VariableSet), SchemaError> {
    let doc: PolynomialDoc = serde_json::from_str(text)?;
    polynomial_from_doc(&doc)
}

/// Serializes a solve outcome to its structured text form.
pub fn to_structured_outcome(outcome: &SolveOutcome, vars: &VariableSet) -> String {
    serde_json::to_string_pretty(&outcome_doc(outcome, vars)).expect("document serializes")
}

/// Parses the structured text form of a solve outcome.
pub fn from_structured_outcome(text: &str) -> Result<(SolveOutcome, VariableSet), SchemaError> {
    let doc: OutcomeDoc = serde_json::from_str(text)?;
    outcome_from_doc(&doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use crate::solver;

    fn mi(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    #[test]
    fn zero_polynomial_document() {
        let vars = VariableSet::default();
        let doc = polynomial_doc(&Polynomial::zero(2), &vars);
        assert_eq!(doc.arity, 2);
        assert!(doc.terms.is_empty());
        let text = to_structured_polynomial(&Polynomial::zero(2), &vars);
        let (back, back_vars) = from_structured_polynomial(&text).unwrap();
        assert!(back.is_zero());
        assert_eq!(back_vars, vars);
    }

    #[test]
    fn polynomial_roundtrip() {
        let vars = VariableSet::default();
        let f = Polynomial::from_terms(
            2,
            vec![
                (mi(&[2, 0]), rat(1, 2)),
                (mi(&[0, 0]), rat_int(-3)),
                (mi(&[1, 1]), rat(-7, 5)),
            ],
        );
        let text = to_structured_polynomial(&f, &vars);
        let (back, back_vars) = from_structured_polynomial(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(back_vars, vars);
    }

    #[test]
    fn terms_are_descending() {
        let vars = VariableSet::default();
        let f = Polynomial::from_terms(
            2,
            vec![(mi(&[0, 0]), rat_int(1)), (mi(&[1, 1]), rat_int(1))],
        );
        let doc = polynomial_doc(&f, &vars);
        assert_eq!(doc.terms[0].exp, vec![1, 1]);
        assert_eq!(doc.terms[1].exp, vec![0, 0]);
    }

    #[test]
    fn missing_arity_is_schema_error() {
        let err = from_structured_polynomial(r#"{"vars": ["x","y"], "terms": []}"#).unwrap_err();
        assert!(matches!(err, SchemaError::Json(_)));
        assert!(err.to_string().contains("arity"));
    }

    #[test]
    fn bad_documents_are_rejected() {
        let cases = [
            r#"{"arity": 0, "vars": [], "terms": []}"#,
            r#"{"arity": 2, "vars": ["x"], "terms": []}"#,
            r#"{"arity": 2, "vars": ["x","x"], "terms": []}"#,
            r#"{"arity": 2, "vars": ["x","y"], "terms": [{"exp": [1], "num": "1", "den": "1"}]}"#,
            r#"{"arity": 2, "vars": ["x","y"], "terms": [{"exp": [1,0], "num": "a", "den": "1"}]}"#,
            r#"{"arity": 2, "vars": ["x","y"], "terms": [{"exp": [1,0], "num": "1", "den": "0"}]}"#,
            r#"{"arity": 2, "vars": ["x","y"], "terms": [{"exp": [1,0], "num": "1", "den": "-2"}]}"#,
            r#"{"arity": 2, "vars": ["x","y"], "terms": [{"exp": [4294967295,4294967295], "num": "1", "den": "1"}]}"#,
            "not json at all",
        ];
        for case in cases {
            assert!(from_structured_polynomial(case).is_err(), "accepted {case}");
        }
    }

    #[test]
    fn duplicate_terms_renormalize() {
        let text = r#"{"arity": 2, "vars": ["x","y"],
            "terms": [{"exp": [1,0], "num": "1", "den": "1"},
                      {"exp": [1,0], "num": "-1", "den": "1"}]}"#;
        let (f, _) = from_structured_polynomial(text).unwrap();
        assert!(f.is_zero());
    }

    #[test]
    fn outcome_roundtrip() {
        let vars = VariableSet::default();
        let p = Polynomial::from_terms(
            2,
            vec![(mi(&[0, 0]), rat_int(1)), (mi(&[1, 0]), rat_int(1))],
        );
        let q = Polynomial::monomial(mi(&[1, 0]), rat_int(1));
        let outcome = solver::solution_family(&p, &q, 3).unwrap();
        let text = to_structured_outcome(&outcome, &vars);
        let (back, back_vars) = from_structured_outcome(&text).unwrap();
        assert_eq!(back, outcome);
        assert_eq!(back_vars, vars);
    }

    #[test]
    fn big_coefficients_survive() {
        let vars = VariableSet::default();
        let big = Rational::new(
            "123456789012345678901234567890".parse::<BigInt>().unwrap(),
            "987654321098765432109876543211".parse::<BigInt>().unwrap(),
        );
        let f = Polynomial::monomial(mi(&[3, 4]), big);
        let text = to_structured_polynomial(&f, &vars);
        let (back, _) = from_structured_polynomial(&text).unwrap();
        assert_eq!(back, f);
    }
}
