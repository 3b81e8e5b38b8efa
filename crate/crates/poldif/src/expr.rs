//! Text syntax for polynomials: a recursive-descent parser and a canonical
//! printer satisfying `parse(format(f)) == f`.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := rational | var | '(' expr ')' | '-' factor
//! ```
//!
//! Rational literals are `a` or `a/b` with decimal integers and no interior
//! whitespace; exponents are natural-number literals. Implicit
//! multiplication (`2x`) is rejected.
//!
//! Exponents and the total degree of the expanded expression are capped at
//! [`MAX_TOTAL_DEGREE`]; the parser tracks a degree bound while descending
//! and rejects anything beyond it with a position-bearing error, so parsing
//! untrusted input cannot exhaust memory.

use num::{BigInt, One, Signed, Zero};
use thiserror::Error;

use crate::monomial::MultiIndex;
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Cap on exponent literals and on the total degree of the expanded
/// expression.
pub const MAX_TOTAL_DEGREE: u64 = 1024;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {position}: expected {expected}, found {found}")]
    Syntax {
        position: usize,
        expected: String,
        found: String,
    },
    #[error("unknown variable `{name}` at byte {position}")]
    UnknownVariable { position: usize, name: String },
    #[error("negative exponent at byte {position}")]
    NegativeExponent { position: usize },
    #[error(
        "expression at byte {position} expands beyond the supported total degree {MAX_TOTAL_DEGREE}"
    )]
    DegreeTooLarge { position: usize },
}

impl ParseError {
    /// Byte offset of the offending token.
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { position, .. }
            | ParseError::UnknownVariable { position, .. }
            | ParseError::NegativeExponent { position }
            | ParseError::DegreeTooLarge { position } => *position,
        }
    }
}

/// Ordered, distinct variable names fixing the arity and the meaning of each
/// exponent slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableSet {
    names: Vec<String>,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum VariableSetError {
    #[error("variable set must not be empty")]
    Empty,
    #[error("invalid variable name `{0}`")]
    BadName(String),
    #[error("duplicate variable name `{0}`")]
    Duplicate(String),
}

impl VariableSet {
    /// Validates names against `[a-zA-Z][a-zA-Z0-9_]*` and uniqueness.
    pub fn new<I, S>(names: I) -> Result<Self, VariableSetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(VariableSetError::Empty);
        }
        let mut seen = std::collections::HashSet::new();
        for name in &names {
            if !valid_name(name) {
                return Err(VariableSetError::BadName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(VariableSetError::Duplicate(name.clone()));
            }
        }
        Ok(VariableSet { names })
    }

    /// `x1, …, xk`.
    pub fn numbered(arity: usize) -> Self {
        assert!(arity >= 1);
        VariableSet {
            names: (1..=arity).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, var: usize) -> &str {
        &self.names[var]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// The bivariate default `x, y`.
impl Default for VariableSet {
    fn default() -> Self {
        VariableSet {
            names: vec!["x".into(), "y".into()],
        }
    }
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Expression tree produced by the parser; variables are indices into the
/// active [`VariableSet`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprAst {
    Number(Rational),
    Variable(usize),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Neg(Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
}

impl ExprAst {
    /// Expands the tree into canonical sparse form.
    pub fn expand(&self, arity: usize) -> Polynomial {
        match self {
            ExprAst::Number(c) => Polynomial::constant(arity, c.clone()),
            ExprAst::Variable(v) => Polynomial::variable(arity, *v),
            ExprAst::Add(a, b) => &a.expand(arity) + &b.expand(arity),
            ExprAst::Sub(a, b) => &a.expand(arity) - &b.expand(arity),
            ExprAst::Neg(a) => -&a.expand(arity),
            ExprAst::Mul(a, b) => &a.expand(arity) * &b.expand(arity),
            ExprAst::Pow(a, e) => a.expand(arity).pow(*e),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Number(BigInt, Option<BigInt>),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Number(..) => "a number".into(),
            Token::Ident(name) => format!("`{name}`"),
            Token::Plus => "'+'".into(),
            Token::Minus => "'-'".into(),
            Token::Star => "'*'".into(),
            Token::Caret => "'^'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
        }
    }
}

struct Lexer<'a> {
    input: &'a str,
    tokens: Vec<(usize, Token)>,
}

fn lex(input: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = input.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                tokens.push((i, Token::Plus));
                i += 1;
            }
            b'-' => {
                tokens.push((i, Token::Minus));
                i += 1;
            }
            b'*' => {
                tokens.push((i, Token::Star));
                i += 1;
            }
            b'^' => {
                tokens.push((i, Token::Caret));
                i += 1;
            }
            b'(' => {
                tokens.push((i, Token::LParen));
                i += 1;
            }
            b')' => {
                tokens.push((i, Token::RParen));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let numer: BigInt = input[start..i].parse().expect("digits parse");
                // A '/' directly after the digits continues the rational
                // literal; there is no division operator in the grammar.
                let denom = if i < bytes.len() && bytes[i] == b'/' {
                    let slash = i;
                    i += 1;
                    let dstart = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if dstart == i {
                        return Err(ParseError::Syntax {
                            position: slash + 1,
                            expected: "a denominator after '/'".into(),
                            found: found_at(input, slash + 1),
                        });
                    }
                    let d: BigInt = input[dstart..i].parse().expect("digits parse");
                    if d.is_zero() {
                        return Err(ParseError::Syntax {
                            position: dstart,
                            expected: "a nonzero denominator".into(),
                            found: "0".into(),
                        });
                    }
                    Some(d)
                } else {
                    None
                };
                tokens.push((start, Token::Number(numer, denom)));
            }
            _ if (b as char).is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                tokens.push((start, Token::Ident(input[start..i].to_string())));
            }
            _ => {
                return Err(ParseError::Syntax {
                    position: i,
                    expected: "a number, variable, operator, or parenthesis".into(),
                    found: found_at(input, i),
                });
            }
        }
    }
    Ok(tokens)
}

fn found_at(input: &str, position: usize) -> String {
    match input[position..].chars().next() {
        Some(c) => format!("'{c}'"),
        None => "end of input".into(),
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    pos: usize,
    vars: &'a VariableSet,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(usize, Token)> {
        self.lexer.tokens.get(self.pos)
    }

    fn advance(&mut self) -> Option<(usize, Token)> {
        let t = self.lexer.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn end_position(&self) -> usize {
        self.lexer.input.len()
    }

    fn err_expected(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some((position, token)) => ParseError::Syntax {
                position: *position,
                expected: expected.into(),
                found: token.describe(),
            },
            None => ParseError::Syntax {
                position: self.end_position(),
                expected: expected.into(),
                found: "end of input".into(),
            },
        }
    }

    /// Every production returns the node together with an upper bound on
    /// its expanded total degree, so oversized expressions are rejected
    /// before any expansion happens.
    fn parse_expr(&mut self) -> Result<(ExprAst, u64), ParseError> {
        let (mut node, mut bound) = self.parse_term()?;
        loop {
            match self.peek() {
                Some((_, Token::Plus)) => {
                    self.advance();
                    let (rhs, rhs_bound) = self.parse_term()?;
                    node = ExprAst::Add(Box::new(node), Box::new(rhs));
                    bound = bound.max(rhs_bound);
                }
                Some((_, Token::Minus)) => {
                    self.advance();
                    let (rhs, rhs_bound) = self.parse_term()?;
                    node = ExprAst::Sub(Box::new(node), Box::new(rhs));
                    bound = bound.max(rhs_bound);
                }
                _ => return Ok((node, bound)),
            }
        }
    }

    fn parse_term(&mut self) -> Result<(ExprAst, u64), ParseError> {
        let (mut node, mut bound) = self.parse_factor()?;
        while let Some((star_pos, Token::Star)) = self.peek().cloned() {
            self.advance();
            let (rhs, rhs_bound) = self.parse_factor()?;
            node = ExprAst::Mul(Box::new(node), Box::new(rhs));
            bound += rhs_bound;
            if bound > MAX_TOTAL_DEGREE {
                return Err(ParseError::DegreeTooLarge { position: star_pos });
            }
        }
        Ok((node, bound))
    }

    fn parse_factor(&mut self) -> Result<(ExprAst, u64), ParseError> {
        let (base, bound) = self.parse_base()?;
        if let Some((caret_pos, Token::Caret)) = self.peek().cloned() {
            self.advance();
            let exponent = self.parse_exponent()?;
            let bound = bound * u64::from(exponent);
            if bound > MAX_TOTAL_DEGREE {
                return Err(ParseError::DegreeTooLarge { position: caret_pos });
            }
            return Ok((ExprAst::Pow(Box::new(base), exponent), bound));
        }
        Ok((base, bound))
    }

    fn parse_exponent(&mut self) -> Result<u32, ParseError> {
        match self.advance() {
            Some((position, Token::Minus)) => {
                // Peek one further for diagnostics: a number makes this a
                // negative exponent, anything else a plain syntax error.
                if matches!(self.peek(), Some((_, Token::Number(..)))) {
                    Err(ParseError::NegativeExponent { position })
                } else {
                    Err(ParseError::Syntax {
                        position,
                        expected: "a natural-number exponent".into(),
                        found: "'-'".into(),
                    })
                }
            }
            Some((position, Token::Number(n, None))) => match u32::try_from(&n) {
                Ok(e) if u64::from(e) <= MAX_TOTAL_DEGREE => Ok(e),
                _ => Err(ParseError::DegreeTooLarge { position }),
            },
            Some((position, Token::Number(_, Some(_)))) => Err(ParseError::Syntax {
                position,
                expected: "a natural-number exponent".into(),
                found: "a fraction".into(),
            }),
            Some((position, token)) => Err(ParseError::Syntax {
                position,
                expected: "a natural-number exponent".into(),
                found: token.describe(),
            }),
            None => Err(ParseError::Syntax {
                position: self.end_position(),
                expected: "a natural-number exponent".into(),
                found: "end of input".into(),
            }),
        }
    }

    fn parse_base(&mut self) -> Result<(ExprAst, u64), ParseError> {
        match self.peek().cloned() {
            Some((_, Token::Number(n, d))) => {
                self.advance();
                let denom = d.unwrap_or_else(BigInt::one);
                Ok((ExprAst::Number(Rational::new(n, denom)), 0))
            }
            Some((position, Token::Ident(name))) => {
                self.advance();
                match self.vars.index_of(&name) {
                    Some(v) => Ok((ExprAst::Variable(v), 1)),
                    None => Err(ParseError::UnknownVariable { position, name }),
                }
            }
            Some((_, Token::LParen)) => {
                self.advance();
                let inner = self.parse_expr()?;
                if matches!(self.peek(), Some((_, Token::RParen))) {
                    self.advance();
                    Ok(inner)
                } else {
                    Err(self.err_expected("')'"))
                }
            }
            Some((_, Token::Minus)) => {
                self.advance();
                let (inner, bound) = self.parse_factor()?;
                Ok((ExprAst::Neg(Box::new(inner)), bound))
            }
            _ => Err(self.err_expected("a number, variable, '(', or '-'")),
        }
    }
}

/// Parses `text` into an expression tree over `vars`.
pub fn parse_ast(text: &str, vars: &VariableSet) -> Result<ExprAst, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        lexer: Lexer { input: text, tokens },
        pos: 0,
        vars,
    };
    let (ast, _bound) = parser.parse_expr()?;
    if let Some((position, token)) = parser.peek() {
        return Err(ParseError::Syntax {
            position: *position,
            expected: "'+', '-', '*', or end of input".into(),
            found: token.describe(),
        });
    }
    Ok(ast)
}

/// Parses and expands `text` into a canonical polynomial over `vars`.
pub fn parse(text: &str, vars: &VariableSet) -> Result<Polynomial, ParseError> {
    Ok(parse_ast(text, vars)?.expand(vars.arity()))
}

/// Canonical text form: terms in descending graded-lexicographic order with
/// `a/b` rationals, `*` products and `^` powers, unit coefficients and unit
/// exponents omitted. Panics if the arity does not match `vars`.
pub fn format(f: &Polynomial, vars: &VariableSet) -> String {
    assert_eq!(
        f.arity(),
        vars.arity(),
        "polynomial arity {} does not match variable set arity {}",
        f.arity(),
        vars.arity()
    );
    if f.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(&MultiIndex, &Rational)> = f.terms().collect();
    terms.sort_by(|a, b| b.0.cmp(a.0));

    let mut out = String::new();
    for (i, (alpha, coeff)) in terms.iter().enumerate() {
        if i == 0 {
            if coeff.is_negative() {
                out.push('-');
            }
        } else if coeff.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        push_term(&mut out, alpha, &coeff.abs(), vars);
    }
    out
}

fn push_term(out: &mut String, alpha: &MultiIndex, coeff: &Rational, vars: &VariableSet) {
    let mut pieces: Vec<String> = Vec::new();
    if !coeff.is_one() || alpha.is_constant() {
        pieces.push(coeff.to_string());
    }
    for (v, &e) in alpha.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => pieces.push(vars.name(v).to_string()),
            _ => pieces.push(format!("{}^{}", vars.name(v), e)),
        }
    }
    out.push_str(&pieces.join("*"));
}
