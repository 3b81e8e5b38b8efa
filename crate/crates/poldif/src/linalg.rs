//! Exact linear algebra over the rationals: fraction-free elimination,
//! rank, nullspace bases, and affine solution sets with a deterministic
//! free-variable choice.
//!
//! Elimination clears each row to big integers and runs Bareiss one-step
//! fraction-free reduction, which keeps intermediate entries as minors of
//! the scaled matrix instead of letting fractions compound; a final rational
//! division pass produces the reduced row-echelon form. Pivots are chosen by
//! scanning columns left to right and taking the first row with a nonzero
//! entry, so identical inputs give bit-identical outputs.

use num::{BigInt, Integer, One, Zero};
use thiserror::Error;

use crate::monomial::MultiIndex;
use crate::rational::Rational;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("linear system is inconsistent")]
    Inconsistent,
}

/// Dense matrix of exact rationals, with optional monomial labels naming
/// what each row and column stands for.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
    row_labels: Option<Vec<MultiIndex>>,
    col_labels: Option<Vec<MultiIndex>>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        RationalMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn with_labels(
        mut self,
        row_labels: Vec<MultiIndex>,
        col_labels: Vec<MultiIndex>,
    ) -> Self {
        assert_eq!(row_labels.len(), self.rows, "row label count");
        assert_eq!(col_labels.len(), self.cols, "column label count");
        self.row_labels = Some(row_labels);
        self.col_labels = Some(col_labels);
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_labels(&self) -> Option<&[MultiIndex]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[MultiIndex]> {
        self.col_labels.as_deref()
    }

    /// `M · v` exactly.
    pub fn mul_vector(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(m, x)| !m.is_zero() && !x.is_zero())
                    .map(|(m, x)| m * x)
                    .fold(Rational::zero(), |acc, t| acc + t)
            })
            .collect()
    }
}

/// Result of reducing a matrix: the reduced row-echelon form plus the pivot
/// bookkeeping everything else is built from.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rref: RationalMatrix,
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
    pub free_columns: Vec<usize>,
}

/// One solution of `M·x = b` together with a basis of the homogeneous
/// solutions; every solution is `particular + Σ λᵢ·basisᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Rational>,
    pub nullspace_basis: Vec<Vec<Rational>>,
    pub pivot_columns: Vec<usize>,
    pub free_columns: Vec<usize>,
}

/// Clears denominators row by row; scaling a row never changes the solution
/// set of `[M|b]` or the row space of `M`.
fn integer_rows(m: &RationalMatrix, rhs: Option<&[Rational]>) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|r| {
            let rat_row: Vec<&Rational> = match rhs {
                Some(b) => m.row(r).iter().chain(std::iter::once(&b[r])).collect(),
                None => m.row(r).iter().collect(),
            };
            let lcm = rat_row
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            rat_row
                .into_iter()
                .map(|v| v.numer() * (&lcm / v.denom()))
                .collect()
        })
        .collect()
}

/// Bareiss fraction-free forward elimination restricted to the first
/// `active_cols` columns (trailing columns ride along as right-hand sides).
/// Returns the pivot (row, column) list; on exit rows are permuted so pivot
/// `i` sits in row `i`.
fn fraction_free_forward(m: &mut [Vec<BigInt>], active_cols: usize) -> Vec<(usize, usize)> {
    let rows = m.len();
    let total_cols = m.first().map_or(0, Vec::len);
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut prev_pivot = BigInt::one();
    let mut next_row = 0;
    for col in 0..active_cols {
        if next_row == rows {
            break;
        }
        let Some(hit) = (next_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(next_row, hit);
        for r in next_row + 1..rows {
            // Every row below must be rescaled by pivot/prev_pivot even when
            // its multiplier is zero; skipping that breaks the minor
            // structure Bareiss division relies on.
            let mult = std::mem::replace(&mut m[r][col], BigInt::zero());
            for c in col + 1..total_cols {
                let val = if mult.is_zero() {
                    if m[r][c].is_zero() {
                        continue;
                    }
                    &m[next_row][col] * &m[r][c]
                } else {
                    &m[next_row][col] * &m[r][c] - &mult * &m[next_row][c]
                };
                let (q, rem) = val.div_rem(&prev_pivot);
                assert!(
                    rem.is_zero(),
                    "internal defect: fraction-free elimination hit a non-exact division"
                );
                m[r][c] = q;
            }
        }
        prev_pivot = m[next_row][col].clone();
        pivots.push((next_row, col));
        next_row += 1;
    }
    pivots
}

/// Divides pivot rows back to rationals and eliminates above each pivot,
/// yielding reduced row-echelon rows (rank rows, `total_cols` wide).
fn back_substitute(
    m: &[Vec<BigInt>],
    pivots: &[(usize, usize)],
    total_cols: usize,
) -> Vec<Vec<Rational>> {
    let mut rows: Vec<Vec<Rational>> = pivots
        .iter()
        .map(|&(r, c)| {
            let pivot = m[r][c].clone();
            m[r].iter()
                .map(|v| Rational::new(v.clone(), pivot.clone()))
                .collect()
        })
        .collect();
    for i in (0..pivots.len()).rev() {
        let (_, pc) = pivots[i];
        for upper in 0..i {
            let factor = rows[upper][pc].clone();
            if factor.is_zero() {
                continue;
            }
            let (lower_rows, upper_rows) = rows.split_at_mut(i);
            let pivot_row = &upper_rows[0];
            for c in 0..total_cols {
                if !pivot_row[c].is_zero() {
                    let delta = &factor * &pivot_row[c];
                    lower_rows[upper][c] -= delta;
                }
            }
        }
    }
    rows
}

/// Reduced row-echelon form with rank and pivot/free column sets.
pub fn eliminate(m: &RationalMatrix) -> Echelon {
    let mut work = integer_rows(m, None);
    let pivots = fraction_free_forward(&mut work, m.cols);
    let reduced = back_substitute(&work, &pivots, m.cols);

    let mut rref = RationalMatrix::zero(m.rows, m.cols);
    for (i, row) in reduced.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            rref.set(i, c, v.clone());
        }
    }
    let pivot_columns: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free_columns = complement(&pivot_columns, m.cols);
    Echelon {
        rref,
        rank: pivots.len(),
        pivot_columns,
        free_columns,
    }
}

fn complement(pivot_columns: &[usize], cols: usize) -> Vec<usize> {
    let mut is_pivot = vec![false; cols];
    for &c in pivot_columns {
        is_pivot[c] = true;
    }
    (0..cols).filter(|&c| !is_pivot[c]).collect()
}

pub fn rank(m: &RationalMatrix) -> usize {
    eliminate(m).rank
}

/// A basis of `{v : M·v = 0}`: one vector per free column, that free
/// coordinate set to one and the pivot coordinates back-substituted.
pub fn nullspace(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let ech = eliminate(m);
    nullspace_from_rref(&ech, m.cols)
}

fn nullspace_from_rref(ech: &Echelon, cols: usize) -> Vec<Vec<Rational>> {
    ech.free_columns
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (i, &p) in ech.pivot_columns.iter().enumerate() {
                v[p] = -ech.rref.get(i, f).clone();
            }
            v
        })
        .collect()
}

/// Solves `M·x = b` exactly. The particular solution fixes every free
/// variable to zero, which makes the output canonical for a given pivot
/// order.
pub fn solve_affine(m: &RationalMatrix, b: &[Rational]) -> Result<AffineSolution, LinalgError> {
    assert_eq!(b.len(), m.rows, "right-hand side length");
    let mut work = integer_rows(m, Some(b));
    let pivots = fraction_free_forward(&mut work, m.cols);

    // A leftover nonzero right-hand entry below the last pivot row means
    // rank([M|b]) > rank(M).
    for row in work.iter().skip(pivots.len()) {
        if !row[m.cols].is_zero() {
            return Err(LinalgError::Inconsistent);
        }
    }

    let reduced = back_substitute(&work, &pivots, m.cols + 1);
    let pivot_columns: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free_columns = complement(&pivot_columns, m.cols);

    let mut particular = vec![Rational::zero(); m.cols];
    for (i, &c) in pivot_columns.iter().enumerate() {
        particular[c] = reduced[i][m.cols].clone();
    }

    let mut rref = RationalMatrix::zero(pivots.len(), m.cols);
    for (i, row) in reduced.iter().enumerate() {
        for c in 0..m.cols {
            rref.set(i, c, row[c].clone());
        }
    }
    let ech = Echelon {
        rref,
        rank: pivots.len(),
        pivot_columns: pivot_columns.clone(),
        free_columns: free_columns.clone(),
    };
    let nullspace_basis = nullspace_from_rref(&ech, m.cols);

    Ok(AffineSolution {
        particular,
        nullspace_basis,
        pivot_columns,
        free_columns,
    })
}
