//! Dense exact integer matrices and their determinants.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{binom, exact_div};
use crate::error::{Error, Result};

/// Largest order accepted by [`determinant_cofactor`].
pub const COFACTOR_MAX_ORDER: usize = 10;

/// A square matrix of big integers, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    order: usize,
    entries: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn from_rows<T: Into<BigInt>>(rows: Vec<Vec<T>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::domain("matrix order must be at least 1"));
        }
        let mut entries = Vec::with_capacity(order * order);
        for row in rows {
            if row.len() != order {
                return Err(Error::ShapeMismatch {
                    expected: order,
                    found: row.len(),
                });
            }
            entries.extend(row.into_iter().map(Into::into));
        }
        Ok(ExactMatrix { order, entries })
    }

    /// Builds the matrix whose `(p, q)` entry (0-based) is `f(p, q)`.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Result<Self> {
        if order == 0 {
            return Err(Error::domain("matrix order must be at least 1"));
        }
        let mut entries = Vec::with_capacity(order * order);
        for p in 0..order {
            for q in 0..order {
                entries.push(f(p, q));
            }
        }
        Ok(ExactMatrix { order, entries })
    }

    pub fn identity(order: usize) -> Result<Self> {
        Self::from_fn(order, |p, q| {
            if p == q {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.order + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.order)
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        for row in self.entries.chunks_mut(self.order) {
            row.swap(a, b);
        }
    }

    fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.rows().map(<[BigInt]>::to_vec).collect()
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, row) in self.rows().enumerate() {
            if p > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Determinant by Bareiss fraction-free elimination.
///
/// After step `k` every entry of the trailing block is a `(k+1) x (k+1)`
/// minor of the input, so the division by the previous pivot is exact.
/// A zero pivot is replaced by the first lower row with a nonzero entry in
/// the pivot column; if there is none the determinant is zero.
pub fn determinant_bareiss(m: &ExactMatrix) -> Result<BigInt> {
    let n = m.order;
    let mut a = m.to_rows();
    let mut negate = false;
    let mut prev = BigInt::one();

    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            for c in k + 1..n {
                let num = &pivot_row[k] * &row[c] - &row[k] * &pivot_row[c];
                row[c] = exact_div(&num, &prev, "bareiss elimination")?;
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }

    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Determinant by Laplace expansion along the first row.
///
/// Exponential cost; kept as an independent check on
/// [`determinant_bareiss`] and limited to order [`COFACTOR_MAX_ORDER`].
pub fn determinant_cofactor(m: &ExactMatrix) -> Result<BigInt> {
    if m.order > COFACTOR_MAX_ORDER {
        return Err(Error::OrderGuard {
            order: m.order,
            limit: COFACTOR_MAX_ORDER,
        });
    }
    let cols: Vec<usize> = (0..m.order).collect();
    Ok(cofactor(m, 0, &cols))
}

fn cofactor(m: &ExactMatrix, row: usize, cols: &[usize]) -> BigInt {
    if cols.len() == 1 {
        return m.get(row, cols[0]).clone();
    }
    let mut acc = BigInt::zero();
    for (pos, &c) in cols.iter().enumerate() {
        let entry = m.get(row, c);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry * cofactor(m, row + 1, &rest);
        if pos % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// The matrix with `(p, q)` entry `binom(tops[q], p - 1 - shifts[q])`
/// (1-based `p`, `q`).
pub fn build_binomial_matrix(tops: &[i64], shifts: &[u32]) -> Result<ExactMatrix> {
    if tops.len() != shifts.len() {
        return Err(Error::ShapeMismatch {
            expected: tops.len(),
            found: shifts.len(),
        });
    }
    ExactMatrix::from_fn(tops.len(), |p, q| {
        binom(tops[q], p as i64 - i64::from(shifts[q]))
    })
}

/// The matrix with `(p, q)` entry `binom(t[q] + k[q], p - 1)`.
pub fn build_shifted_vandermonde_matrix(t: &[i64], k: &[u32]) -> Result<ExactMatrix> {
    if t.len() != k.len() {
        return Err(Error::ShapeMismatch {
            expected: t.len(),
            found: k.len(),
        });
    }
    ExactMatrix::from_fn(t.len(), |p, q| binom(t[q] + i64::from(k[q]), p as i64))
}

/// `prod_{p > q} (t_p - t_q)` as an explicit product.
pub fn vandermonde(t: &[i64]) -> BigInt {
    let mut acc = BigInt::one();
    for (q, &tq) in t.iter().enumerate() {
        for &tp in &t[q + 1..] {
            if tp == tq {
                return BigInt::zero();
            }
            acc *= tp - tq;
        }
    }
    acc
}
