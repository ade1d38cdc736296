//! Small dense real matrices and the elimination routines the tree identities need.
//!
//! Everything here is row-major `f64` and sized for desk-scale problems
//! (tens of rows). Elimination uses partial pivoting throughout.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance used when a caller does not supply one.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// The all-ones matrix `J`.
    pub fn ones(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![1.0; rows * cols] }
    }

    /// Column vector from a slice.
    pub fn column(values: &[f64]) -> Result<Self> {
        Self::from_vec(values.len(), 1, values.to_vec())
    }

    /// Builds a matrix from row-major data, rejecting NaN and infinities.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{} entries", rows * cols),
                got: format!("{} entries", data.len()),
            });
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row: pos / cols.max(1), col: pos % cols.max(1) });
        }
        Ok(DenseMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: format!("{c} columns"),
                    got: format!("{} columns in row {}", row.len(), i + 1),
                });
            }
            data.extend_from_slice(row);
        }
        Self::from_vec(r, c, data)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, factor: f64) -> Self {
        DenseMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * factor).collect() }
    }

    /// Elementwise (Hadamard) product.
    pub fn hadamard(&self, other: &DenseMatrix) -> Result<Self> {
        self.expect_same_shape(other)?;
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a * b).collect(),
        })
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| (self[(i, j)] - self[(j, i)]).abs() <= tol))
    }

    /// Row sums, `A·1`.
    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.rows).map(|i| self.row(i).iter().sum()).collect()
    }

    /// Strict upper triangle, zero elsewhere.
    pub fn strict_upper(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| if i < j { self[(i, j)] } else { 0.0 })
    }

    fn expect_same_shape(&self, other: &DenseMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{}x{}", self.rows, self.cols),
                got: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &DenseMatrix) -> Result<Self> {
        self.expect_same_shape(other)?;
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &DenseMatrix) -> Result<Self> {
        self.expect_same_shape(other)?;
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

// The operator impls panic on shape mismatch; use the `checked_*` / `matmul`
// functions where shapes come from untrusted input.
impl Add for &DenseMatrix {
    type Output = DenseMatrix;

    fn add(self, rhs: &DenseMatrix) -> DenseMatrix {
        self.checked_add(rhs).expect("matrix shapes differ")
    }
}

impl Sub for &DenseMatrix {
    type Output = DenseMatrix;

    fn sub(self, rhs: &DenseMatrix) -> DenseMatrix {
        self.checked_sub(rhs).expect("matrix shapes differ")
    }
}

impl Mul for &DenseMatrix {
    type Output = DenseMatrix;

    fn mul(self, rhs: &DenseMatrix) -> DenseMatrix {
        matmul(self, rhs).expect("inner dimensions differ")
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

pub fn matmul(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch {
            expected: format!("{} rows on the right operand", a.cols),
            got: format!("{}", b.rows),
        });
    }
    let mut out = DenseMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a[(i, k)];
            if aik == 0.0 {
                continue;
            }
            for j in 0..b.cols {
                out[(i, j)] += aik * b[(k, j)];
            }
        }
    }
    Ok(out)
}

/// Largest absolute entry; zero for an empty matrix.
pub fn max_abs(a: &DenseMatrix) -> f64 {
    a.data.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

/// `DEFAULT_TOL` scaled by the magnitude of `a` (never below the bare default).
pub fn default_tolerance(a: &DenseMatrix) -> f64 {
    DEFAULT_TOL * max_abs(a).max(1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub consistent: bool,
    /// One solution (free variables set to zero); present iff `consistent`.
    pub solution: Option<DenseMatrix>,
    pub rank: usize,
}

impl ConsistencyReport {
    /// True when the system is consistent and has no free variables.
    pub fn is_unique(&self, unknowns: usize) -> bool {
        self.consistent && self.rank == unknowns
    }
}

/// Decides whether `A·X = B` has a solution and returns one if so.
///
/// `A` may be rectangular (m×k); `B` is m×p and every column is checked.
/// Row echelon form is reached with partial pivoting; a column whose
/// remaining entries are all below `tol` is treated as free. After
/// elimination, any row with no pivot must have a right-hand side below
/// `tol` in every column.
pub fn solve_consistent(a: &DenseMatrix, b: &DenseMatrix, tol: f64) -> Result<ConsistencyReport> {
    if a.rows != b.rows {
        return Err(Error::DimensionMismatch {
            expected: format!("{} rows on the right-hand side", a.rows),
            got: format!("{}", b.rows),
        });
    }
    let (lhs, rhs, pivot_cols) = echelon(a, b, tol);
    let rank = pivot_cols.len();
    let consistent = (rank..a.rows).all(|r| (0..b.cols).all(|c| rhs[(r, c)].abs() < tol));
    if !consistent {
        return Ok(ConsistencyReport { consistent, solution: None, rank });
    }
    let solution = back_substitute(&lhs, &pivot_cols, |r, c| rhs[(r, c)], b.cols);
    Ok(ConsistencyReport { consistent, solution: Some(solution), rank })
}

/// Basis of `{x : A·x = 0}`, one column per free variable of the echelon
/// form reached with tolerance `tol`.
pub fn null_space(a: &DenseMatrix, tol: f64) -> DenseMatrix {
    let (lhs, _, pivot_cols) = echelon(a, &DenseMatrix::zeros(a.rows, 0), tol);
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = DenseMatrix::zeros(a.cols, free.len());
    for (f, &col) in free.iter().enumerate() {
        // Move the free column to the right-hand side.
        let x = back_substitute(&lhs, &pivot_cols, |r, _| -lhs[(r, col)], 1);
        for &pc in &pivot_cols {
            basis[(pc, f)] = x[(pc, 0)];
        }
        basis[(col, f)] = 1.0;
    }
    basis
}

/// Row echelon form of `[A | B]` with partial pivoting.
fn echelon(a: &DenseMatrix, b: &DenseMatrix, tol: f64) -> (DenseMatrix, DenseMatrix, Vec<usize>) {
    let (m, k, p) = (a.rows, a.cols, b.cols);
    let mut lhs = a.clone();
    let mut rhs = b.clone();
    let mut pivot_cols = Vec::new();
    let mut row = 0;

    for col in 0..k {
        if row == m {
            break;
        }
        let (best, mag) =
            (row..m)
                .map(|r| (r, lhs[(r, col)].abs()))
                .fold((row, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if mag < tol {
            continue;
        }
        if best != row {
            swap_rows(&mut lhs, best, row);
            swap_rows(&mut rhs, best, row);
        }
        let pivot = lhs[(row, col)];
        for r in row + 1..m {
            let factor = lhs[(r, col)] / pivot;
            if factor == 0.0 {
                continue;
            }
            lhs[(r, col)] = 0.0;
            for c in col + 1..k {
                lhs[(r, c)] -= factor * lhs[(row, c)];
            }
            for c in 0..p {
                rhs[(r, c)] -= factor * rhs[(row, c)];
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    (lhs, rhs, pivot_cols)
}

/// Solves the pivot rows of an echelon form, free variables set to zero.
fn back_substitute(
    lhs: &DenseMatrix,
    pivot_cols: &[usize],
    rhs: impl Fn(usize, usize) -> f64,
    p: usize,
) -> DenseMatrix {
    let mut x = DenseMatrix::zeros(lhs.cols, p);
    for (r, &col) in pivot_cols.iter().enumerate().rev() {
        for c in 0..p {
            let mut acc = rhs(r, c);
            for &later in &pivot_cols[r + 1..] {
                acc -= lhs[(r, later)] * x[(later, c)];
            }
            x[(col, c)] = acc / lhs[(r, col)];
        }
    }
    x
}

fn swap_rows(m: &mut DenseMatrix, a: usize, b: usize) {
    let cols = m.cols;
    for c in 0..cols {
        m.data.swap(a * cols + c, b * cols + c);
    }
}

/// Inverse by Gauss–Jordan elimination with the default scaled tolerance.
pub fn inverse(a: &DenseMatrix) -> Result<DenseMatrix> {
    inverse_with_tol(a, default_tolerance(a))
}

pub fn inverse_with_tol(a: &DenseMatrix, tol: f64) -> Result<DenseMatrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: "square matrix".into(),
            got: format!("{}x{}", a.rows, a.cols),
        });
    }
    let n = a.rows;
    let mut work = a.clone();
    let mut inv = DenseMatrix::identity(n);
    for col in 0..n {
        let (best, mag) =
            (col..n)
                .map(|r| (r, work[(r, col)].abs()))
                .fold((col, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if mag < tol {
            return Err(Error::Singular { pivot: mag, tol });
        }
        swap_rows(&mut work, best, col);
        swap_rows(&mut inv, best, col);
        let pivot = work[(col, col)];
        for c in 0..n {
            work[(col, c)] /= pivot;
            inv[(col, c)] /= pivot;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = work[(r, col)];
            if factor == 0.0 {
                continue;
            }
            for c in 0..n {
                work[(r, c)] -= factor * work[(col, c)];
                inv[(r, c)] -= factor * inv[(col, c)];
            }
        }
    }
    Ok(inv)
}
