//! Smith normal form of integer matrices.
//!
//! Exact row/column reduction over checked 128-bit integers. The boundary
//! operators this is used on have entries in `{-1, 0, 1}` and modest size,
//! but intermediate entries can grow during elimination, so every product is
//! checked.

use crate::error::{Error, Result};

/// Dense integer matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMat {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i128 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i128) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// `row[a] -= q * row[b]`
    fn row_axpy(&mut self, a: usize, b: usize, q: i128) -> Result<()> {
        for c in 0..self.cols {
            let t = q.checked_mul(self.get(b, c)).ok_or(Error::Overflow)?;
            let v = self.get(a, c).checked_sub(t).ok_or(Error::Overflow)?;
            self.set(a, c, v);
        }
        Ok(())
    }

    /// `col[a] -= q * col[b]`
    fn col_axpy(&mut self, a: usize, b: usize, q: i128) -> Result<()> {
        for r in 0..self.rows {
            let t = q.checked_mul(self.get(r, b)).ok_or(Error::Overflow)?;
            let v = self.get(r, a).checked_sub(t).ok_or(Error::Overflow)?;
            self.set(r, a, v);
        }
        Ok(())
    }

    fn add_row(&mut self, a: usize, b: usize) -> Result<()> {
        for c in 0..self.cols {
            let v = self
                .get(a, c)
                .checked_add(self.get(b, c))
                .ok_or(Error::Overflow)?;
            self.set(a, c, v);
        }
        Ok(())
    }
}

/// Invariant factors of a matrix, nonnegative and forming a divisibility
/// chain, padded with zeros up to `min(rows, cols)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub invariant_factors: Vec<i128>,
    pub rank: usize,
}

impl SnfResult {
    /// True when no invariant factor exceeds 1, i.e. the cokernel of the
    /// matrix is free.
    pub fn torsion_free(&self) -> bool {
        self.invariant_factors.iter().all(|&d| d == 0 || d == 1)
    }
}

/// Compute the Smith normal form by exact elimination.
///
/// Pivots are chosen as the smallest nonzero entry of the remaining
/// submatrix; rows and columns are reduced by Euclidean steps until the
/// pivot divides its whole submatrix before moving on, which makes the
/// diagonal a divisibility chain by construction.
pub fn smith_normal_form(m: &IntMat) -> Result<SnfResult> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let n = rows.min(cols);
    let mut k = 0usize;

    while k < n {
        let Some((pi, pj)) = min_nonzero(&a, k) else {
            break;
        };
        a.swap_rows(k, pi);
        a.swap_cols(k, pj);

        'reduce: loop {
            // Clear column k by Euclidean steps.
            for r in (k + 1)..rows {
                let v = a.get(r, k);
                if v != 0 {
                    let q = v / a.get(k, k);
                    a.row_axpy(r, k, q)?;
                    if a.get(r, k) != 0 {
                        // Remainder is a smaller pivot.
                        a.swap_rows(k, r);
                        continue 'reduce;
                    }
                }
            }
            // Clear row k.
            for c in (k + 1)..cols {
                let v = a.get(k, c);
                if v != 0 {
                    let q = v / a.get(k, k);
                    a.col_axpy(c, k, q)?;
                    if a.get(k, c) != 0 {
                        a.swap_cols(k, c);
                        continue 'reduce;
                    }
                }
            }
            // Pivot must divide the rest of the submatrix.
            let p = a.get(k, k);
            for r in (k + 1)..rows {
                for c in (k + 1)..cols {
                    if a.get(r, c) % p != 0 {
                        a.add_row(k, r)?;
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        k += 1;
    }

    let mut invariant_factors: Vec<i128> = (0..n).map(|i| a.get(i, i).abs()).collect();
    let rank = invariant_factors.iter().filter(|&&d| d != 0).count();
    invariant_factors.truncate(n);
    Ok(SnfResult {
        invariant_factors,
        rank,
    })
}

fn min_nonzero(a: &IntMat, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, i128)> = None;
    for r in k..a.rows {
        for c in k..a.cols {
            let v = a.get(r, c).abs();
            if v != 0 && best.is_none_or(|(_, _, bv)| v < bv) {
                best = Some((r, c, v));
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}
