use std::fmt;

use super::field::PrimeField;
use crate::error::{Error, Result};

/// Dense row-major matrix over GF(p).
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
    field: PrimeField,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Matrix {}x{} over GF({})",
            self.rows,
            self.cols,
            self.field.p()
        )?;
        for i in 0..self.rows.min(12) {
            writeln!(f, "  {:?}", &self.row(i)[..self.cols.min(12)])?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
            field,
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from signed integer rows, reducing every entry mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * cols + j] = field.from_i64(x);
            }
        }
        m
    }

    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u32,
    ) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j) % field.p();
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x;
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        debug_assert!(x < self.field.p());
        self.data[i * self.cols + j] = x;
    }

    /// Adds `x` to entry `(i, j)`.
    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, x: u32) {
        let k = i * self.cols + j;
        self.data[k] = self.field.add(self.data[k], x);
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.field.p() as u64;
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for (x, &b) in acc.iter_mut().zip(other.row(k)) {
                    *x = (*x + a * b as u64) % p;
                }
            }
            for (j, &x) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = x as u32;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let p = self.field.p() as u64;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p)
                    as u32
            })
            .collect())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "hstack of {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut out = Matrix::zeros(self.field, self.rows, cols);
        for i in 0..self.rows {
            out.data[i * cols..i * cols + self.cols].copy_from_slice(self.row(i));
            out.data[i * cols + self.cols..(i + 1) * cols].copy_from_slice(other.row(i));
        }
        Ok(out)
    }

    pub fn select_cols(&self, sel: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, sel.len(), |i, j| self.get(i, sel[j]))
    }

    /// Row-reduces in place, pivoting only in the first `pivot_cols` columns.
    ///
    /// Pivots are the first nonzero entry scanning rows top-down, columns
    /// left to right, so the result is reproducible. With `reduced` the
    /// pivot columns are cleared above the pivot as well (RREF on the prefix).
    /// Returns the pivot columns in order; pivot `k` sits in row `k`.
    fn eliminate(&mut self, pivot_cols: usize, reduced: bool) -> Vec<usize> {
        let f = self.field;
        let p = f.p() as u64;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols.min(cols) {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in c..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            for x in &mut self.data[r * cols + c..(r + 1) * cols] {
                *x = f.mul(*x, inv);
            }
            let start = if reduced { 0 } else { r + 1 };
            let (head, tail) = self.data.split_at_mut(r * cols);
            let (pivot_row, rest) = tail.split_at_mut(cols);
            let pivot_row = &pivot_row[c..];
            let clear = |row: &mut [u32]| {
                let factor = row[c];
                if factor == 0 {
                    return;
                }
                let m = p - factor as u64;
                for (x, &y) in row[c..].iter_mut().zip(pivot_row) {
                    *x = ((*x as u64 + m * y as u64) % p) as u32;
                }
            };
            if start < r {
                for row in head.chunks_exact_mut(cols).skip(start) {
                    clear(row);
                }
            }
            for row in rest.chunks_exact_mut(cols) {
                clear(row);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Exact rank over GF(p).
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // eliminate along the shorter side
        let mut work = if self.rows < self.cols {
            self.transpose()
        } else {
            self.clone()
        };
        let pc = work.cols;
        work.eliminate(pc, false).len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Basis of the right null space, one vector per column of the result.
    pub fn kernel_basis(&self) -> Matrix {
        let mut work = self.clone();
        let pivots = work.eliminate(self.cols, true);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = Matrix::zeros(self.field, self.cols, free.len());
        for (kc, &fc) in free.iter().enumerate() {
            k.set(fc, kc, 1);
            for (row, &pc) in pivots.iter().enumerate() {
                let v = work.get(row, fc);
                k.set(pc, kc, self.field.neg(v));
            }
        }
        k
    }

    /// Coordinates of `v` in the basis given by the columns of `self`, or
    /// `None` when `v` is outside the column span.
    pub fn solve_membership(&self, v: &[u32]) -> Result<Option<Vec<u32>>> {
        let rhs = Matrix::from_columns(self.field, v.len(), &[v.to_vec()]);
        Ok(self.solve_membership_many(&rhs)?.pop().unwrap())
    }

    /// Batched [`Matrix::solve_membership`]: one answer per column of `rhs`.
    pub fn solve_membership_many(&self, rhs: &Matrix) -> Result<Vec<Option<Vec<u32>>>> {
        if rhs.rows != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "span has {} rows, right-hand side has {}",
                self.rows, rhs.rows
            )));
        }
        let k = self.cols;
        let mut work = self.hstack(rhs)?;
        let pivots = work.eliminate(k, true);
        if pivots.len() != k {
            return Err(Error::DependentSpan);
        }
        let mut out = Vec::with_capacity(rhs.cols);
        for j in 0..rhs.cols {
            let cj = k + j;
            let consistent = (k..work.rows).all(|i| work.get(i, cj) == 0);
            out.push(consistent.then(|| (0..k).map(|i| work.get(i, cj)).collect()));
        }
        Ok(out)
    }
}
