//! Dense row-major matrices over a prime field.

use std::fmt;

use super::field::PrimeField;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn new(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let p = field.modulus();
        let data = data.into_iter().map(|v| v % p).collect();
        Ok(FpMatrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u32,
    ) -> Self {
        let p = field.modulus();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % p);
            }
        }
        FpMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u32>]) -> Result<Self> {
        if let Some(c) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch(format!(
                "column of length {} in a matrix with {rows} rows",
                c.len()
            )));
        }
        Ok(Self::from_fn(field, rows, columns.len(), |i, j| {
            columns[j][i]
        }))
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.field.modulus();
    }

    /// Adds `v` to entry `(i, j)`.
    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: u32) {
        let k = i * self.cols + j;
        self.data[k] = self.field.add(self.data[k], v);
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> FpMatrix {
        FpMatrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn select_columns(&self, idx: &[usize]) -> FpMatrix {
        FpMatrix::from_fn(self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hconcat of {} and {} rows",
                self.rows, other.rows
            )));
        }
        Ok(FpMatrix::from_fn(
            self.field,
            self.rows,
            self.cols + other.cols,
            |i, j| {
                if j < self.cols {
                    self.get(i, j)
                } else {
                    other.get(i, j - self.cols)
                }
            },
        ))
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.field.modulus() as u64;
        let mut out = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            let acc = &mut out[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for (o, &b) in acc.iter_mut().zip(other.row(k)) {
                    *o = (*o + a * b as u64) % p;
                }
            }
        }
        Ok(FpMatrix {
            field: self.field,
            rows: self.rows,
            cols: other.cols,
            data: out.into_iter().map(|v| v as u32).collect(),
        })
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let p = self.field.modulus() as u64;
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

    /// Reduced row-echelon form together with its pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            for j in c..cols {
                let k = r * cols + j;
                self.data[k] = f.mul(self.data[k], inv);
            }
            let pivot_row: Vec<u32> = self.row(r)[c..].to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                let neg = f.neg(factor);
                let row = &mut self.data[i * cols + c..(i + 1) * cols];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = f.add(*x, f.mul(neg, y));
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Rank by forward elimination with delayed modular reduction.
    pub fn rank(&self) -> usize {
        rank_of(self.field, self.rows, self.cols, &self.data)
    }

    /// Columns form a basis of the null space `{k : self * k = 0}`.
    pub fn kernel_basis(&self) -> FpMatrix {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = FpMatrix::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                k.set(pc, j, f.neg(r.get(i, fc)));
            }
        }
        k
    }

    /// A maximal independent subset of the columns (earliest-first) and its indices.
    pub fn column_basis(&self) -> (FpMatrix, Vec<usize>) {
        let (_, pivots) = self.rref();
        (self.select_columns(&pivots), pivots)
    }

    /// Whether `v` lies in the column span, decided by `rank(m) == rank(m | v)`.
    pub fn image_membership(&self, v: &[u32]) -> Result<bool> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        if v.iter().all(|&x| x % self.field.modulus() == 0) {
            return Ok(true);
        }
        let aug = self.hconcat(&FpMatrix::new(self.field, self.rows, 1, v.to_vec())?)?;
        Ok(self.rank() == aug.rank())
    }

    /// Some `x` with `self * x = v`, if one exists.
    pub fn solve(&self, v: &[u32]) -> Result<Option<Vec<u32>>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let aug = self.hconcat(&FpMatrix::new(self.field, self.rows, 1, v.to_vec())?)?;
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = r.get(i, self.cols);
        }
        Ok(Some(x))
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "FpMatrix {}x{} over F_{}",
            self.rows,
            self.cols,
            self.field.modulus()
        )?;
        for i in 0..self.rows.min(16) {
            writeln!(f, "  {:?}", &self.row(i)[..self.cols.min(16)])?;
        }
        Ok(())
    }
}

/// Rank of a row-major `rows x cols` block.
///
/// Rows below the pivot accumulate products in `u64` without reduction until
/// they could overflow; only the current pivot column is reduced eagerly.
pub(crate) fn rank_of(field: PrimeField, rows: usize, cols: usize, data: &[u32]) -> usize {
    if rows == 0 || cols == 0 {
        return 0;
    }
    let p = field.modulus() as u64;
    let step = (p - 1) * (p - 1);
    let limit = (u64::MAX - p).checked_div(step).unwrap_or(u64::MAX);
    let mut m: Vec<u64> = data.iter().map(|&v| v as u64).collect();
    let mut pending = vec![0u64; rows];
    let mut pivot = vec![0u32; cols];
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let mut found = None;
        for r in rank..rows {
            let v = m[r * cols + c] % p;
            m[r * cols + c] = v;
            if v != 0 && found.is_none() {
                found = Some(r);
            }
        }
        let Some(r0) = found else { continue };
        if r0 != rank {
            let (a, b) = m.split_at_mut(r0 * cols);
            a[rank * cols..(rank + 1) * cols].swap_with_slice(&mut b[..cols]);
            pending.swap(r0, rank);
        }
        let inv = field.inv(m[rank * cols + c] as u32) as u64;
        for j in c + 1..cols {
            pivot[j] = ((m[rank * cols + j] % p) * inv % p) as u32;
        }
        let tail = &pivot[c + 1..];
        for r in rank + 1..rows {
            let v = m[r * cols + c];
            if v == 0 {
                continue;
            }
            let row = &mut m[r * cols + c + 1..(r + 1) * cols];
            if pending[r] >= limit {
                for x in row.iter_mut() {
                    *x %= p;
                }
                pending[r] = 0;
            }
            let factor = p - v;
            for (x, &y) in row.iter_mut().zip(tail) {
                *x = x.wrapping_add(factor.wrapping_mul(y as u64));
            }
            m[r * cols + c] = 0;
            pending[r] += 1;
        }
        rank += 1;
    }
    rank
}
