//! Dense exact matrices over `K`.

mod lattice;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use self::lattice::{lattice_basis, lattice_intersection};
use crate::error::{Error, Result};
use crate::scalar::{ExtInt, FieldContext, ValuedScalar};

/// A `rows × cols` matrix over `K`, row-major.
///
/// Square invertible matrices stand for lattices (the `R`-span of their
/// columns); wide full-rank matrices stand for membranes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixK {
    ctx: FieldContext,
    rows: usize,
    cols: usize,
    data: Vec<ValuedScalar>,
}

impl MatrixK {
    pub fn new(ctx: FieldContext, rows: usize, cols: usize, data: Vec<ValuedScalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(bad) = data.iter().find(|x| x.context() != ctx) {
            return Err(Error::ContextMismatch(ctx, bad.context()));
        }
        Ok(MatrixK { ctx, rows, cols, data })
    }

    pub fn from_rows(ctx: FieldContext, rows: Vec<Vec<ValuedScalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(ctx, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_columns(ctx: FieldContext, rows: usize, columns: &[Vec<ValuedScalar>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::Dimension("column length differs from row count".into()));
        }
        let cols = columns.len();
        let data = (0..rows).flat_map(|r| columns.iter().map(move |c| c[r].clone())).collect();
        Self::new(ctx, rows, cols, data)
    }

    pub fn zeros(ctx: FieldContext, rows: usize, cols: usize) -> Self {
        MatrixK { ctx, rows, cols, data: vec![ValuedScalar::zero(ctx); rows * cols] }
    }

    pub fn identity(ctx: FieldContext, d: usize) -> Self {
        let mut m = Self::zeros(ctx, d, d);
        for i in 0..d {
            m.set(i, i, ValuedScalar::one(ctx));
        }
        m
    }

    /// `diag(π^e_1, ..., π^e_d)`.
    pub fn uniformizer_diagonal(ctx: FieldContext, exps: &[i64]) -> Self {
        let mut m = Self::zeros(ctx, exps.len(), exps.len());
        for (i, &e) in exps.iter().enumerate() {
            m.set(i, i, ValuedScalar::uniformizer_pow(ctx, e));
        }
        m
    }

    pub fn context(&self) -> FieldContext {
        self.ctx
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

    pub fn get(&self, r: usize, c: usize) -> &ValuedScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: ValuedScalar) {
        debug_assert_eq!(v.context(), self.ctx);
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<ValuedScalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<ValuedScalar>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn row(&self, r: usize) -> &[ValuedScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn select_columns(&self, idx: &[usize]) -> MatrixK {
        let cols: Vec<_> = idx.iter().map(|&c| self.column(c)).collect();
        MatrixK::from_columns(self.ctx, self.rows, &cols).expect("columns share shape")
    }

    pub fn transpose(&self) -> MatrixK {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        MatrixK { ctx: self.ctx, rows: self.cols, cols: self.rows, data }
    }

    pub fn hconcat(&self, other: &MatrixK) -> Result<MatrixK> {
        self.same_context(other)?;
        if self.rows != other.rows {
            return Err(Error::Dimension(format!("cannot concatenate {} rows with {}", self.rows, other.rows)));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        MatrixK::from_columns(self.ctx, self.rows, &cols)
    }

    fn same_context(&self, other: &MatrixK) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch(self.ctx, other.ctx))
        }
    }

    pub fn mul(&self, other: &MatrixK) -> Result<MatrixK> {
        self.same_context(other)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = MatrixK::zeros(self.ctx, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = ValuedScalar::zero(self.ctx);
                for k in 0..self.cols {
                    let (a, b) = (self.get(r, k), other.get(k, c));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[ValuedScalar]) -> Vec<ValuedScalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(ValuedScalar::zero(self.ctx), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// `self · diag(π^e_1, ..., π^e_n)`: column `j` multiplied by `π^e_j`.
    pub fn scale_columns(&self, exps: &[i64]) -> MatrixK {
        assert_eq!(exps.len(), self.cols, "one exponent per column");
        let mut out = self.clone();
        for r in 0..self.rows {
            for (c, &e) in exps.iter().enumerate() {
                let v = out.get(r, c).mul_uniformizer_pow(e);
                out.set(r, c, v);
            }
        }
        out
    }

    /// Multiply every entry by `π^k`.
    pub fn scale_uniformizer(&self, k: i64) -> MatrixK {
        MatrixK { ctx: self.ctx, rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.mul_uniformizer_pow(k)).collect() }
    }

    /// Exact determinant by elimination; zero for singular input.
    pub fn det(&self) -> Result<ValuedScalar> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = ValuedScalar::one(self.ctx);
        for k in 0..n {
            let Some(p) = pivot_row(&a, k, k) else {
                return Ok(ValuedScalar::zero(self.ctx));
            };
            if p != k {
                a.swap_rows(p, k);
                det = -det;
            }
            let pivot = a.get(k, k).clone();
            det = &det * &pivot;
            let pinv = pivot.inv()?;
            for r in k + 1..n {
                if a.get(r, k).is_zero() {
                    continue;
                }
                let m = a.get(r, k) * &pinv;
                a.row_axpy(r, k, &m, k);
            }
        }
        Ok(det)
    }

    /// Exact inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<MatrixK> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("inverse of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = MatrixK::identity(self.ctx, n);
        for k in 0..n {
            let p = pivot_row(&a, k, k).ok_or(Error::Singular)?;
            if p != k {
                a.swap_rows(p, k);
                inv.swap_rows(p, k);
            }
            let pinv = a.get(k, k).inv()?;
            a.scale_row(k, &pinv);
            inv.scale_row(k, &pinv);
            for r in 0..n {
                if r == k || a.get(r, k).is_zero() {
                    continue;
                }
                let m = a.get(r, k).clone();
                a.row_axpy(r, k, &m, k);
                inv.row_axpy(r, k, &m, 0);
            }
        }
        Ok(inv)
    }

    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = pivot_row(&a, rank, c) else { continue };
            a.swap_rows(p, rank);
            let pinv = a.get(rank, c).inv().expect("nonzero pivot");
            for r in rank + 1..self.rows {
                if a.get(r, c).is_zero() {
                    continue;
                }
                let m = a.get(r, c) * &pinv;
                a.row_axpy(r, rank, &m, c);
            }
            rank += 1;
        }
        rank
    }

    /// `val(det(M_ω))` for a `d`-subset `ω` of the columns.
    pub fn val_det(&self, omega: &[usize]) -> Result<ExtInt> {
        if omega.len() != self.rows {
            return Err(Error::Dimension(format!("{} columns selected from a {}-row matrix", omega.len(), self.rows)));
        }
        Ok(self.select_columns(omega).det()?.val())
    }

    pub fn val_matrix(&self) -> ValMatrix {
        ValMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(ValuedScalar::val).collect() }
    }

    pub fn min_valuation(&self) -> ExtInt {
        self.data.iter().map(ValuedScalar::val).min().unwrap_or(ExtInt::Inf)
    }

    /// Whether `M ∈ GL_d(R)`: integral entries and unit determinant.
    pub fn is_unimodular(&self) -> bool {
        self.is_square()
            && self.data.iter().all(ValuedScalar::is_integral)
            && self.det().map(|d| d.val() == ExtInt::Fin(0)).unwrap_or(false)
    }

    /// Whether the column lattices of `self` and `other` agree up to `K*`.
    pub fn lattice_class_equal(&self, other: &MatrixK) -> Result<bool> {
        Ok(class_equal_with_inverse(&self.inverse()?, other))
    }

    /// Whether the column lattices agree exactly.
    pub fn lattice_equal(&self, other: &MatrixK) -> Result<bool> {
        let x = self.inverse()?.mul(other)?;
        Ok(x.is_unimodular())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: &ValuedScalar) {
        for c in 0..self.cols {
            let v = self.get(r, c) * s;
            self.set(r, c, v);
        }
    }

    /// `row_r -= m · row_src`, touching columns `from..`.
    fn row_axpy(&mut self, r: usize, src: usize, m: &ValuedScalar, from: usize) {
        for c in from..self.cols {
            let s = self.get(src, c);
            if s.is_zero() {
                continue;
            }
            let v = self.get(r, c) - &(m * s);
            self.set(r, c, v);
        }
    }
}

/// Row at or below `start` with the nonzero entry of least valuation in column `c`.
fn pivot_row(a: &MatrixK, start: usize, c: usize) -> Option<usize> {
    (start..a.rows).filter(|&r| !a.get(r, c).is_zero()).min_by_key(|&r| a.get(r, c).val())
}

/// Class equality given `M1^{-1}`: `π^{-v} M1^{-1} M2` is unimodular where `v`
/// is the least entry valuation.
pub(crate) fn class_equal_with_inverse(m1_inv: &MatrixK, m2: &MatrixK) -> bool {
    let Ok(x) = m1_inv.mul(m2) else { return false };
    match x.min_valuation() {
        ExtInt::Fin(v) => x.scale_uniformizer(-v).is_unimodular(),
        ExtInt::Inf => false,
    }
}

impl fmt::Debug for MatrixK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixK<{}> {}x{} [", self.ctx, self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Entrywise valuations of a [`MatrixK`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<ExtInt>,
}

impl ValMatrix {
    pub fn get(&self, r: usize, c: usize) -> ExtInt {
        self.data[r * self.cols + c]
    }

    /// Tropical (min) sum of each column.
    pub fn column_minima(&self) -> Vec<ExtInt> {
        (0..self.cols).map(|c| (0..self.rows).map(|r| self.get(r, c)).min().unwrap_or(ExtInt::Inf)).collect()
    }
}
