//! Column-major dense matrices and the level-1 kernels used by the
//! Gram-Schmidt recurrences.
//!
//! Everything that touches length-`n` vectors is generic over [`Real`], so the
//! same recurrence can store its bases in `f32` or `f64`.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use faer::{Mat, MatRef};

use crate::error::{check_dim, Error, Result};

/// IEEE floating formats usable as working precision.
pub trait Real:
    num_traits::Float + Copy + Default + Debug + Display + Sum + Send + Sync + 'static
{
    /// Unit roundoff `u = 2^-p` of the format.
    const UNIT_ROUNDOFF: f64;
    const FORMAT: FloatFormat;

    fn cast(x: f64) -> Self;
    fn as_f64(self) -> f64;
}

impl Real for f32 {
    const UNIT_ROUNDOFF: f64 = 5.960_464_477_539_063e-8; // 2^-24
    const FORMAT: FloatFormat = FloatFormat::Binary32;

    #[inline(always)]
    fn cast(x: f64) -> Self {
        x as f32
    }
    #[inline(always)]
    fn as_f64(self) -> f64 {
        self as f64
    }
}

impl Real for f64 {
    const UNIT_ROUNDOFF: f64 = 1.110_223_024_625_156_5e-16; // 2^-53
    const FORMAT: FloatFormat = FloatFormat::Binary64;

    #[inline(always)]
    fn cast(x: f64) -> Self {
        x
    }
    #[inline(always)]
    fn as_f64(self) -> f64 {
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FloatFormat {
    Binary32,
    Binary64,
}

impl FloatFormat {
    pub fn unit_roundoff(self) -> f64 {
        match self {
            FloatFormat::Binary32 => f32::UNIT_ROUNDOFF,
            FloatFormat::Binary64 => f64::UNIT_ROUNDOFF,
        }
    }

    /// Number of significand bits, including the implicit one.
    pub fn precision_bits(self) -> u32 {
        match self {
            FloatFormat::Binary32 => 24,
            FloatFormat::Binary64 => 53,
        }
    }
}

/// Column-major real matrix.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix<T> {
    nrows: usize,
    ncols: usize,
    data: Vec<T>,
}

impl<T: Real> Debug for DenseMatrix<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DenseMatrix<{:?}>({}x{})", T::FORMAT, self.nrows, self.ncols)?;
        if self.nrows * self.ncols <= 64 {
            for i in 0..self.nrows {
                write!(f, "\n ")?;
                for j in 0..self.ncols {
                    write!(f, " {:>12.5e}", self.get(i, j).as_f64())?;
                }
            }
        }
        Ok(())
    }
}

impl<T: Real> DenseMatrix<T> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            data: vec![T::zero(); nrows * ncols],
        }
    }

    /// An `nrows x 0` matrix with room for `capacity` columns.
    pub fn with_capacity(nrows: usize, capacity: usize) -> Self {
        Self {
            nrows,
            ncols: 0,
            data: Vec::with_capacity(nrows * capacity),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(nrows: usize, ncols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(nrows * ncols);
        for j in 0..ncols {
            for i in 0..nrows {
                data.push(f(i, j));
            }
        }
        Self { nrows, ncols, data }
    }

    pub fn from_col_major(nrows: usize, ncols: usize, data: Vec<T>) -> Result<Self> {
        check_dim("column-major buffer length", nrows * ncols, data.len())?;
        Ok(Self { nrows, ncols, data })
    }

    /// Builds a matrix from its columns; all columns must share one length.
    pub fn from_columns<C: AsRef<[T]>>(columns: &[C]) -> Result<Self> {
        let nrows = columns.first().map_or(0, |c| c.as_ref().len());
        let mut out = Self::with_capacity(nrows, columns.len());
        for c in columns {
            out.push_col(c.as_ref())?;
        }
        Ok(out)
    }

    /// Builds a matrix from row slices, handy for small literal matrices.
    pub fn from_rows(rows: &[&[T]]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        for r in rows {
            check_dim("row length", ncols, r.len())?;
        }
        Ok(Self::from_fn(nrows, ncols, |i, j| rows[i][j]))
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        debug_assert!(i < self.nrows && j < self.ncols);
        self.data[j * self.nrows + i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: T) {
        debug_assert!(i < self.nrows && j < self.ncols);
        self.data[j * self.nrows + i] = value;
    }

    #[inline]
    pub fn col(&self, j: usize) -> &[T] {
        &self.data[j * self.nrows..(j + 1) * self.nrows]
    }

    #[inline]
    pub fn col_mut(&mut self, j: usize) -> &mut [T] {
        &mut self.data[j * self.nrows..(j + 1) * self.nrows]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[T]> + '_ {
        (0..self.ncols).map(move |j| self.col(j))
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    /// Appends one column.
    pub fn push_col(&mut self, column: &[T]) -> Result<()> {
        check_dim("appended column length", self.nrows, column.len())?;
        self.data.extend_from_slice(column);
        self.ncols += 1;
        Ok(())
    }

    /// Drops trailing columns so that `ncols` columns remain.
    pub fn truncate_cols(&mut self, ncols: usize) {
        if ncols < self.ncols {
            self.ncols = ncols;
            self.data.truncate(ncols * self.nrows);
        }
    }

    /// Copy of the leading `ncols` columns.
    pub fn leading_cols(&self, ncols: usize) -> Self {
        let k = ncols.min(self.ncols);
        Self {
            nrows: self.nrows,
            ncols: k,
            data: self.data[..k * self.nrows].to_vec(),
        }
    }

    /// Copy of the leading `nrows x ncols` block.
    pub fn leading_block(&self, nrows: usize, ncols: usize) -> Self {
        Self::from_fn(nrows, ncols, |i, j| self.get(i, j))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ncols, self.nrows, |i, j| self.get(j, i))
    }

    pub fn map<U: Real>(&self, f: impl Fn(T) -> U) -> DenseMatrix<U> {
        DenseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    /// Converts to another floating format, rounding to nearest.
    pub fn convert<U: Real>(&self) -> DenseMatrix<U> {
        self.map(|x| U::cast(x.as_f64()))
    }

    pub fn to_f64(&self) -> DenseMatrix<f64> {
        self.convert()
    }

    pub fn frobenius_norm(&self) -> f64 {
        norm2_f64(&self.data)
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> f64 {
        self.columns()
            .map(|c| c.iter().map(|x| x.as_f64().abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.as_f64().abs()).fold(0.0, f64::max)
    }

    /// `self * v` for a vector `v` of length `ncols`.
    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        check_dim("matrix-vector operand length", self.ncols, v.len())?;
        let mut out = vec![T::zero(); self.nrows];
        for (j, &vj) in v.iter().enumerate() {
            axpy(vj, self.col(j), &mut out);
        }
        Ok(out)
    }

    /// `self^T * v` for a vector `v` of length `nrows`.
    pub fn tr_mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        check_dim("transposed matrix-vector operand length", self.nrows, v.len())?;
        Ok(self.columns().map(|c| dot(c, v)).collect())
    }
}

impl DenseMatrix<f64> {
    pub fn as_faer(&self) -> MatRef<'_, f64> {
        MatRef::from_column_major_slice(&self.data, self.nrows, self.ncols)
    }

    pub fn from_faer(m: MatRef<'_, f64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
    }

    /// Dense product `self * rhs`.
    pub fn matmul(&self, rhs: &DenseMatrix<f64>) -> Result<DenseMatrix<f64>> {
        check_dim("matrix product inner dimension", self.ncols, rhs.nrows)?;
        let prod: Mat<f64> = self.as_faer() * rhs.as_faer();
        Ok(Self::from_faer(prod.as_ref()))
    }

    /// Dense product `self^T * rhs`.
    pub fn tr_matmul(&self, rhs: &DenseMatrix<f64>) -> Result<DenseMatrix<f64>> {
        check_dim("transposed product inner dimension", self.nrows, rhs.nrows)?;
        let prod: Mat<f64> = self.as_faer().transpose() * rhs.as_faer();
        Ok(Self::from_faer(prod.as_ref()))
    }

    pub fn sub(&self, rhs: &DenseMatrix<f64>) -> Result<DenseMatrix<f64>> {
        if self.shape() != rhs.shape() {
            return Err(Error::InvalidArgument(format!(
                "shape mismatch in subtraction: {:?} vs {:?}",
                self.shape(),
                rhs.shape()
            )));
        }
        Ok(DenseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }
}

/// Inner product accumulated in the precision of `T`.
///
/// Four independent partial sums, combined in a fixed order, so the result
/// is reproducible and independent of the caller.
#[inline]
pub fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = [T::zero(); 4];
    let ca = a.chunks_exact(4);
    let cb = b.chunks_exact(4);
    let (ra, rb) = (ca.remainder(), cb.remainder());
    for (x, y) in ca.zip(cb) {
        acc[0] = acc[0] + x[0] * y[0];
        acc[1] = acc[1] + x[1] * y[1];
        acc[2] = acc[2] + x[2] * y[2];
        acc[3] = acc[3] + x[3] * y[3];
    }
    let mut tail = T::zero();
    for (x, y) in ra.iter().zip(rb) {
        tail = tail + *x * *y;
    }
    ((acc[0] + acc[1]) + (acc[2] + acc[3])) + tail
}

/// `y += alpha * x`
#[inline]
pub fn axpy<T: Real>(alpha: T, x: &[T], y: &mut [T]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = *yi + alpha * xi;
    }
}

#[inline]
pub fn scale<T: Real>(alpha: T, x: &mut [T]) {
    for xi in x {
        *xi = *xi * alpha;
    }
}

/// Euclidean norm computed in the precision of `T`.
#[inline]
pub fn norm2<T: Real>(x: &[T]) -> T {
    dot(x, x).sqrt()
}

/// Euclidean norm accumulated in double precision regardless of `T`.
pub fn norm2_f64<T: Real>(x: &[T]) -> f64 {
    x.iter()
        .map(|v| {
            let v = v.as_f64();
            v * v
        })
        .sum::<f64>()
        .sqrt()
}

pub fn convert_vec<T: Real, U: Real>(x: &[T]) -> Vec<U> {
    x.iter().map(|v| U::cast(v.as_f64())).collect()
}
