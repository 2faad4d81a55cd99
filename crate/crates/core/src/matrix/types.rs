use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{ComplexField, DMatrix};

use super::backend::{self, RawSvd};
use crate::error::{Error, Result};

/// Complex double precision scalar.
pub type C64 = nalgebra::Complex<f64>;

/// Element type of a [`Matrix`]: real or complex double precision.
pub trait Scalar: ComplexField<RealField = f64> + Copy + Send + Sync {
    fn is_finite_scalar(&self) -> bool;

    #[doc(hidden)]
    fn dense_svd(a: &DMatrix<Self>) -> Option<RawSvd<Self>>;

    /// Unit-modulus factor of the entry (`x / |x|`), zero for a zero entry.
    fn phase(self) -> Self {
        let r = self.modulus();
        if r == 0.0 {
            Self::zero()
        } else {
            self.unscale(r)
        }
    }
}

impl Scalar for f64 {
    fn is_finite_scalar(&self) -> bool {
        self.is_finite()
    }

    fn dense_svd(a: &DMatrix<Self>) -> Option<RawSvd<Self>> {
        backend::svd(a, |x| x)
    }

    fn phase(self) -> Self {
        if self == 0.0 {
            0.0
        } else {
            self.signum()
        }
    }
}

impl Scalar for C64 {
    fn is_finite_scalar(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    fn dense_svd(a: &DMatrix<Self>) -> Option<RawSvd<Self>> {
        backend::svd(a, |x| x.re)
    }
}

/// Dense `rows x cols` matrix of finite scalars.
///
/// Construction validates shape and finiteness; the value is immutable
/// afterwards. Arithmetic operators panic on a shape mismatch, the same way
/// the underlying nalgebra operators do.
#[derive(Clone, PartialEq)]
pub struct Matrix<T: Scalar = f64> {
    data: DMatrix<T>,
}

impl<T: Scalar> Matrix<T> {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix { rows, cols });
        }
        if entries.len() != rows * cols {
            return Err(Error::EntryCount {
                rows,
                cols,
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Self::from_nalgebra(DMatrix::from_row_slice(rows, cols, &entries))
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch {
                op: "from_rows",
                expected: format!("{ncols} columns"),
                found: format!("{} columns", bad.len()),
            });
        }
        Self::new(rows.len(), ncols, rows.concat())
    }

    pub fn from_nalgebra(data: DMatrix<T>) -> Result<Self> {
        if data.nrows() == 0 || data.ncols() == 0 {
            return Err(Error::EmptyMatrix {
                rows: data.nrows(),
                cols: data.ncols(),
            });
        }
        for i in 0..data.nrows() {
            for j in 0..data.ncols() {
                if !data[(i, j)].is_finite_scalar() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(Self { data })
    }

    /// Wraps a result computed internally from validated operands.
    pub(crate) fn wrap(data: DMatrix<T>) -> Self {
        debug_assert!(data.nrows() > 0 && data.ncols() > 0);
        Self { data }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "identity of order zero");
        Self::wrap(DMatrix::identity(n, n))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty zero matrix");
        Self::wrap(DMatrix::zeros(rows, cols))
    }

    pub fn rows(&self) -> usize {
        self.data.nrows()
    }

    pub fn cols(&self) -> usize {
        self.data.ncols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.data.shape()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[(i, j)]
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data.row(i).iter().copied().collect()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        self.data.column(j).iter().copied().collect()
    }

    pub fn to_row_major(&self) -> Vec<T> {
        self.data.transpose().as_slice().to_vec()
    }

    pub fn as_nalgebra(&self) -> &DMatrix<T> {
        &self.data
    }

    pub fn into_nalgebra(self) -> DMatrix<T> {
        self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::wrap(self.data.adjoint())
    }

    pub fn transpose(&self) -> Self {
        Self::wrap(self.data.transpose())
    }

    pub fn hadamard(&self, other: &Self) -> Self {
        Self::wrap(self.data.component_mul(&other.data))
    }

    pub fn scale(&self, factor: T) -> Self {
        Self::wrap(&self.data * factor)
    }

    pub fn map<F: FnMut(T) -> T>(&self, f: F) -> Self {
        Self::wrap(self.data.map(f))
    }

    /// Elementwise magnitudes as a real matrix.
    pub fn abs(&self) -> Matrix<f64> {
        Matrix::wrap(self.data.map(|x| x.modulus()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.norm()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Copies the `nrows x ncols` block whose top-left corner is `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nrows: usize, ncols: usize) -> Self {
        Self::wrap(self.data.view((r0, c0), (nrows, ncols)).into_owned())
    }

    /// Assembles `[[top_left, top_right], [bottom_left, bottom_right]]`.
    pub fn from_blocks(
        top_left: &Self,
        top_right: &Self,
        bottom_left: &Self,
        bottom_right: &Self,
    ) -> Result<Self> {
        let (m, n) = (top_left.rows(), top_left.cols());
        if top_right.rows() != m
            || bottom_left.cols() != n
            || bottom_right.rows() != bottom_left.rows()
            || bottom_right.cols() != top_right.cols()
        {
            return Err(Error::DimensionMismatch {
                op: "from_blocks",
                expected: "conformant 2x2 block layout".into(),
                found: format!(
                    "{:?} {:?} / {:?} {:?}",
                    top_left.shape(),
                    top_right.shape(),
                    bottom_left.shape(),
                    bottom_right.shape()
                ),
            });
        }
        let rows = m + bottom_left.rows();
        let cols = n + top_right.cols();
        let mut data = DMatrix::zeros(rows, cols);
        data.view_mut((0, 0), (m, n)).copy_from(&top_left.data);
        data.view_mut((0, n), top_right.shape())
            .copy_from(&top_right.data);
        data.view_mut((m, 0), bottom_left.shape())
            .copy_from(&bottom_left.data);
        data.view_mut((m, n), bottom_right.shape())
            .copy_from(&bottom_right.data);
        Ok(Self::wrap(data))
    }

    /// Lifts a real matrix into this scalar type.
    pub fn from_real(real: &Matrix<f64>) -> Self {
        Self::wrap(real.data.map(T::from_real))
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} {}", self.rows(), self.cols(), self.data)
    }
}

impl<T: Scalar> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, idx: (usize, usize)) -> &T {
        &self.data[idx]
    }
}

impl<'a, T: Scalar> Mul<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        Matrix::wrap(&self.data * &rhs.data)
    }
}

impl<'a, T: Scalar> Add<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;

    fn add(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        Matrix::wrap(&self.data + &rhs.data)
    }
}

impl<'a, T: Scalar> Sub<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;

    fn sub(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        Matrix::wrap(&self.data - &rhs.data)
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;

    fn neg(self) -> Matrix<T> {
        Matrix::wrap(-&self.data)
    }
}

/// Square diagonal matrix stored as its diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalMatrix<T: Scalar = f64> {
    entries: Vec<T>,
}

impl<T: Scalar> DiagonalMatrix<T> {
    pub fn new(entries: Vec<T>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyMatrix { rows: 0, cols: 0 });
        }
        if let Some(k) = entries.iter().position(|x| !x.is_finite_scalar()) {
            return Err(Error::NonFinite { row: k, col: k });
        }
        Ok(Self { entries })
    }

    pub(crate) fn wrap(entries: Vec<T>) -> Self {
        Self { entries }
    }

    pub fn identity(n: usize) -> Self {
        Self::wrap(vec![T::one(); n])
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn inverse(&self) -> Result<Self> {
        if let Some(index) = self.entries.iter().position(|x| x.is_zero()) {
            return Err(Error::SingularDiagonal { index });
        }
        Ok(Self::wrap(self.entries.iter().map(|x| x.recip()).collect()))
    }

    pub fn to_matrix(&self) -> Matrix<T> {
        Matrix::wrap(DMatrix::from_diagonal(
            &nalgebra::DVector::from_column_slice(&self.entries),
        ))
    }

    /// `self · a`, i.e. row `i` of `a` multiplied by `entries[i]`.
    pub fn left_mul(&self, a: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.len(), a.rows(), "diagonal/matrix row mismatch");
        let mut data = a.data.clone();
        for (i, mut row) in data.row_iter_mut().enumerate() {
            row *= self.entries[i];
        }
        Matrix::wrap(data)
    }

    /// `a · self`, i.e. column `j` of `a` multiplied by `entries[j]`.
    pub fn right_mul(&self, a: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.len(), a.cols(), "matrix/diagonal column mismatch");
        let mut data = a.data.clone();
        for (j, mut col) in data.column_iter_mut().enumerate() {
            col *= self.entries[j];
        }
        Matrix::wrap(data)
    }
}

impl DiagonalMatrix<f64> {
    /// Lifts a real diagonal into another scalar type.
    pub fn cast<T: Scalar>(&self) -> DiagonalMatrix<T> {
        DiagonalMatrix::wrap(self.entries.iter().map(|&x| T::from_real(x)).collect())
    }

    pub fn is_positive(&self) -> bool {
        self.entries.iter().all(|&x| x > 0.0)
    }
}
