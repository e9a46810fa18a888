//! Dense vector/matrix kernel for the fixed dimensions 3, 4, and 5.
//!
//! Values are plain `f64` arrays with the dimension carried at runtime.
//! Construction validates the dimension and the finiteness of every entry;
//! after that all operations are pure and the values are immutable.
//!
//! The matrix norm used throughout the crate is the half-trace norm
//! `|A| = sqrt(tr(A A^t) / 2)`, under which a wedge product `u ^ v` has norm
//! `sqrt(|u|^2 |v|^2 - (u . v)^2)`.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use crate::error::Error;

pub(crate) const MIN_DIM: usize = 3;
pub(crate) const MAX_DIM: usize = 5;

pub(crate) fn check_dim(n: usize) -> Result<(), Error> {
    if (MIN_DIM..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(n))
    }
}

/// A real vector of dimension 3, 4, or 5.
#[derive(Clone, Copy, PartialEq)]
pub struct Vector {
    n: usize,
    data: [f64; MAX_DIM],
}

impl Vector {
    /// Builds a vector from a slice; the length fixes the dimension.
    pub fn new(components: &[f64]) -> Result<Self, Error> {
        check_dim(components.len())?;
        for (i, c) in components.iter().enumerate() {
            if !c.is_finite() {
                return Err(Error::NonFiniteComponent { index: i });
            }
        }
        let mut data = [0.0; MAX_DIM];
        data[..components.len()].copy_from_slice(components);
        Ok(Vector {
            n: components.len(),
            data,
        })
    }

    pub fn zeros(n: usize) -> Result<Self, Error> {
        check_dim(n)?;
        Ok(Self::raw(n, [0.0; MAX_DIM]))
    }

    /// The j-th coordinate vector (zero-based), e.g. `basis(3, 0)` is (1, 0, 0).
    pub fn basis(n: usize, j: usize) -> Result<Self, Error> {
        check_dim(n)?;
        if j >= n {
            return Err(Error::IndexOutOfRange { index: j, dim: n });
        }
        let mut data = [0.0; MAX_DIM];
        data[j] = 1.0;
        Ok(Self::raw(n, data))
    }

    pub(crate) fn raw(n: usize, data: [f64; MAX_DIM]) -> Self {
        debug_assert!((MIN_DIM..=MAX_DIM).contains(&n));
        Vector { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data[..self.n]
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        assert_eq!(self.n, other.n, "vector dimension mismatch");
        self.as_slice()
            .iter()
            .zip(other.as_slice())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Cross product; defined in dimension 3 only.
    pub fn cross(&self, other: &Vector) -> Result<Vector, Error> {
        if self.n != 3 {
            return Err(Error::WrongDimension {
                op: "cross",
                expected: "3",
                got: self.n,
            });
        }
        if other.n != 3 {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let (a, b) = (&self.data, &other.data);
        Ok(Vector::raw(
            3,
            [
                a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0],
                0.0,
                0.0,
            ],
        ))
    }

    /// Returns the unit vector in the same direction, or an error when the
    /// norm is too small to normalize reliably.
    pub fn normalized(&self) -> Result<Vector, Error> {
        let norm = self.norm();
        if norm <= 1e-14 {
            return Err(Error::NonUnitAxis { norm });
        }
        Ok(*self * (1.0 / norm))
    }

    pub fn max_abs(&self) -> f64 {
        self.as_slice().iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

impl Index<usize> for Vector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        assert!(i < self.n, "component {i} out of range for dimension {}", self.n);
        &self.data[i]
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vector{:?}", self.as_slice())
    }
}

impl Add for Vector {
    type Output = Vector;

    fn add(self, rhs: Vector) -> Vector {
        assert_eq!(self.n, rhs.n, "vector dimension mismatch");
        let mut data = [0.0; MAX_DIM];
        // the unused tail is zero on both sides
        for ((d, a), b) in data.iter_mut().zip(&self.data).zip(&rhs.data) {
            *d = a + b;
        }
        Vector::raw(self.n, data)
    }
}

impl Sub for Vector {
    type Output = Vector;

    fn sub(self, rhs: Vector) -> Vector {
        self + (-rhs)
    }
}

impl Neg for Vector {
    type Output = Vector;

    fn neg(self) -> Vector {
        self * -1.0
    }
}

impl Mul<f64> for Vector {
    type Output = Vector;

    fn mul(self, s: f64) -> Vector {
        let mut data = [0.0; MAX_DIM];
        for (d, a) in data.iter_mut().zip(&self.data) {
            *d = a * s;
        }
        Vector::raw(self.n, data)
    }
}

/// A real square matrix of dimension 3, 4, or 5, row-major.
#[derive(Clone, Copy, PartialEq)]
pub struct Matrix {
    n: usize,
    data: [f64; MAX_DIM * MAX_DIM],
}

impl Matrix {
    /// Builds a matrix from rows; the number of rows fixes the dimension and
    /// every row must have that same length.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self, Error> {
        let n = rows.len();
        check_dim(n)?;
        let mut m = Self::raw_zeros(n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, col: j });
                }
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self, Error> {
        check_dim(n)?;
        let mut m = Self::raw_zeros(n);
        for i in 0..n {
            for j in 0..n {
                let v = f(i, j);
                if !v.is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, col: j });
                }
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn zeros(n: usize) -> Result<Self, Error> {
        check_dim(n)?;
        Ok(Self::raw_zeros(n))
    }

    pub fn identity(n: usize) -> Result<Self, Error> {
        check_dim(n)?;
        Ok(Self::raw_identity(n))
    }

    pub(crate) fn raw_zeros(n: usize) -> Self {
        debug_assert!((MIN_DIM..=MAX_DIM).contains(&n));
        Matrix {
            n,
            data: [0.0; MAX_DIM * MAX_DIM],
        }
    }

    pub(crate) fn raw_identity(n: usize) -> Self {
        let mut m = Self::raw_zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * MAX_DIM + j] = v;
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Row-major copy of the entries, handy at API boundaries.
    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)]).collect())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        assert!(j < self.n, "column {j} out of range for dimension {}", self.n);
        let mut data = [0.0; MAX_DIM];
        for i in 0..self.n {
            data[i] = self[(i, j)];
        }
        Vector::raw(self.n, data)
    }

    /// Matrix product with a dimension check.
    pub fn multiply(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(*self * *other)
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Self::raw_zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self[(j, i)]);
            }
        }
        m
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// `sqrt(tr(A A^t) / 2)`; the crate-wide norm for antisymmetric and
    /// symmetric matrices.
    pub fn half_trace_norm(&self) -> f64 {
        let sum: f64 = (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .map(|(i, j)| self[(i, j)] * self[(i, j)])
            .sum();
        (0.5 * sum).sqrt()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &Vector) -> Result<Vector, Error> {
        if self.n != v.dim() {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: v.dim(),
            });
        }
        let mut data = [0.0; MAX_DIM];
        for i in 0..self.n {
            data[i] = (0..self.n).map(|j| self[(i, j)] * v[j]).sum();
        }
        Ok(Vector::raw(self.n, data))
    }

    /// True when the max-abs entrywise difference is at most `tol`.
    pub fn approx_eq(&self, other: &Matrix, tol: f64) -> Result<bool, Error> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::InvalidTolerance(tol));
        }
        Ok(self.max_abs_diff(other) <= tol)
    }

    /// Max-abs entrywise difference; panics on dimension mismatch.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!(self.n, other.n, "matrix dimension mismatch");
        let mut m: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                m = m.max((self[(i, j)] - other[(i, j)]).abs());
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                m = m.max(self[(i, j)].abs());
            }
        }
        m
    }

    /// Maximum absolute row sum (the infinity norm).
    pub fn max_row_sum(&self) -> f64 {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)].abs()).sum())
            .fold(0.0, f64::max)
    }

    /// `max |a_ij + a_ji|`; zero exactly when the matrix is antisymmetric.
    pub fn antisymmetry_residual(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                m = m.max((self[(i, j)] + self[(j, i)]).abs());
            }
        }
        m
    }

    /// `(A - A^t) / 2`; exactly antisymmetric in floating point.
    pub fn skew_part(&self) -> Matrix {
        let mut m = Self::raw_zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, 0.5 * (self[(i, j)] - self[(j, i)]));
            }
        }
        m
    }

    /// `max |(A^t A - I)_ij|`; zero exactly when the matrix is orthogonal.
    pub fn orthogonality_residual(&self) -> f64 {
        let gram = self.transpose() * *self;
        gram.max_abs_diff(&Self::raw_identity(self.n))
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> f64 {
        let n = self.n;
        let mut a = self.data;
        let mut det = 1.0;
        for k in 0..n {
            let mut pivot = k;
            for i in (k + 1)..n {
                if a[i * MAX_DIM + k].abs() > a[pivot * MAX_DIM + k].abs() {
                    pivot = i;
                }
            }
            if a[pivot * MAX_DIM + k] == 0.0 {
                return 0.0;
            }
            if pivot != k {
                for j in 0..n {
                    a.swap(k * MAX_DIM + j, pivot * MAX_DIM + j);
                }
                det = -det;
            }
            det *= a[k * MAX_DIM + k];
            for i in (k + 1)..n {
                let factor = a[i * MAX_DIM + k] / a[k * MAX_DIM + k];
                for j in k..n {
                    a[i * MAX_DIM + j] -= factor * a[k * MAX_DIM + j];
                }
            }
        }
        det
    }

    /// Checks `antisymmetry_residual <= tol * max(1, max_abs)`.
    pub fn validate_antisymmetric(&self, tol: f64) -> Result<(), Error> {
        let bound = tol * self.max_abs().max(1.0);
        let residual = self.antisymmetry_residual();
        if residual <= bound {
            Ok(())
        } else {
            Err(Error::NotAntisymmetric {
                residual,
                tol: bound,
            })
        }
    }

    /// Checks orthogonality and determinant +1, both within `tol`. The input
    /// is never re-orthonormalized; a failing matrix is the caller's bug.
    pub fn validate_rotation(&self, tol: f64) -> Result<(), Error> {
        let orthogonality = self.orthogonality_residual();
        let determinant = self.det();
        if orthogonality <= tol && (determinant - 1.0).abs() <= tol {
            Ok(())
        } else {
            Err(Error::NotRotation {
                orthogonality,
                determinant,
            })
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        assert!(
            i < self.n && j < self.n,
            "entry ({i}, {j}) out of range for dimension {}",
            self.n
        );
        &self.data[i * MAX_DIM + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                write!(f, "{:+.6} ", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Add for Matrix {
    type Output = Matrix;

    fn add(self, rhs: Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
        let mut m = Matrix::raw_zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self[(i, j)] + rhs[(i, j)]);
            }
        }
        m
    }
}

impl Sub for Matrix {
    type Output = Matrix;

    fn sub(self, rhs: Matrix) -> Matrix {
        self + (-rhs)
    }
}

impl Neg for Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        self * -1.0
    }
}

impl Mul for Matrix {
    type Output = Matrix;

    fn mul(self, rhs: Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
        let mut m = Matrix::raw_zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = 0.0;
                for k in 0..self.n {
                    acc += self[(i, k)] * rhs[(k, j)];
                }
                m.set(i, j, acc);
            }
        }
        m
    }
}

impl Mul<f64> for Matrix {
    type Output = Matrix;

    fn mul(self, s: f64) -> Matrix {
        let mut m = Matrix::raw_zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self[(i, j)] * s);
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{RngSeed, SplitMix64};

    fn lambda_e3() -> Matrix {
        Matrix::from_rows(&[[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]).unwrap()
    }

    fn random_matrix(n: usize, rng: &mut SplitMix64) -> Matrix {
        Matrix::from_fn(n, |_, _| rng.uniform(-1.0, 1.0)).unwrap()
    }

    #[test]
    fn dimension_gate() {
        assert!(Matrix::zeros(2).is_err());
        assert!(Matrix::zeros(6).is_err());
        assert!(Vector::new(&[1.0, 2.0]).is_err());
        for n in 3..=5 {
            assert!(Matrix::identity(n).is_ok());
        }
    }

    #[test]
    fn rejects_non_finite() {
        assert_eq!(
            Vector::new(&[1.0, f64::NAN, 0.0]),
            Err(Error::NonFiniteComponent { index: 1 })
        );
        let err = Matrix::from_rows(&[
            [0.0, 0.0, 0.0],
            [0.0, f64::INFINITY, 0.0],
            [0.0, 0.0, 0.0],
        ]);
        assert_eq!(err, Err(Error::NonFiniteEntry { row: 1, col: 1 }));
    }

    #[test]
    fn multiply_identity_cases() {
        let id = Matrix::identity(3).unwrap();
        assert_eq!(id.multiply(&id).unwrap(), id);

        let mut rng = SplitMix64::new(RngSeed(11));
        for n in 3..=5 {
            let a = random_matrix(n, &mut rng);
            let id = Matrix::identity(n).unwrap();
            assert_eq!(a.multiply(&id).unwrap(), a);
        }
    }

    #[test]
    fn multiply_lambda_e3_squared() {
        // hand expansion of the 3x3 product
        let sq = lambda_e3().multiply(&lambda_e3()).unwrap();
        let expected =
            Matrix::from_rows(&[[-1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 0.0]]).unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn multiply_dimension_mismatch() {
        let a = Matrix::identity(3).unwrap();
        let b = Matrix::identity(4).unwrap();
        assert_eq!(
            a.multiply(&b),
            Err(Error::DimensionMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn transpose_basics() {
        let id = Matrix::identity(4).unwrap();
        assert_eq!(id.transpose(), id);
        assert_eq!(lambda_e3().transpose(), -lambda_e3());

        let mut rng = SplitMix64::new(RngSeed(7));
        for n in 3..=5 {
            let a = random_matrix(n, &mut rng);
            assert_eq!(a.transpose().transpose(), a);
        }
    }

    #[test]
    fn trace_basics() {
        assert_eq!(Matrix::identity(3).unwrap().trace(), 3.0);
        assert_eq!(lambda_e3().trace(), 0.0);
        // tr(e1 x e2^t) = 0 and tr(e1 x e1^t) = 1
        let e12 = Matrix::from_fn(4, |i, j| if (i, j) == (0, 1) { 1.0 } else { 0.0 }).unwrap();
        let e11 = Matrix::from_fn(4, |i, j| if (i, j) == (0, 0) { 1.0 } else { 0.0 }).unwrap();
        assert_eq!(e12.trace(), 0.0);
        assert_eq!(e11.trace(), 1.0);
    }

    #[test]
    fn trace_is_cyclic() {
        let mut rng = SplitMix64::new(RngSeed(23));
        for _ in 0..200 {
            let a = random_matrix(5, &mut rng);
            let b = random_matrix(5, &mut rng);
            let ab = (a * b).trace();
            let ba = (b * a).trace();
            assert!((ab - ba).abs() <= 1e-12, "{ab} vs {ba}");
        }
    }

    #[test]
    fn multiply_is_associative() {
        let mut rng = SplitMix64::new(RngSeed(29));
        for _ in 0..100 {
            let a = random_matrix(4, &mut rng);
            let b = random_matrix(4, &mut rng);
            let c = random_matrix(4, &mut rng);
            assert!(((a * b) * c).max_abs_diff(&(a * (b * c))) <= 1e-12);
        }
    }

    #[test]
    fn half_trace_norm_values() {
        assert_eq!(Matrix::zeros(4).unwrap().half_trace_norm(), 0.0);

        // e1 ^ e2 has (e1^e2)(e1^e2)^t = diag(1, 1, 0, ...)
        let w = Matrix::from_fn(4, |i, j| match (i, j) {
            (0, 1) => 1.0,
            (1, 0) => -1.0,
            _ => 0.0,
        })
        .unwrap();
        assert!((w.half_trace_norm() - 1.0).abs() <= 1e-15);

        // |theta Lambda_u| = |theta| for unit u
        let mut rng = SplitMix64::new(RngSeed(31));
        for _ in 0..50 {
            let u = Vector::new(&[
                rng.uniform(-1.0, 1.0),
                rng.uniform(-1.0, 1.0),
                rng.uniform(-1.0, 1.0),
            ])
            .unwrap()
            .normalized()
            .unwrap();
            let theta = rng.uniform(-6.0, 6.0);
            let m = crate::wedge::lambda_map(&u).unwrap() * theta;
            assert!((m.half_trace_norm() - theta.abs()).abs() <= 1e-12);
        }
    }

    #[test]
    fn half_trace_norm_zero_iff_zero() {
        let mut rng = SplitMix64::new(RngSeed(37));
        for _ in 0..50 {
            let a = random_matrix(5, &mut rng);
            if a.max_abs() > 0.0 {
                assert!(a.half_trace_norm() > 0.0);
            }
        }
        assert_eq!(Matrix::zeros(5).unwrap().half_trace_norm(), 0.0);
    }

    #[test]
    fn basis_vectors() {
        assert_eq!(
            Vector::basis(3, 0).unwrap().as_slice(),
            &[1.0, 0.0, 0.0][..]
        );
        assert_eq!(
            Vector::basis(5, 4).unwrap().as_slice(),
            &[0.0, 0.0, 0.0, 0.0, 1.0][..]
        );
        assert_eq!(
            Vector::basis(4, 4),
            Err(Error::IndexOutOfRange { index: 4, dim: 4 })
        );
    }

    #[test]
    fn approx_eq_threshold_semantics() {
        let id = Matrix::identity(3).unwrap();
        let zero = Matrix::zeros(3).unwrap();
        assert!(id.approx_eq(&id, 1e-12).unwrap());
        assert!(!id.approx_eq(&zero, 1e-12).unwrap());

        let nudged = Matrix::from_fn(3, |i, j| id[(i, j)] + 1e-13).unwrap();
        assert!(id.approx_eq(&nudged, 1e-12).unwrap());

        assert_eq!(
            id.approx_eq(&Matrix::identity(4).unwrap(), 1e-12),
            Err(Error::DimensionMismatch { left: 3, right: 4 })
        );
        assert!(matches!(
            id.approx_eq(&id, 0.0),
            Err(Error::InvalidTolerance(_))
        ));
    }

    #[test]
    fn det_known_values() {
        assert_eq!(Matrix::identity(5).unwrap().det(), 1.0);
        let d = Matrix::from_rows(&[[2.0, 0.0, 0.0], [0.0, 3.0, 0.0], [0.0, 0.0, 4.0]])
            .unwrap()
            .det();
        assert!((d - 24.0).abs() <= 1e-12);
        let r = Matrix::from_rows(&[[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
            .unwrap()
            .det();
        assert!((r - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn skew_part_is_exactly_antisymmetric() {
        let mut rng = SplitMix64::new(RngSeed(41));
        for _ in 0..50 {
            let a = random_matrix(5, &mut rng);
            assert_eq!(a.skew_part().antisymmetry_residual(), 0.0);
        }
    }

    #[test]
    fn rotation_validation() {
        let id = Matrix::identity(4).unwrap();
        assert!(id.validate_rotation(1e-12).is_ok());
        let reflect =
            Matrix::from_rows(&[[-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]).unwrap();
        assert!(matches!(
            reflect.validate_rotation(1e-9),
            Err(Error::NotRotation { .. })
        ));
    }
}
