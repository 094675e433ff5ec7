//! Dense row-major matrices over a [`Scalar`] backend.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{GaussRat, Scalar};

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type ExactMatrix = Matrix<GaussRat>;

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.data[k * n + k] = T::one();
        }
        m
    }

    pub fn scalar_identity(n: usize, c: T) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.data[k * n + k] = c.clone();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn diag(entries: Vec<T>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (k, e) in entries.into_iter().enumerate() {
            m.data[k * n + k] = e;
        }
        m
    }

    /// Converts an exact matrix into this backend.
    pub fn from_exact(m: &ExactMatrix) -> Self {
        Matrix { rows: m.rows, cols: m.cols, data: m.data.iter().map(T::from_gauss).collect() }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols.max(1)).map(<[T]>::to_vec).collect()
    }

    /// Submatrix of `rows × cols` starting at `(r0, c0)`.
    pub fn sub_matrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.data[i * cols + j] = self.get(r0 + i, c0 + j).clone();
            }
        }
        out
    }

    pub fn set_sub(&mut self, r0: usize, c0: usize, m: &Matrix<T>) {
        for i in 0..m.rows {
            for j in 0..m.cols {
                self.set(r0 + i, c0 + j, m.get(i, j).clone());
            }
        }
    }

    /// Block `(bi, bj)` of a matrix partitioned into `q × q` blocks.
    pub fn block(&self, bi: usize, bj: usize, q: usize) -> Self {
        self.sub_matrix(bi * q, bj * q, q, q)
    }

    pub fn set_block(&mut self, bi: usize, bj: usize, m: &Matrix<T>) {
        self.set_sub(bi * m.rows, bj * m.cols, m);
    }

    /// Assembles a grid of equally sized blocks.
    pub fn from_blocks(blocks: &[Vec<Matrix<T>>]) -> Self {
        let br = blocks[0][0].rows;
        let bc = blocks[0][0].cols;
        let mut out = Self::zeros(br * blocks.len(), bc * blocks[0].len());
        for (i, row) in blocks.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                out.set_sub(i * br, j * bc, b);
            }
        }
        out
    }

    pub fn block_diag(blocks: &[Matrix<T>]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(n, m);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_sub(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    pub fn hstack(parts: &[Matrix<T>]) -> Self {
        let rows = parts[0].rows;
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut c = 0;
        for p in parts {
            out.set_sub(0, c, p);
            c += p.cols;
        }
        out
    }

    pub fn vstack(parts: &[Matrix<T>]) -> Self {
        let cols = parts[0].cols;
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut out = Self::zeros(rows, cols);
        let mut r = 0;
        for p in parts {
            out.set_sub(r, 0, p);
            r += p.rows;
        }
        out
    }

    pub fn conj_transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn near_zero(&self, tol: f64) -> bool {
        self.data.iter().all(|x| x.near_zero(tol))
    }

    /// Entrywise comparison; exact on the exact backend, relative to the
    /// larger max-norm on the float backend.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.rows != other.rows || self.cols != other.cols {
            return false;
        }
        if T::EXACT {
            return self == other;
        }
        let scale = self.max_abs().max(other.max_abs()).max(1.0);
        self.data.iter().zip(&other.data).all(|(a, b)| (a.clone() - b.clone()).abs_f64() <= tol * scale)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::abs_f64).fold(0.0, f64::max)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    let cur = std::mem::replace(&mut out.data[idx], T::zero());
                    out.data[idx] = cur + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, o: &Self, f: impl Fn(T, T) -> T) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix shapes differ");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f(a.clone(), b.clone())).collect(),
        }
    }

    pub fn is_hermitian(&self, tol: f64) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("{}x{} is not square", self.rows, self.cols)));
        }
        Ok(self.approx_eq(&self.conj_transpose(), tol))
    }

    /// Pivots of Gaussian elimination without row exchanges. Stops early at a
    /// zero pivot (exact) or a pivot that is not positive real (float).
    pub fn leading_pivots(&self, tol: f64) -> Vec<T> {
        let n = self.rows;
        let mut a = self.clone();
        let mut piv = Vec::with_capacity(n);
        for c in 0..n {
            let p = a.get(c, c).clone();
            let Some(pinv) = p.inv() else {
                piv.push(p);
                return piv;
            };
            if !T::EXACT && !p.is_positive_real(tol) {
                piv.push(p);
                return piv;
            }
            piv.push(p);
            for r in c + 1..n {
                let f = a.get(r, c).clone() * pinv.clone();
                if f.is_zero() {
                    continue;
                }
                for k in c..n {
                    let v = a.get(r, k).clone() - f.clone() * a.get(c, k).clone();
                    a.set(r, k, v);
                }
            }
        }
        piv
    }

    /// Leading principal minors as prefix products of the elimination pivots.
    pub fn leading_minors(&self, tol: f64) -> Vec<T> {
        let mut acc = T::one();
        self.leading_pivots(tol)
            .into_iter()
            .map(|p| {
                acc = acc.clone() * p;
                acc.clone()
            })
            .collect()
    }

    /// Sylvester test on the exact backend, Cholesky pivots `> tol` on float.
    pub fn is_positive_definite(&self, tol: f64) -> Result<bool> {
        if !self.is_hermitian(tol.max(1e-12))? {
            return Err(Error::Contract("positive-definiteness test on a non-Hermitian matrix".into()));
        }
        let piv = self.leading_pivots(tol);
        if T::EXACT {
            if let Some(bad) = piv.iter().find(|p| !p.is_zero() && !is_real_exact(*p)) {
                return Err(Error::Internal(format!("Hermitian pivot {bad} is not real")));
            }
        }
        Ok(piv.len() == self.rows && piv.iter().all(|p| p.is_positive_real(tol)))
    }

    pub fn solve(&self, b: &Self) -> Result<Self> {
        if !self.is_square() || self.rows != b.rows {
            return Err(Error::Dimension(format!(
                "solve with {}x{} and {}x{}",
                self.rows, self.cols, b.rows, b.cols
            )));
        }
        let n = self.rows;
        let m = b.cols;
        let mut a = self.clone();
        let mut x = b.clone();
        for c in 0..n {
            let p = if T::EXACT {
                (c..n).find(|&r| !a.get(r, c).is_zero())
            } else {
                (c..n)
                    .filter(|&r| !a.get(r, c).is_zero())
                    .max_by(|&r1, &r2| a.get(r1, c).abs_f64().total_cmp(&a.get(r2, c).abs_f64()))
            };
            let Some(p) = p else {
                return Err(Error::Singular { pivot: c });
            };
            if p != c {
                a.swap_rows(p, c);
                x.swap_rows(p, c);
            }
            let pinv = a.get(c, c).inv().ok_or(Error::Singular { pivot: c })?;
            for r in 0..n {
                if r == c {
                    continue;
                }
                let f = a.get(r, c).clone() * pinv.clone();
                if f.is_zero() {
                    continue;
                }
                for k in c..n {
                    let v = a.get(r, k).clone() - f.clone() * a.get(c, k).clone();
                    a.set(r, k, v);
                }
                for k in 0..m {
                    let v = x.get(r, k).clone() - f.clone() * x.get(c, k).clone();
                    x.set(r, k, v);
                }
            }
            for k in c..n {
                let v = a.get(c, k).clone() * pinv.clone();
                a.set(c, k, v);
            }
            for k in 0..m {
                let v = x.get(c, k).clone() * pinv.clone();
                x.set(c, k, v);
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Self> {
        self.solve(&Self::identity(self.rows))
    }

    /// Right division `self · m⁻¹`.
    pub fn right_div(&self, m: &Self) -> Result<Self> {
        Ok(m.conj_transpose().solve(&self.conj_transpose())?.conj_transpose())
    }

    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::one();
        for c in 0..n {
            let p = if T::EXACT {
                (c..n).find(|&r| !a.get(r, c).is_zero())
            } else {
                (c..n).max_by(|&r1, &r2| a.get(r1, c).abs_f64().total_cmp(&a.get(r2, c).abs_f64()))
            };
            let Some(p) = p else { return T::zero() };
            if a.get(p, c).is_zero() {
                return T::zero();
            }
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let pv = a.get(c, c).clone();
            let pinv = pv.inv().expect("nonzero pivot");
            det = det * pv;
            for r in c + 1..n {
                let f = a.get(r, c).clone() * pinv.clone();
                if f.is_zero() {
                    continue;
                }
                for k in c..n {
                    let v = a.get(r, k).clone() - f.clone() * a.get(c, k).clone();
                    a.set(r, k, v);
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for k in 0..self.cols {
            self.data.swap(a * self.cols + k, b * self.cols + k);
        }
    }
}

fn is_real_exact<T: Scalar>(p: &T) -> bool {
    (p.clone() - p.conj()).is_zero()
}

impl<T: Scalar> Add for Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, o: Self) -> Self {
        self.zip_with(&o, |a, b| a + b)
    }
}

impl<T: Scalar> Sub for Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, o: Self) -> Self {
        self.zip_with(&o, |a, b| a - b)
    }
}

impl<T: Scalar> Neg for Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Self {
        self.map(|x| -x.clone())
    }
}

impl<T: Scalar> Mul for Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, o: Self) -> Self {
        self.try_mul(&o).expect("matrix product dimensions")
    }
}

impl<'a, T: Scalar> Add<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, o: &Matrix<T>) -> Matrix<T> {
        self.zip_with(o, |a, b| a + b)
    }
}

impl<'a, T: Scalar> Sub<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, o: &Matrix<T>) -> Matrix<T> {
        self.zip_with(o, |a, b| a - b)
    }
}

impl<'a, T: Scalar> Mul<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, o: &Matrix<T>) -> Matrix<T> {
        self.try_mul(o).expect("matrix product dimensions")
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

impl<T: fmt::Debug> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Shorthand for exact integer matrices in tests and examples.
pub fn int_matrix(rows: &[&[i64]]) -> ExactMatrix {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| GaussRat::from_i64(v)).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn g(re: i64, im: i64) -> GaussRat {
        GaussRat::cplx((re, 1), (im, 1))
    }

    #[test]
    fn solve_non_unit_pivots() {
        let a = int_matrix(&[&[2, 2, 1], &[2, 3, 5], &[1, 5, 7]]);
        let b = int_matrix(&[&[1, 0], &[0, 1], &[4, -3]]);
        assert_eq!(&a * &a.solve(&b).unwrap(), b);
        assert_eq!(&a * &a.inverse().unwrap(), Matrix::identity(3));
        let af = a.map(|x| x.to_c64());
        let xf = af.solve(&b.map(|x| x.to_c64())).unwrap();
        assert!((&af * &xf).approx_eq(&b.map(|x| x.to_c64()), 1e-12));
    }

    #[test]
    fn hermitian_examples() {
        let s0 = Matrix::from_rows(vec![vec![g(2, 0), g(0, -1)], vec![g(0, 1), g(1, 0)]]);
        assert!(s0.is_hermitian(0.0).unwrap());
        assert!(int_matrix(&[&[5]]).is_hermitian(0.0).unwrap());
        assert!(!int_matrix(&[&[0, 1], &[0, 0]]).is_hermitian(0.0).unwrap());
        assert!(int_matrix(&[&[1, 2, 3]]).is_hermitian(0.0).is_err());
    }

    #[test]
    fn pd_examples() {
        let s0 = Matrix::from_rows(vec![vec![g(2, 0), g(0, -1)], vec![g(0, 1), g(1, 0)]]);
        assert!(s0.is_positive_definite(0.0).unwrap());
        assert_eq!(s0.leading_minors(0.0), vec![g(2, 0), g(1, 0)]);
        assert!(ExactMatrix::identity(3).is_positive_definite(0.0).unwrap());
        assert!(!int_matrix(&[&[1, 2], &[2, 1]]).is_positive_definite(0.0).unwrap());
        assert!(int_matrix(&[&[1, 2], &[3, 1]]).is_positive_definite(0.0).is_err());
        let f = s0.map(|x| x.to_c64());
        assert!(f.is_positive_definite(1e-9).unwrap());
    }

    #[test]
    fn solve_examples() {
        let b = int_matrix(&[&[1, 2], &[3, 4]]);
        assert_eq!(ExactMatrix::identity(2).solve(&b).unwrap(), b);
        assert_eq!(int_matrix(&[&[2]]).solve(&int_matrix(&[&[1]])).unwrap().get(0, 0), &GaussRat::ratio(1, 2));
        let m = int_matrix(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.solve(&b).unwrap(), int_matrix(&[&[3, 4], &[1, 2]]));
        assert_eq!(int_matrix(&[&[1, 2], &[2, 4]]).solve(&b), Err(Error::Singular { pivot: 1 }));
    }

    #[test]
    fn det_and_right_div() {
        let a = int_matrix(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.det(), GaussRat::from_i64(-2));
        let b = int_matrix(&[&[5, 6], &[7, 8]]);
        let x = b.right_div(&a).unwrap();
        assert_eq!(&x * &a, b);
        let af = a.map(|v| v.to_c64());
        assert!((af.det() - Complex64::new(-2.0, 0.0)).norm() < 1e-12);
    }
}
