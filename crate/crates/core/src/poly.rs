//! Matrix polynomials `f(z) = A_0 zⁿ + … + A_n` and scalar polynomials.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{ExactMatrix, Matrix};
use crate::scalar::{GaussRat, Scalar};

/// Polynomial with `rows × cols` matrix coefficients. Stored by ascending
/// power internally; the public constructors and accessors speak leading-first.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixPoly<T> {
    rows: usize,
    cols: usize,
    asc: Vec<Matrix<T>>,
}

pub type ExactPoly = MatrixPoly<GaussRat>;

impl<T: Scalar> MatrixPoly<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        MatrixPoly { rows, cols, asc: vec![Matrix::zeros(rows, cols)] }
    }

    pub fn constant(m: Matrix<T>) -> Self {
        MatrixPoly { rows: m.rows(), cols: m.cols(), asc: vec![m] }
    }

    pub fn identity(q: usize) -> Self {
        Self::constant(Matrix::identity(q))
    }

    /// `m · z^k`.
    pub fn monomial(m: Matrix<T>, k: usize) -> Self {
        let mut asc = vec![Matrix::zeros(m.rows(), m.cols()); k];
        asc.push(m);
        Self::from_ascending(asc)
    }

    /// Builds from coefficients ordered by descending power (`A_0` first).
    pub fn from_leading(coeffs: Vec<Matrix<T>>) -> Self {
        let mut asc = coeffs;
        asc.reverse();
        Self::from_ascending(asc)
    }

    pub fn from_ascending(asc: Vec<Matrix<T>>) -> Self {
        assert!(!asc.is_empty(), "polynomial needs at least one coefficient");
        let (rows, cols) = (asc[0].rows(), asc[0].cols());
        assert!(asc.iter().all(|m| m.rows() == rows && m.cols() == cols), "coefficient shapes differ");
        let mut p = MatrixPoly { rows, cols, asc };
        p.trim();
        p
    }

    /// Keeps the coefficient list untrimmed, so a zero leading coefficient
    /// survives (used for files whose declared degree must be preserved).
    pub fn from_leading_raw(coeffs: Vec<Matrix<T>>) -> Self {
        let mut asc = coeffs;
        asc.reverse();
        let (rows, cols) = (asc[0].rows(), asc[0].cols());
        MatrixPoly { rows, cols, asc }
    }

    pub fn from_exact(p: &ExactPoly) -> Self {
        MatrixPoly { rows: p.rows, cols: p.cols, asc: p.asc.iter().map(Matrix::from_exact).collect() }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U + Copy) -> MatrixPoly<U> {
        MatrixPoly { rows: self.rows, cols: self.cols, asc: self.asc.iter().map(|m| m.map(f)).collect() }
    }

    fn trim(&mut self) {
        while self.asc.len() > 1 && self.asc.last().is_some_and(Matrix::is_zero) {
            self.asc.pop();
        }
    }

    pub fn q(&self) -> usize {
        self.rows
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn degree(&self) -> usize {
        self.asc.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.asc.iter().all(Matrix::is_zero)
    }

    /// Coefficient of `z^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Matrix<T> {
        self.asc.get(k).cloned().unwrap_or_else(|| Matrix::zeros(self.rows, self.cols))
    }

    pub fn ascending(&self) -> &[Matrix<T>] {
        &self.asc
    }

    /// Coefficients `A_0, …, A_n`, leading first.
    pub fn leading_first(&self) -> Vec<Matrix<T>> {
        self.asc.iter().rev().cloned().collect()
    }

    pub fn leading(&self) -> &Matrix<T> {
        self.asc.last().expect("nonempty")
    }

    pub fn eval(&self, z: &T) -> Matrix<T> {
        let mut acc = Matrix::zeros(self.rows, self.cols);
        for c in self.asc.iter().rev() {
            acc = acc.scale(z) + c.clone();
        }
        acc
    }

    /// Coefficientwise conjugate transpose, `z ↦ f(z̄)*`.
    pub fn star(&self) -> Self {
        Self::from_ascending(self.asc.iter().map(Matrix::conj_transpose).collect())
    }

    pub fn transpose(&self) -> Self {
        Self::from_ascending(self.asc.iter().map(Matrix::transpose).collect())
    }

    /// `z ↦ f(−z)`.
    pub fn reflect(&self) -> Self {
        Self::from_ascending(
            self.asc
                .iter()
                .enumerate()
                .map(|(k, m)| if k % 2 == 1 { -m.clone() } else { m.clone() })
                .collect(),
        )
    }

    /// `z ↦ f(c·z)`.
    pub fn scale_arg(&self, c: &T) -> Self {
        let mut pw = T::one();
        let mut out = Vec::with_capacity(self.asc.len());
        for m in &self.asc {
            out.push(m.scale(&pw));
            pw = pw * c.clone();
        }
        Self::from_ascending(out)
    }

    /// `z · f(z)`.
    pub fn shift(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut asc = vec![Matrix::zeros(self.rows, self.cols)];
        asc.extend(self.asc.iter().cloned());
        MatrixPoly { rows: self.rows, cols: self.cols, asc }
    }

    /// `f(z²)`.
    pub fn expand_square(&self) -> Self {
        let mut asc = Vec::with_capacity(2 * self.asc.len());
        for (k, m) in self.asc.iter().enumerate() {
            if k > 0 {
                asc.push(Matrix::zeros(self.rows, self.cols));
            }
            asc.push(m.clone());
        }
        Self::from_ascending(asc)
    }

    pub fn derivative(&self) -> Self {
        if self.asc.len() == 1 {
            return Self::zero(self.rows, self.cols);
        }
        Self::from_ascending(
            self.asc.iter().enumerate().skip(1).map(|(k, m)| m.scale(&T::from_i64(k as i64))).collect(),
        )
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_ascending(self.asc.iter().map(|m| m.scale(c)).collect())
    }

    pub fn lmul(&self, m: &Matrix<T>) -> Self {
        Self::from_ascending(self.asc.iter().map(|c| m * c).collect())
    }

    pub fn rmul(&self, m: &Matrix<T>) -> Self {
        Self::from_ascending(self.asc.iter().map(|c| c * m).collect())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "polynomial product {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = vec![Matrix::zeros(self.rows, o.cols); self.asc.len() + o.asc.len() - 1];
        for (i, a) in self.asc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.asc.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                let cur = std::mem::replace(&mut out[i + j], Matrix::zeros(self.rows, o.cols));
                out[i + j] = cur + prod;
            }
        }
        Ok(Self::from_ascending(out))
    }

    fn combine(&self, o: &Self, neg: bool) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "polynomial shapes differ");
        let n = self.asc.len().max(o.asc.len());
        Self::from_ascending(
            (0..n)
                .map(|k| {
                    let (a, b) = (self.coeff(k), o.coeff(k));
                    if neg {
                        a - b
                    } else {
                        a + b
                    }
                })
                .collect(),
        )
    }

    /// Exact identity on the exact backend; coefficientwise relative
    /// comparison on the float backend.
    pub fn approx_eq(&self, o: &Self, tol: f64) -> bool {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return false;
        }
        if T::EXACT {
            return self == o;
        }
        let n = self.asc.len().max(o.asc.len());
        (0..n).all(|k| self.coeff(k).approx_eq(&o.coeff(k), tol))
    }

    /// Polynomial whose `z^k` coefficient is the block grid of the inputs' `z^k` coefficients.
    pub fn from_block_grid(grid: &[Vec<&MatrixPoly<T>>]) -> Self {
        let n = grid.iter().flatten().map(|p| p.asc.len()).max().unwrap_or(1);
        Self::from_ascending(
            (0..n)
                .map(|k| {
                    let blocks: Vec<Vec<Matrix<T>>> =
                        grid.iter().map(|row| row.iter().map(|p| p.coeff(k)).collect()).collect();
                    Matrix::from_blocks(&blocks)
                })
                .collect(),
        )
    }

    /// Block `(bi, bj)` of size `r × c` taken from every coefficient.
    pub fn sub_poly(&self, r0: usize, c0: usize, r: usize, c: usize) -> Self {
        Self::from_ascending(self.asc.iter().map(|m| m.sub_matrix(r0, c0, r, c)).collect())
    }

    /// Even/odd split `f(z) = h(z²) + z·g(z²)`.
    pub fn split(&self) -> EvenOddSplit<T> {
        let n = self.degree();
        let even: Vec<Matrix<T>> = self.asc.iter().step_by(2).cloned().collect();
        let odd: Vec<Matrix<T>> = self.asc.iter().skip(1).step_by(2).cloned().collect();
        let odd = if odd.is_empty() { vec![Matrix::zeros(self.rows, self.cols)] } else { odd };
        let (h, g) = (MatrixPoly::from_ascending(even), MatrixPoly::from_ascending(odd));
        let parity = if n.is_multiple_of(2) { Parity::Even } else { Parity::Odd };
        EvenOddSplit { h, g, parity, n }
    }

    /// Scalar polynomial `det f(z)` of degree at most `n·q`.
    pub fn det_poly(&self) -> ScalarPoly<T> {
        assert_eq!(self.rows, self.cols, "determinant of a non-square polynomial");
        let npts = self.degree() * self.rows + 1;
        if T::EXACT {
            let nodes: Vec<T> = (0..npts)
                .map(|k| {
                    let v = k.div_ceil(2) as i64;
                    T::from_i64(if k % 2 == 1 { v } else { -v })
                })
                .collect();
            let values: Vec<T> = nodes.iter().map(|x| self.eval(x).det()).collect();
            ScalarPoly::interpolate(&nodes, &values)
        } else {
            // Roots-of-unity nodes keep the float interpolation well conditioned.
            let nodes: Vec<Complex64> = (0..npts)
                .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / npts as f64))
                .collect();
            let values: Vec<Complex64> = nodes
                .iter()
                .map(|x| self.eval(&T::from_c64(*x)).det().to_c64())
                .collect();
            let coeffs = (0..npts)
                .map(|k| {
                    let s: Complex64 = values.iter().zip(&nodes).map(|(v, x)| v * x.powu(k as u32).conj()).sum();
                    T::from_c64(s / npts as f64)
                })
                .collect();
            ScalarPoly::new(coeffs)
        }
    }
}

impl<T: Scalar> Add for MatrixPoly<T> {
    type Output = MatrixPoly<T>;
    fn add(self, o: Self) -> Self {
        self.combine(&o, false)
    }
}

impl<T: Scalar> Sub for MatrixPoly<T> {
    type Output = MatrixPoly<T>;
    fn sub(self, o: Self) -> Self {
        self.combine(&o, true)
    }
}

impl<'a, T: Scalar> Add<&'a MatrixPoly<T>> for &'a MatrixPoly<T> {
    type Output = MatrixPoly<T>;
    fn add(self, o: &MatrixPoly<T>) -> MatrixPoly<T> {
        self.combine(o, false)
    }
}

impl<'a, T: Scalar> Sub<&'a MatrixPoly<T>> for &'a MatrixPoly<T> {
    type Output = MatrixPoly<T>;
    fn sub(self, o: &MatrixPoly<T>) -> MatrixPoly<T> {
        self.combine(o, true)
    }
}

impl<T: Scalar> Neg for MatrixPoly<T> {
    type Output = MatrixPoly<T>;
    fn neg(self) -> Self {
        self.scale(&-T::one())
    }
}

impl<T: Scalar> Mul for MatrixPoly<T> {
    type Output = MatrixPoly<T>;
    fn mul(self, o: Self) -> Self {
        self.try_mul(&o).expect("polynomial product dimensions")
    }
}

impl<'a, T: Scalar> Mul<&'a MatrixPoly<T>> for &'a MatrixPoly<T> {
    type Output = MatrixPoly<T>;
    fn mul(self, o: &MatrixPoly<T>) -> MatrixPoly<T> {
        self.try_mul(o).expect("polynomial product dimensions")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// `f(z) = h(z²) + z·g(z²)` with `n = deg f`.
#[derive(Clone, Debug, PartialEq)]
pub struct EvenOddSplit<T> {
    pub h: MatrixPoly<T>,
    pub g: MatrixPoly<T>,
    pub parity: Parity,
    pub n: usize,
}

impl<T: Scalar> EvenOddSplit<T> {
    pub fn m(&self) -> usize {
        self.n / 2
    }

    pub fn recombine(&self) -> MatrixPoly<T> {
        &self.h.expand_square() + &self.g.expand_square().shift()
    }
}

/// Scalar polynomial, ascending coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarPoly<T> {
    c: Vec<T>,
}

impl<T: Scalar> ScalarPoly<T> {
    pub fn new(mut c: Vec<T>) -> Self {
        if c.is_empty() {
            c.push(T::zero());
        }
        while c.len() > 1 && c.last().is_some_and(Scalar::is_zero) {
            c.pop();
        }
        ScalarPoly { c }
    }

    /// Builds from descending (leading-first) coefficients.
    pub fn from_leading(mut c: Vec<T>) -> Self {
        c.reverse();
        Self::new(c)
    }

    pub fn from_i64_leading(c: &[i64]) -> Self {
        Self::from_leading(c.iter().map(|&v| T::from_i64(v)).collect())
    }

    pub fn coeffs(&self) -> &[T] {
        &self.c
    }

    pub fn leading_first(&self) -> Vec<T> {
        self.c.iter().rev().cloned().collect()
    }

    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }

    pub fn eval(&self, z: &T) -> T {
        self.c.iter().rev().fold(T::zero(), |acc, a| acc * z.clone() + a.clone())
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        self.c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a.to_c64())
    }

    pub fn to_c64(&self) -> ScalarPoly<Complex64> {
        ScalarPoly::new(self.c.iter().map(Scalar::to_c64).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.c.iter().enumerate().skip(1).map(|(k, a)| a.clone() * T::from_i64(k as i64)).collect())
    }

    /// `z ↦ p(c·z)`.
    pub fn scale_arg(&self, s: &T) -> Self {
        let mut pw = T::one();
        Self::new(
            self.c
                .iter()
                .map(|a| {
                    let v = a.clone() * pw.clone();
                    pw = pw.clone() * s.clone();
                    v
                })
                .collect(),
        )
    }

    pub fn as_matrix_poly(&self) -> MatrixPoly<T> {
        MatrixPoly::from_ascending(self.c.iter().map(|a| Matrix::from_vec(1, 1, vec![a.clone()])).collect())
    }

    /// Newton interpolation through `(nodes[k], values[k])`.
    pub fn interpolate(nodes: &[T], values: &[T]) -> Self {
        let n = nodes.len();
        let mut dd = values.to_vec();
        for level in 1..n {
            for k in (level..n).rev() {
                let num = dd[k].clone() - dd[k - 1].clone();
                let den = nodes[k].clone() - nodes[k - level].clone();
                dd[k] = num * den.inv().expect("distinct nodes");
            }
        }
        let mut acc = vec![dd[n - 1].clone()];
        for k in (0..n - 1).rev() {
            // acc ← acc·(z − x_k) + dd[k]
            let mut next = vec![T::zero(); acc.len() + 1];
            for (i, a) in acc.iter().enumerate() {
                next[i + 1] = next[i + 1].clone() + a.clone();
                next[i] = next[i].clone() - a.clone() * nodes[k].clone();
            }
            next[0] = next[0].clone() + dd[k].clone();
            acc = next;
        }
        Self::new(acc)
    }
}

impl<T: Scalar> Mul for &ScalarPoly<T> {
    type Output = ScalarPoly<T>;
    fn mul(self, o: &ScalarPoly<T>) -> ScalarPoly<T> {
        let mut out = vec![T::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        ScalarPoly::new(out)
    }
}

impl<T: Scalar> Add for &ScalarPoly<T> {
    type Output = ScalarPoly<T>;
    fn add(self, o: &ScalarPoly<T>) -> ScalarPoly<T> {
        let n = self.c.len().max(o.c.len());
        ScalarPoly::new(
            (0..n)
                .map(|k| {
                    self.c.get(k).cloned().unwrap_or_else(T::zero) + o.c.get(k).cloned().unwrap_or_else(T::zero)
                })
                .collect(),
        )
    }
}

/// Shorthand: exact polynomial from leading-first integer matrices.
pub fn int_poly(coeffs: &[&[&[i64]]]) -> ExactPoly {
    MatrixPoly::from_leading(coeffs.iter().map(|m| crate::matrix::int_matrix(m)).collect())
}

/// Shorthand: scalar `1×1` exact matrix polynomial from leading-first integers.
pub fn scalar_poly(coeffs: &[i64]) -> ExactPoly {
    MatrixPoly::from_leading(coeffs.iter().map(|&v| ExactMatrix::from_vec(1, 1, vec![GaussRat::from_i64(v)])).collect())
}
