//! Markov parameters, block Hankel matrices and Stieltjes positivity.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{EvenOddSplit, MatrixPoly, Parity};
use crate::scalar::{GaussRat, Scalar};

/// Hankel kind: 1 starts at `s_0`, 2 starts at `s_1`.
pub type Kind = usize;

#[derive(Clone, Debug, PartialEq)]
pub struct MomentSequence<T> {
    q: usize,
    s: Vec<Matrix<T>>,
}

pub type ExactMoments = MomentSequence<GaussRat>;

impl<T: Scalar> MomentSequence<T> {
    pub fn new(q: usize, s: Vec<Matrix<T>>) -> Result<Self> {
        if let Some(k) = s.iter().position(|m| m.rows() != q || m.cols() != q) {
            return Err(Error::Dimension(format!("moment s_{k} is not {q}x{q}")));
        }
        Ok(MomentSequence { q, s })
    }

    pub fn from_exact(m: &ExactMoments) -> Self {
        MomentSequence { q: m.q, s: m.s.iter().map(Matrix::from_exact).collect() }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn get(&self, j: usize) -> &Matrix<T> {
        &self.s[j]
    }

    pub fn as_slice(&self) -> &[Matrix<T>] {
        &self.s
    }

    pub fn truncated(&self, len: usize) -> Self {
        MomentSequence { q: self.q, s: self.s[..len.min(self.s.len())].to_vec() }
    }

    pub fn push(&mut self, m: Matrix<T>) {
        self.s.push(m);
    }

    fn need(&self, last: usize) -> Result<()> {
        if last >= self.s.len() {
            return Err(Error::Length { needed: last + 1, have: self.s.len() });
        }
        Ok(())
    }

    /// Index of the first non-Hermitian moment.
    pub fn first_non_hermitian(&self, tol: f64) -> Option<usize> {
        self.s.iter().position(|m| !m.is_hermitian(tol).unwrap_or(false))
    }

    pub fn hankel(&self, kind: Kind, j: usize) -> Result<Matrix<T>> {
        hankel(self, kind, j)
    }
}

/// Markov parameters of the split: `g/h = Σ(−1)^j s_j z^{−j−1}` (even) or
/// `h/(z g)` (odd), with quotients taken on the right.
pub fn markov_parameters<T: Scalar>(split: &EvenOddSplit<T>, count: usize) -> Result<MomentSequence<T>> {
    let (num, den) = match split.parity {
        Parity::Even => (split.g.clone(), split.h.clone()),
        Parity::Odd => (split.h.clone(), split.g.shift()),
    };
    let q = split.h.q();
    let d = den.degree();
    let dl = den.leading_first();
    let mut nl = num.leading_first();
    // Align the numerator so nl[t] is the coefficient of z^{d−1−t}.
    let pad = d.saturating_sub(1 + num.degree());
    let mut aligned = vec![Matrix::zeros(q, q); pad];
    aligned.append(&mut nl);
    let d0_inv = dl[0].inverse().map_err(|_| {
        Error::Precondition("leading coefficient of the denominator part is singular".into())
    })?;
    let mut s: Vec<Matrix<T>> = Vec::with_capacity(count);
    for t in 0..count {
        let mut acc = aligned.get(t).cloned().unwrap_or_else(|| Matrix::zeros(q, q));
        for (j, sj) in s.iter().enumerate() {
            if let Some(dk) = dl.get(t - j) {
                let term = sj * dk;
                acc = if j % 2 == 0 { acc - term } else { acc + term };
            }
        }
        let v = &acc * &d0_inv;
        s.push(if t % 2 == 0 { v } else { -v });
    }
    MomentSequence::new(q, s)
}

/// Markov parameters with the default count `n` (`2m` or `2m+1`).
pub fn markov_of<T: Scalar>(f: &MatrixPoly<T>) -> Result<MomentSequence<T>> {
    markov_parameters(&f.split(), f.degree())
}

/// `(j+1)q` square block Hankel with block `(a,b)` equal to `s_{a+b+kind−1}`.
pub fn hankel<T: Scalar>(s: &MomentSequence<T>, kind: Kind, j: usize) -> Result<Matrix<T>> {
    assert!(kind == 1 || kind == 2, "Hankel kind is 1 or 2");
    s.need(2 * j + kind - 1)?;
    let blocks: Vec<Vec<Matrix<T>>> =
        (0..=j).map(|a| (0..=j).map(|b| s.s[a + b + kind - 1].clone()).collect()).collect();
    Ok(Matrix::from_blocks(&blocks))
}

/// Block row `(s_j, …, s_{2j−1})` (kind 1) or `(s_{j+1}, …, s_{2j})` (kind 2);
/// the conjugate transpose of the stacked column `Y_{kind,j}`.
pub fn y_row<T: Scalar>(s: &MomentSequence<T>, kind: Kind, j: usize) -> Result<Matrix<T>> {
    assert!(j >= 1, "Y is empty for j = 0");
    let start = j + kind - 1;
    s.need(start + j - 1)?;
    Ok(Matrix::hstack(&s.s[start..start + j]))
}

/// `Y* H⁻¹ Y`: the lower bound for `s_{2j+kind−1}` (zero for `j = 0`).
pub fn lower_bound<T: Scalar>(s: &MomentSequence<T>, kind: Kind, j: usize) -> Result<Matrix<T>> {
    if j == 0 {
        return Ok(Matrix::zeros(s.q, s.q));
    }
    let y = y_row(s, kind, j)?;
    let h = hankel(s, kind, j - 1)?;
    let x = h.solve(&y.conj_transpose()).map_err(|_| Error::SingularAt { what: "block Hankel", index: j - 1 })?;
    Ok(&y * &x)
}

/// Schur complement `Ĥ_{kind,j}`.
pub fn schur_complement<T: Scalar>(s: &MomentSequence<T>, kind: Kind, j: usize) -> Result<Matrix<T>> {
    s.need(2 * j + kind - 1)?;
    let lb = lower_bound(s, kind, j)?;
    Ok(&s.s[2 * j + kind - 1] - &lb)
}

pub fn schur_complements<T: Scalar>(s: &MomentSequence<T>, j: usize) -> Result<(Matrix<T>, Matrix<T>)> {
    Ok((schur_complement(s, 1, j)?, schur_complement(s, 2, j)?))
}

/// The Hankels tested for a sequence of the given length, as `(kind, j)`.
pub fn positivity_targets(len: usize) -> Vec<(Kind, usize)> {
    if len == 0 {
        return vec![];
    }
    let m = (len - 1) / 2;
    let mut v = vec![(1, m)];
    if len.is_multiple_of(2) {
        v.push((2, m));
    } else if m >= 1 {
        v.push((2, m - 1));
    }
    v
}

/// First failing Hankel `(kind, j)` of the positivity test, or `None`.
pub fn stieltjes_failure<T: Scalar>(s: &MomentSequence<T>, tol: f64) -> Result<Option<(Kind, usize)>> {
    if let Some(k) = s.first_non_hermitian(tol) {
        return Err(Error::Contract(format!("moment s_{k} is not Hermitian")));
    }
    for (kind, j) in positivity_targets(s.len()) {
        if !hankel(s, kind, j)?.is_positive_definite(tol)? {
            return Ok(Some((kind, j)));
        }
    }
    Ok(None)
}

pub fn is_stieltjes_positive<T: Scalar>(s: &MomentSequence<T>, tol: f64) -> Result<bool> {
    Ok(stieltjes_failure(s, tol)?.is_none())
}

/// Positivity through the Schur complements `Ĥ_{1,0..}`, `Ĥ_{2,0..}`.
pub fn is_stieltjes_positive_schur<T: Scalar>(s: &MomentSequence<T>, tol: f64) -> Result<bool> {
    if let Some(k) = s.first_non_hermitian(tol) {
        return Err(Error::Contract(format!("moment s_{k} is not Hermitian")));
    }
    for (kind, top) in positivity_targets(s.len()) {
        for j in 0..=top {
            match schur_complement(s, kind, j) {
                Ok(h) => {
                    if !h.is_positive_definite(tol)? {
                        return Ok(false);
                    }
                }
                Err(Error::SingularAt { .. }) => return Ok(false),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(true)
}

/// Canonical strict extension: the next moment is its lower bound plus `I`.
pub fn extend_moment<T: Scalar>(s: &MomentSequence<T>) -> Result<Matrix<T>> {
    let len = s.len();
    if len == 0 {
        return Err(Error::Length { needed: 1, have: 0 });
    }
    let (kind, j) = if len.is_multiple_of(2) { (1, len / 2) } else { (2, (len - 1) / 2) };
    Ok(lower_bound(s, kind, j)? + Matrix::identity(s.q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::scalar_poly;

    fn sc(v: &[i64]) -> ExactMoments {
        MomentSequence::new(1, v.iter().map(|&x| Matrix::from_vec(1, 1, vec![GaussRat::from_i64(x)])).collect()).unwrap()
    }

    #[test]
    fn scalar_markov() {
        let f = scalar_poly(&[1, 2, 1]);
        assert_eq!(markov_parameters(&f.split(), 3).unwrap(), sc(&[2, 2, 2]));
        let (a, b, c) = (3, 5, 2);
        let f = scalar_poly(&[1, a, b, c]);
        assert_eq!(markov_parameters(&f.split(), 3).unwrap(), sc(&[a, a * b - c, b * (a * b - c)]));
    }

    #[test]
    fn positivity_examples() {
        assert!(!is_stieltjes_positive(&sc(&[2, 2, 2]), 0.0).unwrap());
        assert!(is_stieltjes_positive(&sc(&[2, 2, 3]), 0.0).unwrap());
        let h = schur_complement(&sc(&[2, 2, 2]), 1, 1).unwrap();
        assert!(h.is_zero());
    }

    #[test]
    fn extension_examples() {
        assert_eq!(extend_moment(&sc(&[2, 2])).unwrap().get(0, 0), &GaussRat::from_i64(3));
        let id = Matrix::<GaussRat>::identity(2);
        let s = MomentSequence::new(2, vec![id.clone(), id.clone()]).unwrap();
        assert_eq!(extend_moment(&s).unwrap(), id.scale(&GaussRat::from_i64(2)));
    }

    #[test]
    fn hankel_shapes() {
        let s = sc(&[1, 2, 3, 4]);
        assert_eq!(hankel(&s, 2, 1).unwrap().get(1, 1), &GaussRat::from_i64(4));
        assert_eq!(hankel(&s, 2, 2), Err(Error::Length { needed: 6, have: 4 }));
    }
}
