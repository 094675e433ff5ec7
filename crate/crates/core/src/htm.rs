//! HTM classification, continued fractions, Condition C and reconstruction
//! from Markov parameters.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::moments::{markov_parameters, stieltjes_failure, is_stieltjes_positive_schur, Kind, MomentSequence};
use crate::orthopoly::{ds_parameters, ortho_pair};
use crate::poly::{EvenOddSplit, MatrixPoly, Parity};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct ContinuedFraction<T> {
    pub parity: Parity,
    /// `c_0..c_{m−1}` (even) or `c_0..c_m` (odd).
    pub c: Vec<Matrix<T>>,
    /// `d_0..d_{m−1}`; the even terminal level is stored uninverted.
    pub d: Vec<Matrix<T>>,
}

/// First pair `(odd i, even l)` with `A_i* A_l ≠ A_l* A_i`, and its residual.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionCViolation<T> {
    pub odd: usize,
    pub even: usize,
    pub residual: Matrix<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HtmReport<T> {
    pub is_htm: bool,
    pub markov: MomentSequence<T>,
    /// `((kind, j), positive definite)` for each Hankel of the test.
    pub hankel_verdicts: Vec<((Kind, usize), bool)>,
    /// Index of a non-Hermitian Markov parameter, if any.
    pub non_hermitian: Option<usize>,
    pub condition_c: bool,
    pub condition_c_violation: Option<ConditionCViolation<T>>,
    pub cf: Option<ContinuedFraction<T>>,
}

/// `f · A_0⁻¹`, monic with the same Markov parameters.
pub fn normalize<T: Scalar>(f: &MatrixPoly<T>) -> Result<MatrixPoly<T>> {
    let a0 = f.leading().inverse().map_err(|_| Error::Precondition("det A_0 = 0".into()))?;
    Ok(f.rmul(&a0))
}

pub fn condition_c<T: Scalar>(f: &MatrixPoly<T>, tol: f64) -> Option<ConditionCViolation<T>> {
    let a = f.leading_first();
    for odd in (1..a.len()).step_by(2) {
        for even in (0..a.len()).step_by(2) {
            let ai = a[odd].conj_transpose();
            let al = a[even].conj_transpose();
            let residual = &(&ai * &a[even]) - &(&al * &a[odd]);
            if !residual.near_zero(tol) {
                return Some(ConditionCViolation { odd, even, residual });
            }
        }
    }
    None
}

pub fn classify<T: Scalar>(f: &MatrixPoly<T>, tol: f64) -> Result<HtmReport<T>> {
    if f.rows() != f.cols() {
        return Err(Error::Dimension("matrix polynomial must be square".into()));
    }
    let n = f.degree();
    if n < 1 {
        return Err(Error::Precondition("degree must be at least 1".into()));
    }
    if f.leading().det().near_zero(tol) {
        return Err(Error::Precondition("det A_0 = 0".into()));
    }
    let markov = markov_parameters(&f.split(), n)?;
    let violation = condition_c(f, tol);
    let mut report = HtmReport {
        is_htm: false,
        markov,
        hankel_verdicts: vec![],
        non_hermitian: None,
        condition_c: violation.is_none(),
        condition_c_violation: violation,
        cf: None,
    };
    if let Some(k) = report.markov.first_non_hermitian(tol) {
        report.non_hermitian = Some(k);
        return Ok(report);
    }
    for (kind, j) in crate::moments::positivity_targets(n) {
        let pd = report.markov.hankel(kind, j)?.is_positive_definite(tol)?;
        report.hankel_verdicts.push(((kind, j), pd));
    }
    report.is_htm = report.hankel_verdicts.iter().all(|v| v.1);
    let schur = is_stieltjes_positive_schur(&report.markov, tol)?;
    if schur != report.is_htm && T::EXACT {
        return Err(Error::Internal("Hankel and Schur complement tests disagree".into()));
    }
    if report.is_htm {
        report.cf = Some(cf_from_moments(&report.markov, n)?);
    }
    Ok(report)
}

fn cf_from_moments<T: Scalar>(s: &MomentSequence<T>, n: usize) -> Result<ContinuedFraction<T>> {
    let ds = ds_parameters(&s.truncated(n))?;
    let parity = if n.is_multiple_of(2) { Parity::Even } else { Parity::Odd };
    Ok(ContinuedFraction { parity, c: ds.m, d: ds.l })
}

pub fn continued_fraction<T: Scalar>(f: &MatrixPoly<T>, tol: f64) -> Result<ContinuedFraction<T>> {
    let r = classify(f, tol)?;
    r.cf.ok_or_else(|| Error::NotHtm("Hankel test fails".into()))
}

/// Nested evaluation `(z c_0 + (d_0 + (z c_1 + …)⁻¹)⁻¹)⁻¹`.
pub fn eval_cf<T: Scalar>(cf: &ContinuedFraction<T>, z: &T) -> Result<Matrix<T>> {
    let mut levels: Vec<Matrix<T>> = Vec::new();
    for (k, c) in cf.c.iter().enumerate() {
        levels.push(c.scale(z));
        if let Some(d) = cf.d.get(k) {
            levels.push(d.clone());
        }
    }
    let last = levels.len() - 1;
    let mut x = levels[last].inverse().map_err(|_| Error::Evaluation { level: last })?;
    for k in (0..last).rev() {
        x = (&levels[k] + &x).inverse().map_err(|_| Error::Evaluation { level: k })?;
    }
    Ok(x)
}

/// `g(z)h(z)⁻¹` (even) or `h(z)(z g(z))⁻¹` (odd).
pub fn eval_rational<T: Scalar>(split: &EvenOddSplit<T>, z: &T) -> Result<Matrix<T>> {
    let h = split.h.eval(z);
    let g = split.g.eval(z);
    match split.parity {
        Parity::Even => g.right_div(&h).map_err(|_| Error::Evaluation { level: 0 }),
        Parity::Odd => h.right_div(&g.scale(z)).map_err(|_| Error::Evaluation { level: 0 }),
    }
}

/// `h*(z)·g(z) = g*(z)·h(z)`: the quotient of the split is Hermitian on the real line.
pub fn symmetry_check<T: Scalar>(split: &EvenOddSplit<T>, tol: f64) -> bool {
    right_quotient_symmetric(&split.g, &split.h, tol)
}

/// `num·den⁻¹` is symmetric iff `den*·num = num*·den`.
pub fn right_quotient_symmetric<T: Scalar>(num: &MatrixPoly<T>, den: &MatrixPoly<T>, tol: f64) -> bool {
    (&den.star() * num).approx_eq(&(&num.star() * den), tol)
}

/// The monic degree-`n` HTM polynomial with Markov parameters `s_0..s_{n−1}`.
pub fn reconstruct<T: Scalar>(s: &MomentSequence<T>, n: usize, tol: f64) -> Result<MatrixPoly<T>> {
    if n < 1 {
        return Err(Error::Precondition("degree must be at least 1".into()));
    }
    if s.len() < n {
        return Err(Error::Length { needed: n, have: s.len() });
    }
    let s = s.truncated(n);
    if let Some((kind, j)) = stieltjes_failure(&s, tol)? {
        return Err(Error::NotHtm(format!("H{kind},{j} is not positive definite")));
    }
    let m = n / 2;
    let sign = |e: usize| if e.is_multiple_of(2) { T::one() } else { -T::one() };
    let (h, g) = if n.is_multiple_of(2) {
        let (p1, q1) = ortho_pair(&s, 1, m)?;
        (p1.star().reflect().scale(&sign(m)), q1.star().reflect().scale(&sign(m + 1)))
    } else {
        let (p2, q2) = ortho_pair(&s, 2, m)?;
        (q2.star().reflect().scale(&sign(m)), p2.star().reflect().scale(&sign(m)))
    };
    Ok(&h.expand_square() + &g.expand_square().shift())
}
