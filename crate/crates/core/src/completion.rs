//! Completion of a degree-`n` polynomial `P` into an HTM polynomial
//! `P(z²) + z·Q(z²)` from seed moments, and the scalar Hermite–Biehler pair.

use crate::error::{Error, Result};
use crate::htm::right_quotient_symmetric;
use crate::matrix::Matrix;
use crate::moments::{markov_parameters, stieltjes_failure, MomentSequence};
use crate::orthopoly::ortho_pair;
use crate::poly::{MatrixPoly, ScalarPoly};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct CompletionResult<T> {
    /// The HTM polynomial `P_w(z²) + z·Q(z²)`, with `P_w = P` on the direct
    /// route and `P_w = Pᵀ` on the transpose route.
    pub f2n: MatrixPoly<T>,
    pub p_used: MatrixPoly<T>,
    pub q: MatrixPoly<T>,
    pub used_transpose: bool,
    /// `s_0..s_{2n−1}` of `f2n`.
    pub moments: MomentSequence<T>,
    /// `P(z²) + z·Q_wᵀ(z²)` with `Q_w = Q` on the transpose route: same
    /// determinant as `f2n`, and equal to it on the direct route.
    pub in_p_orientation: MatrixPoly<T>,
}

/// `Σ_k B_k Σ_{a+b=n−k−1} x^a s_b` for `P = Σ B_k x^{n−k}`.
pub fn q_from_p<T: Scalar>(p: &MatrixPoly<T>, s: &MomentSequence<T>) -> Result<MatrixPoly<T>> {
    let n = p.degree();
    if s.len() != n {
        return Err(Error::Length { needed: n, have: s.len() });
    }
    let b = p.leading_first();
    let q = p.q();
    let mut asc = vec![Matrix::zeros(q, q); n.max(1)];
    for (k, bk) in b.iter().enumerate().take(n) {
        let top = n - k - 1;
        for a in 0..=top {
            asc[a] = &asc[a] + &(bk * s.get(top - a));
        }
    }
    Ok(MatrixPoly::from_ascending(asc))
}

fn sign<T: Scalar>(e: usize) -> T {
    if e.is_multiple_of(2) { T::one() } else { -T::one() }
}

enum Attempt<T> {
    Asymmetric,
    Done(MatrixPoly<T>, MatrixPoly<T>, MomentSequence<T>),
}

fn attempt<T: Scalar>(pw: &MatrixPoly<T>, seeds: &MomentSequence<T>, tol: f64) -> Result<Attempt<T>> {
    let n = pw.degree();
    let p1 = pw.star().reflect().scale(&sign(n));
    let q1 = q_from_p(&p1, seeds)?;
    if !right_quotient_symmetric(&q1.star(), &p1.star(), tol) {
        return Ok(Attempt::Asymmetric);
    }
    let q = q1.star().reflect().scale(&sign(n + 1));
    let f = &pw.expand_square() + &q.expand_square().shift();
    let moments = markov_parameters(&f.split(), 2 * n)?;
    for j in 0..n {
        if !moments.get(j).approx_eq(seeds.get(j), tol) {
            return Err(Error::Internal(format!("completed moment s_{j} differs from its seed")));
        }
    }
    if let Some((kind, index)) = stieltjes_failure(&moments, tol)? {
        let h = moments.hankel(kind, index)?;
        return Err(Error::MomentsNotPositive {
            kind,
            index,
            hankel: h.row_vecs().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
        });
    }
    Ok(Attempt::Done(q, f, moments))
}

/// Runs the direct route, then the transpose route when the symmetry step fails.
pub fn complete<T: Scalar>(p: &MatrixPoly<T>, seeds: &MomentSequence<T>, tol: f64) -> Result<CompletionResult<T>> {
    let n = p.degree();
    if n < 1 || p.rows() != p.cols() {
        return Err(Error::Precondition("P must be square of degree at least 1".into()));
    }
    if *p.leading() != Matrix::identity(p.q()) {
        return Err(Error::Precondition("P must be monic".into()));
    }
    if seeds.len() != n {
        return Err(Error::Length { needed: n, have: seeds.len() });
    }
    if let Some(k) = seeds.first_non_hermitian(tol) {
        return Err(Error::Contract(format!("seed moment s_{k} is not Hermitian")));
    }
    for used_transpose in [false, true] {
        let pw = if used_transpose { p.transpose() } else { p.clone() };
        if let Attempt::Done(q, f2n, moments) = attempt(&pw, seeds, tol)? {
            let in_p_orientation = if used_transpose {
                &p.expand_square() + &q.transpose().expand_square().shift()
            } else {
                f2n.clone()
            };
            return Ok(CompletionResult { f2n, p_used: pw, q, used_transpose, moments, in_p_orientation });
        }
    }
    Err(Error::Inapplicable("the symmetry step fails for P and for its transpose".into()))
}

/// Scalar `(f_{2m}, f_{2m+1})` built from `p_{1,m}`, `p_{2,m}` and their derivatives.
pub fn hermite_biehler_scalar<T: Scalar>(s: &MomentSequence<T>, m: usize) -> Result<(ScalarPoly<T>, ScalarPoly<T>)> {
    if s.q() != 1 {
        return Err(Error::Precondition("scalar moments required".into()));
    }
    if m < 2 {
        return Err(Error::Precondition("m must be at least 2".into()));
    }
    let (p1, _) = ortho_pair(s, 1, m)?;
    let (p2, _) = ortho_pair(s, 2, m)?;
    let minus_sq = |p: &MatrixPoly<T>| p.scale_arg(&-T::one()).expand_square();
    let sg = sign::<T>(m);
    let even = (&minus_sq(&p1) - &minus_sq(&p1.derivative()).shift()).scale(&sg);
    let odd = (&minus_sq(&p2.derivative()) + &minus_sq(&p2).shift()).scale(&sg);
    let scalar = |p: &MatrixPoly<T>| ScalarPoly::new(p.ascending().iter().map(|c| c.get(0, 0).clone()).collect());
    Ok((scalar(&even), scalar(&odd)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int_matrix;
    use crate::poly::scalar_poly;

    fn sc(v: &[i64]) -> MomentSequence<crate::scalar::GaussRat> {
        MomentSequence::new(1, v.iter().map(|&x| int_matrix(&[&[x]])).collect()).unwrap()
    }

    #[test]
    fn q_from_p_small() {
        let s = sc(&[3, 5]);
        assert_eq!(q_from_p(&scalar_poly(&[1, 0, 0]), &s).unwrap(), scalar_poly(&[3, 5]));
        assert_eq!(q_from_p(&scalar_poly(&[1, 0]), &sc(&[3])).unwrap(), scalar_poly(&[3]));
    }

    #[test]
    fn scalar_completion() {
        let r = complete(&scalar_poly(&[1, 1]), &sc(&[1]), 0.0).unwrap();
        assert_eq!(r.f2n, scalar_poly(&[1, 1, 1]));
        assert!(!r.used_transpose);
        assert!(matches!(
            complete(&scalar_poly(&[1, -1]), &sc(&[1]), 0.0),
            Err(Error::MomentsNotPositive { kind: 2, index: 0, .. })
        ));
    }
}
