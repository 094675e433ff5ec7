//! Symmetrizers, Bezoutians of matrix polynomial quadruples and the
//! positive-definite stability certificate.

use crate::error::{Error, Result};
use crate::htm::{classify, condition_c, ConditionCViolation};
use crate::matrix::Matrix;
use crate::moments::{hankel, markov_of, MomentSequence};
use crate::poly::{MatrixPoly, Parity};
use crate::scalar::Scalar;

/// Block anti-triangular Hankel of coefficients: block `(i, j)` is
/// `Q_{ℓ−1−i−j}` for leading-first `Q_0..Q_ℓ`.
pub fn symmetrizer<T: Scalar>(p: &MatrixPoly<T>) -> Matrix<T> {
    let l = p.degree();
    let q = p.q();
    let c = p.leading_first();
    let mut s = Matrix::zeros(l * q, l * q);
    for i in 0..l {
        for j in 0..l - i {
            s.set_block(i, j, &c[l - 1 - i - j]);
        }
    }
    s
}

/// `J̃_m = diag(I, −I, I, …)` with `m + 1` blocks.
pub fn sign_matrix<T: Scalar>(m: usize, q: usize) -> Matrix<T> {
    let mut j = Matrix::zeros((m + 1) * q, (m + 1) * q);
    for k in 0..=m {
        let b = Matrix::identity(q);
        j.set_block(k, k, &if k % 2 == 0 { b } else { -b });
    }
    j
}

/// Odd-degree truncation `A_0 z^{m−1} + A_2 z^{m−2} + … + A_{2m−2}`.
pub fn g_tilde<T: Scalar>(f: &MatrixPoly<T>) -> MatrixPoly<T> {
    let g = f.split().g;
    MatrixPoly::from_ascending(g.ascending()[1..].to_vec())
}

/// Bivariate divided difference `(M1(λ)L1(μ) − M(λ)L(μ)) / (λ − μ)`: the block
/// coefficient matrix `Γ` (block `(a, b)` multiplies `λ^a μ^b`) and the
/// remainder `M1(λ)L1(λ) − M(λ)L(λ)`, which must vanish.
pub fn divided_difference<T: Scalar>(
    m1: &MatrixPoly<T>,
    l1: &MatrixPoly<T>,
    m: &MatrixPoly<T>,
    l: &MatrixPoly<T>,
) -> (Matrix<T>, MatrixPoly<T>) {
    let q = m1.rows();
    let deg = [m1, l1, m, l].iter().map(|p| p.degree()).max().unwrap_or(0);
    let c = |a: usize, b: usize| -> Matrix<T> { &(&m1.coeff(a) * &l1.coeff(b)) - &(&m.coeff(a) * &l.coeff(b)) };
    let mut gamma = Matrix::zeros(deg.max(1) * q, deg.max(1) * q);
    let mut rem = Vec::with_capacity(2 * deg + 1);
    rem.push(c(0, 0));
    for k in 1..=2 * deg {
        let mut acc = Matrix::zeros(q, q);
        for a in 0..k {
            if a > deg || k - a > deg {
                continue;
            }
            acc = &acc + &c(a, k - a);
            let b = k - 1 - a;
            if a < deg && b < deg {
                gamma.set_block(a, b, &-acc.clone());
            }
        }
        if k <= deg {
            acc = &acc + &c(k, 0);
        }
        rem.push(acc);
    }
    (gamma, MatrixPoly::from_ascending(rem))
}

/// [`divided_difference`] that rejects a non-integrable quadruple.
pub fn bezoutian_oracle<T: Scalar>(
    m1: &MatrixPoly<T>,
    l1: &MatrixPoly<T>,
    m: &MatrixPoly<T>,
    l: &MatrixPoly<T>,
    tol: f64,
) -> Result<Matrix<T>> {
    let (gamma, rem) = divided_difference(m1, l1, m, l);
    if !rem.approx_eq(&MatrixPoly::zero(rem.rows(), rem.cols()), tol) {
        return Err(Error::Contract("M1·L1 − M·L is not identically zero".into()));
    }
    Ok(gamma)
}

/// `(f*(λ̄), f(−μ), f*(−λ̄), f(μ))`.
pub fn f_quadruple<T: Scalar>(f: &MatrixPoly<T>) -> [MatrixPoly<T>; 4] {
    [f.star(), f.reflect(), f.star().reflect(), f.clone()]
}

/// The two sandwiched blocks `S₁* J̃ H J̃ S₁` (even powers) and `S₂* J̃ H J̃ S₂`
/// (odd powers), with the factors kept for the certificate.
#[derive(Clone, Debug)]
struct Kernel<T> {
    s: [Matrix<T>; 2],
    j: [Matrix<T>; 2],
    h: [Matrix<T>; 2],
}

impl<T: Scalar> Kernel<T> {
    fn new(f: &MatrixPoly<T>, s: &MomentSequence<T>) -> Result<Self> {
        let split = f.split();
        let m = split.m();
        let q = f.q();
        if m == 0 {
            return Err(Error::Precondition("degree must be at least 2".into()));
        }
        Ok(match split.parity {
            Parity::Even => {
                let sh = symmetrizer(&split.h);
                Kernel {
                    s: [sh.clone(), sh],
                    j: [sign_matrix(m - 1, q), sign_matrix(m - 1, q)],
                    h: [hankel(s, 2, m - 1)?, hankel(s, 1, m - 1)?],
                }
            }
            Parity::Odd => Kernel {
                s: [symmetrizer(&split.g.shift()), symmetrizer(&split.g)],
                j: [sign_matrix(m, q), sign_matrix(m - 1, q)],
                h: [hankel(s, 1, m)?, hankel(s, 2, m - 1)?],
            },
        })
    }

    fn block(&self, k: usize) -> Matrix<T> {
        let js = &self.j[k] * &self.s[k];
        &(&js.conj_transpose() * &self.h[k]) * &js
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BezoutForms<T> {
    /// Even-power form.
    pub g1: Matrix<T>,
    /// Odd-power form.
    pub g2: Matrix<T>,
    /// `2(G1 + G2)`.
    pub f: Matrix<T>,
}

fn embed<T: Scalar>(k: &Matrix<T>, n: usize, q: usize, offset: usize) -> Matrix<T> {
    let mut out = Matrix::zeros(n * q, n * q);
    let nb = k.rows() / q;
    for a in 0..nb {
        for b in 0..nb {
            out.set_block(2 * a + offset, 2 * b + offset, &k.block(a, b, q));
        }
    }
    out
}

/// Factorized forms without the Condition C gate.
pub fn factorized_forms_unchecked<T: Scalar>(f: &MatrixPoly<T>) -> Result<BezoutForms<T>> {
    let s = markov_of(f)?;
    let k = Kernel::new(f, &s)?;
    let (n, q) = (f.degree(), f.q());
    let g1 = embed(&k.block(0), n, q, 0);
    let g2 = -embed(&k.block(1), n, q, 1);
    let two = T::from_i64(2);
    let f = (&g1 + &g2).scale(&two);
    Ok(BezoutForms { g1, g2, f })
}

fn require_condition_c<T: Scalar>(f: &MatrixPoly<T>, tol: f64) -> Result<()> {
    match condition_c(f, tol) {
        None => Ok(()),
        Some(ConditionCViolation { odd, even, .. }) => Err(Error::CertificateUnavailable(format!(
            "Condition C fails for the coefficient pair (A{odd}, A{even})"
        ))),
    }
}

pub fn factorized_forms<T: Scalar>(f: &MatrixPoly<T>, tol: f64) -> Result<BezoutForms<T>> {
    require_condition_c(f, tol)?;
    factorized_forms_unchecked(f)
}

/// Block permutation sending power `p` to row block `p/2` (even `p`) or
/// `⌈n/2⌉ + p/2` (odd `p`).
pub fn interleave_permutation<T: Scalar>(n: usize, q: usize) -> Matrix<T> {
    let ev = n.div_ceil(2);
    let mut t = Matrix::zeros(n * q, n * q);
    for p in 0..n {
        let r = if p % 2 == 0 { p / 2 } else { ev + p / 2 };
        t.set_block(r, p, &Matrix::identity(q));
    }
    t
}

/// `𝒥 = diag(J̃_{⌈n/2⌉−1}, J̃_{⌊n/2⌋−1})`.
pub fn stacked_sign<T: Scalar>(n: usize, q: usize) -> Matrix<T> {
    let (ev, od) = (n.div_ceil(2), n / 2);
    let mut parts = vec![sign_matrix(ev - 1, q)];
    if od > 0 {
        parts.push(sign_matrix(od - 1, q));
    }
    Matrix::block_diag(&parts)
}

/// Checks `𝒥·𝒯·V(y) = (F_0(y); F_1(y))` for `V = (I, yI, …, y^{n−1}I)`, with
/// `F_0 = ((−1)^k y^{2k})`, `F_1 = ((−1)^k y^{2k+1})`, and that `𝒯` is a permutation.
pub fn permutation_identity_holds<T: Scalar>(n: usize, q: usize) -> bool {
    let t = interleave_permutation::<T>(n, q);
    if &t * &t.transpose() != Matrix::identity(n * q) {
        return false;
    }
    let v = MatrixPoly::from_ascending(
        (0..n)
            .map(|p| {
                let mut c = Matrix::zeros(n * q, q);
                c.set_block(p, 0, &Matrix::identity(q));
                c
            })
            .collect(),
    );
    let lhs = &MatrixPoly::constant(&stacked_sign::<T>(n, q) * &t) * &v;
    let ev = n.div_ceil(2);
    let mut rhs = vec![Matrix::zeros(n * q, q); n];
    for (p, c) in rhs.iter_mut().enumerate() {
        let k = p / 2;
        let row = if p % 2 == 0 { k } else { ev + k };
        let sgn = if k % 2 == 0 { T::one() } else { -T::one() };
        c.set_block(row, 0, &Matrix::identity(q).scale(&sgn));
    }
    lhs == MatrixPoly::from_ascending(rhs)
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityCertificate<T> {
    /// `(1/i)·B` for the quadruple built from `L(λ) = f(iλ)`.
    pub matrix: Matrix<T>,
    pub pd: bool,
    pub leading_minors: Vec<T>,
    /// The same matrix from the divided-difference oracle agrees.
    pub oracle_agrees: bool,
}

/// `(1/i)·Bez(L1*, L1, L*, L)` with `L(λ) = f(iλ)`, `L1(λ) = L(−λ)`, by brute force.
pub fn certificate_oracle<T: Scalar>(f: &MatrixPoly<T>, tol: f64) -> Result<Matrix<T>> {
    let l = f.scale_arg(&T::i());
    let l1 = l.reflect();
    let b = bezoutian_oracle(&l1.star(), &l1, &l.star(), &l, tol)?;
    Ok(b.scale(&-T::i()))
}

/// `2·Φ*·diag(H_a, H_b)·Φ` with `Φ = diag(J̃S₁, J̃S₂)·𝒥·𝒯`.
pub fn certificate_matrix<T: Scalar>(f: &MatrixPoly<T>, s: &MomentSequence<T>) -> Result<Matrix<T>> {
    let k = Kernel::new(f, s)?;
    let (n, q) = (f.degree(), f.q());
    let js = Matrix::block_diag(&[&k.j[0] * &k.s[0], &k.j[1] * &k.s[1]]);
    let phi = &(&js * &stacked_sign::<T>(n, q)) * &interleave_permutation::<T>(n, q);
    let w = Matrix::block_diag(&[k.h[0].clone(), k.h[1].clone()]);
    Ok((&(&phi.conj_transpose() * &w) * &phi).scale(&T::from_i64(2)))
}

pub fn stability_certificate<T: Scalar>(f: &MatrixPoly<T>, tol: f64) -> Result<StabilityCertificate<T>> {
    let report = classify(f, tol)?;
    if !report.is_htm {
        return Err(Error::NotHtm("Hankel test fails".into()));
    }
    require_condition_c(f, tol)?;
    let matrix = certificate_matrix(f, &report.markov)?;
    let oracle_agrees = matrix.approx_eq(&certificate_oracle(f, tol)?, tol);
    if !oracle_agrees {
        return Err(Error::Internal("certificate differs from the Bezoutian oracle".into()));
    }
    let pd = matrix.is_positive_definite(tol)?;
    if !pd {
        return Err(Error::Internal("certificate of an HTM polynomial is not positive definite".into()));
    }
    let leading_minors = matrix.leading_minors(tol);
    Ok(StabilityCertificate { matrix, pd, leading_minors, oracle_agrees })
}

/// `(B(xg, h), B(g, h))` for odd parity or `(B(xg, h), B(g, h))` for even,
/// from the factorized blocks: the first positive, the second negative definite.
pub fn bezout_blocks<T: Scalar>(f: &MatrixPoly<T>, tol: f64) -> Result<(Matrix<T>, Matrix<T>)> {
    let report = classify(f, tol)?;
    if !report.is_htm {
        return Err(Error::NotHtm("Hankel test fails".into()));
    }
    require_condition_c(f, tol)?;
    let k = Kernel::new(f, &report.markov)?;
    let (pos, neg) = (k.block(0), -k.block(1));
    if !pos.is_positive_definite(tol)? || !(-neg.clone()).is_positive_definite(tol)? {
        return Err(Error::Internal("Bezout blocks are not sign definite".into()));
    }
    Ok((pos, neg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int_matrix;
    use crate::poly::scalar_poly;
    use crate::scalar::GaussRat;

    #[test]
    fn symmetrizer_shapes() {
        let p = scalar_poly(&[1, 2, 3]);
        assert_eq!(symmetrizer(&p), int_matrix(&[&[2, 1], &[1, 0]]));
        assert_eq!(symmetrizer(&scalar_poly(&[5, 7])), int_matrix(&[&[5]]));
    }

    #[test]
    fn oracle_scalar_cases() {
        let one = scalar_poly(&[1]);
        let p = scalar_poly(&[1, 1]);
        let (g, _) = divided_difference(&one, &p, &one, &p);
        assert!(g.is_zero());
        let qp = scalar_poly(&[1, -1]);
        let b = bezoutian_oracle(&qp, &p, &p, &qp, 0.0).unwrap();
        assert_eq!(b, int_matrix(&[&[2]]));
    }

    #[test]
    fn scalar_forms_and_certificate() {
        let f = scalar_poly(&[1, 2, 1]);
        let forms = factorized_forms(&f, 0.0).unwrap();
        let [a, b, c, d] = f_quadruple(&f);
        assert_eq!(bezoutian_oracle(&a, &b, &c, &d, 0.0).unwrap(), forms.f);
        let cert = stability_certificate(&f, 0.0).unwrap();
        assert!(cert.pd);
        assert_eq!(cert.matrix.rows(), 2);
        let (p, n) = bezout_blocks(&f, 0.0).unwrap();
        assert_eq!(p.get(0, 0), &GaussRat::from_i64(2));
        assert_eq!(n.get(0, 0), &GaussRat::from_i64(-2));
    }

    #[test]
    fn permutation_identity_small() {
        for n in 1..=9 {
            assert!(permutation_identity_holds::<GaussRat>(n, 2), "n = {n}");
        }
    }

    #[test]
    fn non_hermitian_linear_is_not_integrable() {
        let a = int_matrix(&[&[1, 2], &[0, 1]]);
        let f = MatrixPoly::from_leading(vec![Matrix::identity(2), a]);
        let [m1, l1, m, l] = f_quadruple(&f);
        assert!(bezoutian_oracle(&m1, &l1, &m, &l, 0.0).is_err());
        assert!(!divided_difference(&m1, &l1, &m, &l).1.is_zero());
    }
}
