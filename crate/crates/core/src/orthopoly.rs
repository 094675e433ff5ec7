//! Orthogonal matrix polynomials on `[0, ∞)`, their second-kind companions,
//! Dyukarev–Stieltjes parameters and the resolvent matrix.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::moments::{hankel, schur_complement, y_row, Kind, MomentSequence};
use crate::poly::MatrixPoly;
use crate::scalar::Scalar;

/// Block shift `T_j`: identity blocks on the first block subdiagonal.
pub fn shift_matrix<T: Scalar>(j: usize, q: usize) -> Matrix<T> {
    let mut t = Matrix::zeros((j + 1) * q, (j + 1) * q);
    for a in 1..=j {
        t.set_block(a, a - 1, &Matrix::identity(q));
    }
    t
}

/// `R_j(z) = (I − zT_j)⁻¹`, lower block triangular with `z^{a−b} I` at `(a, b)`.
pub fn r_matrix<T: Scalar>(j: usize, q: usize) -> MatrixPoly<T> {
    let n = (j + 1) * q;
    MatrixPoly::from_ascending(
        (0..=j)
            .map(|k| {
                let mut c = Matrix::zeros(n, n);
                for b in 0..=j - k {
                    c.set_block(b + k, b, &Matrix::identity(q));
                }
                c
            })
            .collect(),
    )
}

/// The block row `(−Y*_{kind,j} H⁻¹_{kind,j−1}, I)`.
fn leading_row<T: Scalar>(s: &MomentSequence<T>, kind: Kind, j: usize) -> Result<Matrix<T>> {
    let q = s.q();
    let y = y_row(s, kind, j)?;
    let h = hankel(s, kind, j - 1)?;
    let c = y.right_div(&h).map_err(|_| Error::SingularAt { what: "block Hankel", index: j - 1 })?;
    Ok(Matrix::hstack(&[-c, Matrix::identity(q)]))
}

/// `(P_{kind,j}, Q_{kind,j})` built as `row · R_j(z) · v_j` and `−row · R_j(z) · u_{kind,j}`.
pub fn ortho_pair<T: Scalar>(s: &MomentSequence<T>, kind: Kind, j: usize) -> Result<(MatrixPoly<T>, MatrixPoly<T>)> {
    let q = s.q();
    if j == 0 {
        if s.is_empty() {
            return Err(Error::Length { needed: 1, have: 0 });
        }
        let second = if kind == 1 { Matrix::zeros(q, q) } else { s.get(0).clone() };
        return Ok((MatrixPoly::identity(q), MatrixPoly::constant(second)));
    }
    let row = MatrixPoly::constant(leading_row(s, kind, j)?);
    let r = r_matrix::<T>(j, q);
    let mut v = Matrix::zeros((j + 1) * q, q);
    v.set_block(0, 0, &Matrix::identity(q));
    let mut u = Matrix::zeros((j + 1) * q, q);
    match kind {
        1 => {
            for b in 1..=j {
                u.set_block(b, 0, &-s.get(b - 1).clone());
            }
        }
        _ => {
            for b in 0..=j {
                u.set_block(b, 0, &-s.get(b).clone());
            }
        }
    }
    let rr = &row * &r;
    let p = &rr * &MatrixPoly::constant(v);
    let qp = -(&rr * &MatrixPoly::constant(u));
    Ok((p, qp))
}

/// The four polynomial families up to a common depth, with Schur complements.
#[derive(Clone, Debug)]
pub struct OrthoSystem<T> {
    pub p1: Vec<MatrixPoly<T>>,
    pub q1: Vec<MatrixPoly<T>>,
    pub p2: Vec<MatrixPoly<T>>,
    pub q2: Vec<MatrixPoly<T>>,
    pub schur1: Vec<Matrix<T>>,
    pub schur2: Vec<Matrix<T>>,
}

/// Builds all families for `j = 0..=up_to`; needs `s_0..s_{2·up_to+1}` for
/// the second Schur complement family, `s_{2·up_to}` for everything else.
pub fn build_ortho<T: Scalar>(s: &MomentSequence<T>, up_to: usize) -> Result<OrthoSystem<T>> {
    let mut sys = OrthoSystem { p1: vec![], q1: vec![], p2: vec![], q2: vec![], schur1: vec![], schur2: vec![] };
    for j in 0..=up_to {
        let (p1, q1) = ortho_pair(s, 1, j)?;
        let (p2, q2) = ortho_pair(s, 2, j)?;
        sys.p1.push(p1);
        sys.q1.push(q1);
        sys.p2.push(p2);
        sys.q2.push(q2);
        sys.schur1.push(schur_complement(s, 1, j)?);
        if 2 * j + 1 < s.len() {
            sys.schur2.push(schur_complement(s, 2, j)?);
        }
    }
    Ok(sys)
}

/// Outcome of the algebraic identities at depth `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    /// `P_{1,j}·Q*_{2,j} − z·Q_{1,j}·P*_{2,j} = Ĥ_{1,j}`.
    pub mixed: bool,
    /// `P_{k,j}·Q*_{k,j} = Q_{k,j}·P*_{k,j}` for `k = 1, 2`.
    pub symmetric: [bool; 2],
}

impl IdentityCheck {
    pub fn all(&self) -> bool {
        self.mixed && self.symmetric.iter().all(|&b| b)
    }
}

pub fn check_fundamental_identities<T: Scalar>(sys: &OrthoSystem<T>, j: usize, tol: f64) -> IdentityCheck {
    let (p1, q1, p2, q2) = (&sys.p1[j], &sys.q1[j], &sys.p2[j], &sys.q2[j]);
    let lhs = &(p1 * &q2.star()) - &(q1 * &p2.star()).shift();
    let mixed = lhs.approx_eq(&MatrixPoly::constant(sys.schur1[j].clone()), tol);
    let sym = |p: &MatrixPoly<T>, q: &MatrixPoly<T>| (p * &q.star()).approx_eq(&(q * &p.star()), tol);
    IdentityCheck { mixed, symmetric: [sym(p1, q1), sym(p2, q2)] }
}

/// Dyukarev–Stieltjes parameters: every `M_j` with `H_{1,j}` available and
/// every `L_j` with `H_{2,j}` available.
#[derive(Clone, Debug, PartialEq)]
pub struct DsParameters<T> {
    pub m: Vec<Matrix<T>>,
    pub l: Vec<Matrix<T>>,
}

pub fn ds_parameters<T: Scalar>(s: &MomentSequence<T>) -> Result<DsParameters<T>> {
    let q = s.q();
    let mut m = Vec::new();
    let mut l = Vec::new();
    let mut prev: Option<Matrix<T>> = None;
    let mut j = 0;
    while 2 * j < s.len() {
        let h = hankel(s, 1, j)?;
        let mut v = Matrix::zeros((j + 1) * q, q);
        v.set_block(0, 0, &Matrix::identity(q));
        let x = h.solve(&v).map_err(|_| Error::SingularAt { what: "H1", index: j })?;
        let cur = x.sub_matrix(0, 0, q, q);
        m.push(match &prev {
            Some(p) => &cur - p,
            None => cur.clone(),
        });
        prev = Some(cur);
        j += 1;
    }
    prev = None;
    j = 0;
    while 2 * j + 1 < s.len() {
        let h = hankel(s, 2, j)?;
        let u = Matrix::vstack(&s.as_slice()[..=j]);
        let x = h.solve(&u).map_err(|_| Error::SingularAt { what: "H2", index: j })?;
        let cur = &u.conj_transpose() * &x;
        l.push(match &prev {
            Some(p) => &cur - p,
            None => cur.clone(),
        });
        prev = Some(cur);
        j += 1;
    }
    Ok(DsParameters { m, l })
}

fn at_zero_inv<T: Scalar>(p: &MatrixPoly<T>, what: &'static str, index: usize) -> Result<Matrix<T>> {
    p.coeff(0).inverse().map_err(|_| Error::SingularAt { what, index })
}

/// Resolvent `U^{(2m+k)}` as a `2q × 2q` polynomial.
pub fn resolvent<T: Scalar>(s: &MomentSequence<T>, m: usize, k: usize) -> Result<MatrixPoly<T>> {
    let (p1, q1) = ortho_pair(s, 1, m + k)?;
    let (p2, q2) = ortho_pair(s, 2, m)?;
    let n2 = at_zero_inv(&q2, "Q2(0)", m)?.conj_transpose();
    let n1 = at_zero_inv(&p1, "P1(0)", m + k)?.conj_transpose();
    let a = q2.star().rmul(&n2);
    let b = -q1.star().rmul(&n1);
    let c = -p2.star().rmul(&n2).shift();
    let d = p1.star().rmul(&n1);
    Ok(MatrixPoly::from_block_grid(&[vec![&a, &b], vec![&c, &d]]))
}

/// Inverse of [`resolvent`].
pub fn resolvent_inverse<T: Scalar>(s: &MomentSequence<T>, m: usize, k: usize) -> Result<MatrixPoly<T>> {
    let (p1, q1) = ortho_pair(s, 1, m + k)?;
    let (p2, q2) = ortho_pair(s, 2, m)?;
    let n1 = at_zero_inv(&p1, "P1(0)", m + k)?;
    let n2 = at_zero_inv(&q2, "Q2(0)", m)?;
    let a = p1.lmul(&n1);
    let b = q1.lmul(&n1);
    let c = p2.lmul(&n2).shift();
    let d = q2.lmul(&n2);
    Ok(MatrixPoly::from_block_grid(&[vec![&a, &b], vec![&c, &d]]))
}

/// `U · U⁻¹ = I` as a polynomial identity.
pub fn check_resolvent_inverse<T: Scalar>(s: &MomentSequence<T>, m: usize, k: usize, tol: f64) -> Result<bool> {
    let u = resolvent(s, m, k)?;
    let ui = resolvent_inverse(s, m, k)?;
    let id = MatrixPoly::identity(2 * s.q());
    Ok((&u * &ui).approx_eq(&id, tol) && (&ui * &u).approx_eq(&id, tol))
}

/// `[[I,0],[−zM_0,I]]·[[I,L_0],[0,I]]·…·[[I,L_{m−1}],[0,I]]·[[I,0],[−zM_m,I]]`.
pub fn elementary_product<T: Scalar>(ms: &[Matrix<T>], ls: &[Matrix<T>], m: usize) -> MatrixPoly<T> {
    let q = ms[0].rows();
    let zero = Matrix::<T>::zeros(q, q);
    let id = Matrix::<T>::identity(q);
    let lower = |mk: &Matrix<T>| {
        MatrixPoly::from_ascending(vec![
            Matrix::identity(2 * q),
            Matrix::from_blocks(&[vec![zero.clone(), zero.clone()], vec![-mk.clone(), zero.clone()]]),
        ])
    };
    let upper = |lk: &Matrix<T>| {
        MatrixPoly::constant(Matrix::from_blocks(&[vec![id.clone(), lk.clone()], vec![zero.clone(), id.clone()]]))
    };
    let mut acc = MatrixPoly::identity(2 * q);
    for j in 0..m {
        acc = &(&acc * &lower(&ms[j])) * &upper(&ls[j]);
    }
    &acc * &lower(&ms[m])
}

/// Checks `U^{(2m)}` against the elementary factorization; returns the
/// difference polynomial when it fails.
pub fn check_factorization<T: Scalar>(
    s: &MomentSequence<T>,
    m: usize,
    tol: f64,
) -> Result<std::result::Result<(), MatrixPoly<T>>> {
    let ds = ds_parameters(s)?;
    if ds.m.len() < m + 1 || ds.l.len() < m {
        return Err(Error::Length { needed: 2 * m + 1, have: s.len() });
    }
    let u = resolvent(s, m, 0)?;
    let prod = elementary_product(&ds.m, &ds.l, m);
    if u.approx_eq(&prod, tol) {
        Ok(Ok(()))
    } else {
        Ok(Err(&u - &prod))
    }
}

/// Values of the two extremal solutions at a point off `[0, ∞)`:
/// `(−Q*_{2,m}(z)·(z P*_{2,m}(z))⁻¹, −Q*_{1,m}(z)·P*_{1,m}(z)⁻¹)`.
pub fn extremal_values<T: Scalar>(s: &MomentSequence<T>, m: usize, z: &T) -> Result<(Matrix<T>, Matrix<T>)> {
    let (p1, q1) = ortho_pair(s, 1, m)?;
    let (p2, q2) = ortho_pair(s, 2, m)?;
    let den2 = p2.star().eval(z).scale(z);
    let a = -q2.star().eval(z).right_div(&den2)?;
    let b = -q1.star().eval(z).right_div(&p1.star().eval(z))?;
    Ok((a, b))
}

/// The same two values through the nested fractions in `M_k`, `L_k`.
pub fn extremal_values_cf<T: Scalar>(s: &MomentSequence<T>, m: usize, z: &T) -> Result<(Matrix<T>, Matrix<T>)> {
    let ds = ds_parameters(s)?;
    if m == 0 || ds.m.len() < m + 1 || ds.l.len() < m {
        return Err(Error::Length { needed: 2 * m + 1, have: s.len() });
    }
    let inv = |x: &Matrix<T>, level: usize| x.inverse().map_err(|_| Error::Evaluation { level });
    let mz = |k: usize| ds.m[k].scale(&-z.clone());
    let zinv = z.inv().ok_or(Error::Evaluation { level: 2 * m })?;
    // First: innermost L_{m−1} − z⁻¹ M_m⁻¹.
    let mut x = inv(&(&ds.l[m - 1] - &inv(&ds.m[m], 2 * m)?.scale(&zinv)), 2 * m - 1)?;
    for k in (0..m).rev() {
        x = inv(&(&mz(k) + &x), 2 * k)?;
        if k > 0 {
            x = inv(&(&ds.l[k - 1] + &x), 2 * k - 1)?;
        }
    }
    let first = x;
    // Second: innermost −z M_{m−1} + L_{m−1}⁻¹.
    let mut x = inv(&(&mz(m - 1) + &inv(&ds.l[m - 1], 2 * m - 1)?), 2 * m - 2)?;
    for k in (0..m - 1).rev() {
        x = inv(&(&ds.l[k] + &x), 2 * k + 1)?;
        x = inv(&(&mz(k) + &x), 2 * k)?;
    }
    Ok((first, x))
}
