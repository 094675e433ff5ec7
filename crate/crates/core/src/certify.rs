//! Coprimeness witnesses, the root oracle on `det f` and the Hurwitz verdict.

use num_complex::Complex64;

use crate::bezout::stability_certificate;
use crate::error::{Error, Result};
use crate::htm::{classify, normalize};
use crate::matrix::Matrix;
use crate::moments::{extend_moment, schur_complement, MomentSequence};
use crate::orthopoly::{ortho_pair, resolvent_inverse};
use crate::poly::{MatrixPoly, Parity, ScalarPoly};
use crate::scalar::Scalar;

fn sign<T: Scalar>(e: usize) -> T {
    if e.is_multiple_of(2) { T::one() } else { -T::one() }
}

/// `X·h + Y·(z g) = I` (odd) or `X·h + Y·g = I` (even).
#[derive(Clone, Debug, PartialEq)]
pub struct BezoutWitness<T> {
    pub parity: Parity,
    pub x: MatrixPoly<T>,
    pub y: MatrixPoly<T>,
    pub residual: MatrixPoly<T>,
}

impl<T: Scalar> BezoutWitness<T> {
    pub fn is_exact(&self) -> bool {
        self.residual == MatrixPoly::identity(self.x.rows())
    }
}

/// Markov parameters at the depth the witness needs: the even case extends
/// `s_0..s_{2m−1}` by the canonical `s_{2m}`.
fn witness_moments<T: Scalar>(f: &MatrixPoly<T>, tol: f64) -> Result<MomentSequence<T>> {
    let report = classify(f, tol)?;
    if !report.is_htm {
        return Err(Error::NotHtm("Hankel test fails".into()));
    }
    let mut s = report.markov;
    if f.degree().is_multiple_of(2) {
        let next = extend_moment(&s)?;
        s.push(next);
    }
    Ok(s)
}

pub fn bezout_witness<T: Scalar>(f: &MatrixPoly<T>, tol: f64) -> Result<BezoutWitness<T>> {
    let s = witness_moments(f, tol)?;
    let split = f.split();
    let m = split.m();
    let a0_inv = f.leading().inverse()?;
    let hh = schur_complement(&s, 1, m)?.inverse().map_err(|_| Error::SingularAt { what: "Ĥ1", index: m })?;
    let left = &a0_inv * &hh;
    let (x, y, second) = match split.parity {
        Parity::Odd => {
            let (p1, q1) = ortho_pair(&s, 1, m)?;
            let c = left.scale(&sign(m));
            (p1.reflect().lmul(&c), q1.reflect().lmul(&c), split.g.shift())
        }
        Parity::Even => {
            let (p2, q2) = ortho_pair(&s, 2, m)?;
            let x = q2.reflect().lmul(&left.scale(&sign(m)));
            let y = p2.reflect().lmul(&left.scale(&sign(m + 1))).shift();
            (x, y, split.g.clone())
        }
    };
    let residual = &(&x * &split.h) + &(&y * &second);
    Ok(BezoutWitness { parity: split.parity, x, y, residual })
}

/// Unimodular reduction of the stacked pair `(h; z g)` (odd) or `(h; g)`
/// (even) to `(I; 0)` through the reflected inverse resolvent.
pub fn unimodular_reduction<T: Scalar>(f: &MatrixPoly<T>, tol: f64) -> Result<MatrixPoly<T>> {
    let f = normalize(f)?;
    let s = witness_moments(&f, tol)?;
    let split = f.split();
    let m = split.m();
    let q = f.q();
    let (p1, _) = ortho_pair(&s, 1, m)?;
    let (_, q2) = ortho_pair(&s, 2, m)?;
    let hh_inv = schur_complement(&s, 1, m)?.inverse()?;
    let ui = resolvent_inverse(&s, m, 0)?.reflect();
    let (id, zero) = (Matrix::<T>::identity(q), Matrix::<T>::zeros(q, q));
    let sg = sign::<T>(m);
    let (left, right, col) = match split.parity {
        Parity::Odd => (
            Matrix::from_blocks(&[vec![&hh_inv * &p1.coeff(0), zero.clone()], vec![zero.clone(), id.clone()]]),
            Matrix::identity(2 * q).scale(&sg),
            MatrixPoly::from_block_grid(&[vec![&split.h], vec![&split.g.shift()]]),
        ),
        Parity::Even => (
            Matrix::from_blocks(&[vec![zero.clone(), &hh_inv * &q2.coeff(0)], vec![id.clone(), zero.clone()]]),
            Matrix::from_blocks(&[vec![zero.clone(), id.scale(&sg)], vec![id.scale(&sg), zero.clone()]]),
            MatrixPoly::from_block_grid(&[vec![&split.h], vec![&split.g]]),
        ),
    };
    let xk = ui.lmul(&left).rmul(&right);
    Ok(&xk * &col)
}

/// True when [`unimodular_reduction`] yields exactly `(I; 0)`.
pub fn reduction_is_unit<T: Scalar>(f: &MatrixPoly<T>, tol: f64) -> Result<bool> {
    let q = f.q();
    let target = MatrixPoly::constant(Matrix::vstack(&[Matrix::identity(q), Matrix::zeros(q, q)]));
    Ok(unimodular_reduction(f, tol)?.approx_eq(&target, tol))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub z: Complex64,
    /// `|p(z)| / Σ|a_k||z|^k`.
    pub residual: f64,
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        d = d * z + p;
        p = p * z + a;
    }
    (p, d)
}

fn backward_residual(c: &[Complex64], z: Complex64) -> f64 {
    let (p, _) = horner(c, z);
    let r = z.norm();
    let scale: f64 = c.iter().rev().fold(0.0, |acc, a| acc * r + a.norm());
    if scale == 0.0 { 0.0 } else { p.norm() / scale }
}

/// All roots of a scalar polynomial by Aberth–Ehrlich iteration.
pub fn roots<T: Scalar>(p: &ScalarPoly<T>, tol: f64) -> Result<Vec<Root>> {
    let c: Vec<Complex64> = p.to_c64().coeffs().to_vec();
    let n = p.degree();
    if n == 0 {
        return Err(Error::Precondition("polynomial has no roots".into()));
    }
    let lead = c[n];
    if lead.norm() == 0.0 {
        return Err(Error::Precondition("leading coefficient is zero".into()));
    }
    let c: Vec<Complex64> = c.iter().map(|a| a / lead).collect();
    // Zero roots are exact; deflate them.
    let zeros = c.iter().take_while(|a| a.norm() == 0.0).count();
    let c = c[zeros..].to_vec();
    let d = n - zeros;
    let mut z: Vec<Complex64> = Vec::with_capacity(d);
    if d > 0 {
        let radius = c.iter().take(d).map(|a| a.norm()).fold(0.0f64, f64::max).max(1e-300);
        let r0 = c[0].norm().powf(1.0 / d as f64).clamp(1e-8, 1.0 + radius);
        for k in 0..d {
            let th = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4;
            z.push(Complex64::from_polar(r0, th));
        }
    }
    const MAX_ITER: usize = 1000;
    let mut converged = vec![false; d];
    for _ in 0..MAX_ITER {
        if converged.iter().all(|&b| b) {
            break;
        }
        for i in 0..d {
            if converged[i] {
                continue;
            }
            let (pv, dv) = horner(&c, z[i]);
            if pv.norm() == 0.0 {
                converged[i] = true;
                continue;
            }
            let ratio = pv / dv;
            let sum: Complex64 = (0..d).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !w.is_finite() {
                continue;
            }
            z[i] -= w;
            if w.norm() <= 1e-15 * z[i].norm().max(1e-300) {
                converged[i] = true;
            }
        }
    }
    let mut out: Vec<Root> = vec![Root { z: Complex64::new(0.0, 0.0), residual: 0.0 }; zeros];
    out.extend(z.iter().map(|&r| Root { z: r, residual: backward_residual(&c, r) }));
    let worst = out.iter().map(|r| r.residual).fold(0.0, f64::max);
    if worst > tol || !worst.is_finite() {
        return Err(Error::Numerical { iterations: MAX_ITER, residual: worst });
    }
    out.sort_by(|a, b| a.z.re.total_cmp(&b.z.re).then(a.z.im.total_cmp(&b.z.im)));
    Ok(out)
}

/// Inertia of `f(iλ)`: `plus` counts roots of `f` with `Re z < −margin`,
/// `minus` those with `Re z > margin`, `zero` the rest.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InertiaTriple {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

impl InertiaTriple {
    pub fn total(&self) -> usize {
        self.plus + self.minus + self.zero
    }
}

pub fn inertia(roots: &[Root], margin: f64) -> InertiaTriple {
    let mut t = InertiaTriple { plus: 0, minus: 0, zero: 0 };
    for r in roots {
        if r.z.re < -margin {
            t.plus += 1;
        } else if r.z.re > margin {
            t.minus += 1;
        } else {
            t.zero += 1;
        }
    }
    t
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Bezoutian,
    RootOracle,
}

impl Route {
    pub fn as_str(&self) -> &'static str {
        match self {
            Route::Bezoutian => "bezoutian",
            Route::RootOracle => "root_oracle",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Hurwitz,
    /// No root in the open right half-plane, some within the margin of the axis.
    Marginal,
    NotHurwitz,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Hurwitz => "hurwitz",
            Status::Marginal => "marginal",
            Status::NotHurwitz => "not_hurwitz",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerdictOptions {
    pub tol_root: f64,
    pub tol_pd: f64,
    pub margin: f64,
}

impl Default for VerdictOptions {
    fn default() -> Self {
        VerdictOptions { tol_root: 1e-9, tol_pd: 1e-9, margin: 1e-6 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityVerdict {
    pub hurwitz: bool,
    pub status: Status,
    pub route: Route,
    pub roots: Vec<Root>,
    pub inertia: InertiaTriple,
    /// Reason the certificate was not used, when the route is the oracle.
    pub certificate_note: Option<String>,
}

/// Root-oracle verdict, upgraded to the Bezoutian route when an exact
/// certificate exists; the two must agree.
pub fn hurwitz_verdict<T: Scalar>(f: &MatrixPoly<T>, opts: &VerdictOptions) -> Result<StabilityVerdict> {
    if f.leading().det().near_zero(opts.tol_pd) {
        return Err(Error::Precondition("det A_0 = 0".into()));
    }
    let det = f.det_poly();
    let rts = roots(&det, opts.tol_root)?;
    let inertia = inertia(&rts, opts.margin);
    let status = if inertia.minus > 0 {
        Status::NotHurwitz
    } else if inertia.zero > 0 {
        Status::Marginal
    } else {
        Status::Hurwitz
    };
    let hurwitz = status == Status::Hurwitz;
    let certificate = if T::EXACT {
        stability_certificate(&f.map(Scalar::to_gauss), 0.0).map(|_| ())
    } else {
        Err(Error::CertificateUnavailable("the certificate needs the exact backend".into()))
    };
    let (route, note) = match certificate {
        Ok(()) => {
            if !hurwitz {
                return Err(Error::Internal(
                    "positive definite certificate but the root oracle does not confirm Hurwitz".into(),
                ));
            }
            (Route::Bezoutian, None)
        }
        Err(e @ (Error::NotHtm(_) | Error::CertificateUnavailable(_))) => (Route::RootOracle, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    Ok(StabilityVerdict { hurwitz, status, route, roots: rts, inertia, certificate_note: note })
}

/// `det A_j` for every coefficient.
pub fn coefficient_determinants<T: Scalar>(f: &MatrixPoly<T>) -> Vec<T> {
    f.leading_first().iter().map(Matrix::det).collect()
}
