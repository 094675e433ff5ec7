//! Random Stieltjes-positive instances and the empirical scan of the
//! conjecture that HTM coefficients have positive determinants.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certify::coefficient_determinants;
use crate::completion::{complete, CompletionResult};
use crate::error::Result;
use crate::htm::reconstruct;
use crate::matrix::{ExactMatrix, Matrix};
use crate::moments::{lower_bound, ExactMoments, MomentSequence};
use crate::parallel;
use crate::poly::{ExactPoly, MatrixPoly};
use crate::scalar::{GaussRat, Scalar};

/// Independent stream for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn small_hermitian(rng: &mut impl Rng, q: usize, complex: bool) -> ExactMatrix {
    let den = 8 * q as i64;
    let mut r = Matrix::zeros(q, q);
    for i in 0..q {
        r.set(i, i, GaussRat::ratio(rng.random_range(-2..=2), den));
        for j in i + 1..q {
            let im = if complex { rng.random_range(-2..=2) } else { 0 };
            let v = GaussRat::cplx((rng.random_range(-2..=2), den), (im, den));
            r.set(j, i, v.conj());
            r.set(i, j, v);
        }
    }
    r
}

/// `s_k = (lower bound of s_k) + D_k + R_k` with `D_k` diagonal, entries in
/// `2^k·{1, 2, 3}`, and `R_k` a small Hermitian perturbation; every Schur
/// complement is then positive definite.
pub fn random_stieltjes_moments(rng: &mut impl Rng, q: usize, count: usize, complex: bool) -> ExactMoments {
    let mut s = MomentSequence::new(q, vec![]).expect("empty sequence");
    for k in 0..count {
        let (kind, j) = if k % 2 == 0 { (1, k / 2) } else { (2, k / 2) };
        let lb = lower_bound(&s, kind, j).expect("positive prefix");
        let d = Matrix::diag((0..q).map(|_| GaussRat::from_i64(rng.random_range(1..=3) << k)).collect());
        s.push(&(&lb + &d) + &small_hermitian(rng, q, complex));
    }
    s
}

/// Monic HTM polynomial of degree `n` from random moments.
pub fn random_htm(rng: &mut impl Rng, q: usize, n: usize, complex: bool) -> ExactPoly {
    let s = random_stieltjes_moments(rng, q, n, complex);
    reconstruct(&s, n, 0.0).expect("random moments are Stieltjes positive")
}

fn unitaries() -> Vec<ExactMatrix> {
    let g = |a: i64, b: i64, d: i64| GaussRat::cplx((a, d), (b, d));
    let m = |e: [GaussRat; 4]| {
        let [a, b, c, d] = e;
        Matrix::from_rows(vec![vec![a, b], vec![c, d]])
    };
    vec![
        Matrix::identity(2),
        m([g(3, 0, 5), g(0, 4, 5), g(0, 4, 5), g(3, 0, 5)]),
        m([g(3, 0, 5), g(-4, 0, 5), g(4, 0, 5), g(3, 0, 5)]),
        m([g(5, 0, 13), g(0, 12, 13), g(0, 12, 13), g(5, 0, 13)]),
    ]
}

/// HTM polynomial satisfying Condition C: `A_k = U·diag(a_k^{(1)}, …)·U*`
/// from independent scalar HTM polynomials and a Gaussian-rational unitary `U`.
pub fn random_condition_c_htm(rng: &mut impl Rng, q: usize, n: usize) -> ExactPoly {
    let scalars: Vec<Vec<GaussRat>> =
        (0..q).map(|_| random_htm(rng, 1, n, false).leading_first().iter().map(|c| c.get(0, 0).clone()).collect()).collect();
    let us = unitaries();
    let mut u = Matrix::identity(q);
    for b in 0..q / 2 {
        u.set_sub(2 * b, 2 * b, &us[rng.random_range(0..us.len())]);
    }
    let ustar = u.conj_transpose();
    let coeffs = (0..=n)
        .map(|k| &(&u * &Matrix::diag(scalars.iter().map(|c| c[k].clone()).collect())) * &ustar)
        .collect();
    MatrixPoly::from_leading(coeffs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Failure {
    /// Some `det A_j` has a nonzero imaginary part.
    NonReal,
    /// Every `det A_j` is real and some is `≤ 0`.
    NonPositive,
}

impl Failure {
    pub fn as_str(&self) -> &'static str {
        match self {
            Failure::NonReal => "nonreal",
            Failure::NonPositive => "nonpositive",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub trial: usize,
    pub failure: Failure,
    pub moments: Vec<Vec<Vec<String>>>,
    pub determinants: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub seed: u64,
    pub trials: usize,
    pub q: usize,
    pub n: usize,
    /// Moments with nonreal off-diagonal entries.
    pub complex: bool,
    pub counterexamples: Vec<Counterexample>,
    /// Smallest `|det A_j|` over all trials and coefficients.
    pub min_abs_det: f64,
}

struct Trial {
    dets: Vec<GaussRat>,
    moments: ExactMoments,
}

fn run_trial(seed: u64, trial: usize, q: usize, n: usize, complex: bool) -> Trial {
    let mut rng = trial_rng(seed, trial);
    let moments = random_stieltjes_moments(&mut rng, q, n, complex);
    let f = reconstruct(&moments, n, 0.0).expect("random moments are Stieltjes positive");
    Trial { dets: coefficient_determinants(&f), moments }
}

/// Evidence for the conjecture only: every trial reconstructs a random HTM
/// polynomial and tests `det A_j > 0` for all `j`.
pub fn conjecture_scan(trials: usize, q: usize, n: usize, seed: u64, complex: bool, parallel: bool) -> ScanReport {
    let results = parallel::map(trials, parallel, |t| run_trial(seed, t, q, n, complex));
    let mut counterexamples = Vec::new();
    let mut min_abs_det = f64::INFINITY;
    for (trial, r) in results.into_iter().enumerate() {
        for d in &r.dets {
            min_abs_det = min_abs_det.min(d.abs_f64());
        }
        if !r.dets.iter().all(|d| d.is_positive_real(0.0)) {
            let failure = if r.dets.iter().all(GaussRat::is_real) { Failure::NonPositive } else { Failure::NonReal };
            counterexamples.push(Counterexample {
                trial,
                failure,
                moments: r
                    .moments
                    .as_slice()
                    .iter()
                    .map(|m| m.row_vecs().iter().map(|row| row.iter().map(ToString::to_string).collect()).collect())
                    .collect(),
                determinants: r.dets.iter().map(ToString::to_string).collect(),
            });
        }
    }
    ScanReport { seed, trials, q, n, complex, counterexamples, min_abs_det }
}

/// A batch of random HTM instances, one per trial stream.
pub fn random_batch(count: usize, q: usize, n: usize, seed: u64, condition_c: bool, parallel: bool) -> Vec<ExactPoly> {
    parallel::map(count, parallel, |t| {
        let mut rng = trial_rng(seed, t);
        if condition_c { random_condition_c_htm(&mut rng, q, n) } else { random_htm(&mut rng, q, n, true) }
    })
}

/// Completes `P` with `b·s_j` seeds for every `b`.
pub fn b_sweep(
    p: &ExactPoly,
    base: &ExactMoments,
    bs: &[GaussRat],
    parallel: bool,
) -> Vec<Result<CompletionResult<GaussRat>>> {
    parallel::map_slice(bs, parallel, |b| {
        let seeds = MomentSequence::new(base.q(), base.as_slice().iter().map(|s| s.scale(b)).collect())?;
        complete(p, &seeds, 0.0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::htm::{classify, condition_c};
    use crate::moments::is_stieltjes_positive;

    #[test]
    fn random_moments_are_positive() {
        let mut rng = trial_rng(7, 0);
        for count in 1..=6 {
            let s = random_stieltjes_moments(&mut rng, 2, count, true);
            assert!(is_stieltjes_positive(&s, 0.0).unwrap());
        }
    }

    #[test]
    fn condition_c_instances() {
        let mut rng = trial_rng(11, 3);
        for n in 2..=4 {
            let f = random_condition_c_htm(&mut rng, 2, n);
            assert!(condition_c(&f, 0.0).is_none());
            assert!(classify(&f, 0.0).unwrap().is_htm);
        }
    }

    #[test]
    fn scan_is_deterministic() {
        let a = conjecture_scan(6, 2, 4, 42, true, false);
        let b = conjecture_scan(6, 2, 4, 42, true, true);
        assert_eq!(a, b);
        assert!(a.counterexamples.iter().all(|c| c.failure == Failure::NonReal));
    }
}
