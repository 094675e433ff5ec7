//! Hurwitz-type matrix (HTM) polynomials: classification through Markov
//! parameters and block Hankel positivity, reconstruction from moments,
//! Bezoutian stability certificates, coprimeness witnesses, an independent
//! root oracle, and completion of non-HTM polynomials.

pub mod bezout;
pub mod certify;
pub mod completion;
pub mod error;
pub mod htm;
pub mod io;
pub mod matrix;
pub mod moments;
pub mod orthopoly;
pub mod parallel;
pub mod poly;
pub mod scalar;
pub mod scan;

pub use error::{Error, Result};
pub use matrix::{ExactMatrix, Matrix};
pub use moments::{ExactMoments, MomentSequence};
pub use poly::{EvenOddSplit, ExactPoly, MatrixPoly, Parity, ScalarPoly};
pub use scalar::{GaussRat, Scalar};
pub use num_complex::Complex64;
