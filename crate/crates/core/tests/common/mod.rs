#![allow(dead_code)]

use htm_core::scalar::parse_complex;
use htm_core::{ExactMatrix, ExactMoments, ExactPoly, GaussRat, Matrix, MatrixPoly, MomentSequence};

pub fn m(rows: &[&[&str]]) -> ExactMatrix {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|t| parse_complex(t).unwrap()).collect()).collect())
}

pub fn id2() -> ExactMatrix {
    Matrix::identity(2)
}

pub fn moments(s: Vec<ExactMatrix>) -> ExactMoments {
    MomentSequence::new(s[0].rows(), s).unwrap()
}

pub fn r(num: i64, den: i64) -> GaussRat {
    GaussRat::ratio(num, den)
}

pub fn s33() -> ExactMoments {
    moments(vec![
        m(&[&["2", "-i"], &["i", "1"]]),
        m(&[&["4", "-i"], &["i", "1"]]),
        m(&[&["16", "-2i"], &["2i", "2"]]),
        m(&[&["96", "-6i"], &["6i", "6"]]),
        m(&[&["768", "-24i"], &["24i", "24"]]),
    ])
}

pub fn f5() -> ExactPoly {
    MatrixPoly::from_leading(vec![
        id2(),
        m(&[&["2", "-i"], &["i", "1"]]),
        m(&[&["486/37", "0"], &["-264/37i", "6"]]),
        m(&[&["560/37", "-5i"], &["5i", "5"]]),
        m(&[&["1158/37", "0"], &["-936/37i", "6"]]),
        m(&[&["292/37", "-2i"], &["2i", "2"]]),
    ])
}

pub fn s58() -> ExactMoments {
    moments(vec![
        m(&[&["4", "i"], &["-i", "4"]]),
        m(&[&["1", "i"], &["-i", "2"]]),
        m(&[&["3", "i"], &["-i", "4"]]),
    ])
}

pub fn f3() -> ExactPoly {
    MatrixPoly::from_leading(vec![
        id2(),
        m(&[&["4", "i"], &["-i", "4"]]),
        m(&[&["5", "-2i"], &["2i", "3"]]),
        m(&[&["17", "-6i"], &["4i", "8"]]),
    ])
}

/// `P_3` of the completion example.
pub fn p3() -> ExactPoly {
    MatrixPoly::from_leading(vec![
        id2(),
        m(&[&["2187/109", "1206/109"], &["0", "9"]]),
        m(&[&["10662/109", "8700/109"], &["0", "18"]]),
        m(&[&["11178/109", "10524/109"], &["0", "6"]]),
    ])
}

/// Seed moments of the completion example, scaled by `b`.
pub fn seeds(b: &GaussRat) -> ExactMoments {
    let sc = |x: ExactMatrix| x.scale(b);
    moments(vec![
        sc(m(&[&["2", "-1"], &["-1", "1"]])),
        sc(m(&[&["4", "-1"], &["-1", "1"]])),
        sc(m(&[&["16", "-2"], &["-2", "2"]])),
    ])
}
