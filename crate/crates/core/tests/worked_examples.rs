mod common;

use common::*;
use htm_core::bezout::{
    bezout_blocks, bezoutian_oracle, certificate_oracle, f_quadruple, factorized_forms, factorized_forms_unchecked,
    g_tilde, stability_certificate,
};
use htm_core::certify::{bezout_witness, hurwitz_verdict, reduction_is_unit, Route, VerdictOptions};
use htm_core::htm::{classify, condition_c, continued_fraction, eval_cf, eval_rational, reconstruct, symmetry_check};
use htm_core::moments::markov_of;
use htm_core::{Error, GaussRat, MatrixPoly, Scalar};

#[test]
fn f5_reconstructs_from_moments() {
    assert_eq!(reconstruct(&s33(), 5, 0.0).unwrap(), f5());
    let f = f5();
    assert_eq!(f.coeff(3), m(&[&["486/37", "0"], &["-264/37i", "6"]]));
    assert_eq!(f.coeff(0), m(&[&["292/37", "-2i"], &["2i", "2"]]));
}

#[test]
fn f5_markov_round_trip() {
    assert_eq!(markov_of(&f5()).unwrap(), s33());
}

#[test]
fn f5_split_and_eval() {
    let sp = f5().split();
    let a = f5().leading_first();
    assert_eq!(sp.h.leading_first(), vec![a[1].clone(), a[3].clone(), a[5].clone()]);
    assert_eq!(sp.g.leading_first(), vec![a[0].clone(), a[2].clone(), a[4].clone()]);
    assert_eq!(f5().eval(&GaussRat::zero()), a[5]);
    assert_eq!(g_tilde(&f5()), MatrixPoly::from_leading(vec![id2(), a[2].clone()]));
}

#[test]
fn f5_classification_and_cf() {
    let r = classify(&f5(), 0.0).unwrap();
    assert!(r.is_htm);
    assert!(r.condition_c);
    let cf = continued_fraction(&f5(), 0.0).unwrap();
    assert_eq!((cf.c.len(), cf.d.len()), (3, 2));
    assert!(cf.c.iter().chain(&cf.d).all(|x| x.is_positive_definite(0.0).unwrap()));
    for z in [GaussRat::i(), GaussRat::cplx((0, 1), (2, 1)), GaussRat::from_i64(-3)] {
        match eval_cf(&cf, &z) {
            Ok(v) => assert_eq!(v, eval_rational(&f5().split(), &z).unwrap()),
            Err(Error::Evaluation { .. }) => {}
            Err(e) => panic!("{e}"),
        }
    }
    assert!(symmetry_check(&f5().split(), 0.0));
}

#[test]
fn f5_bezoutian() {
    let forms = factorized_forms(&f5(), 0.0).unwrap();
    let [a, b, c, d] = f_quadruple(&f5());
    assert_eq!(bezoutian_oracle(&a, &b, &c, &d, 0.0).unwrap(), forms.f);
    let cert = stability_certificate(&f5(), 0.0).unwrap();
    assert!(cert.pd);
    assert_eq!(cert.matrix.rows(), 10);
    assert_eq!(cert.matrix, certificate_oracle(&f5(), 0.0).unwrap());
    let (p, n) = bezout_blocks(&f5(), 0.0).unwrap();
    assert!(p.is_positive_definite(0.0).unwrap());
    assert!((-n).is_positive_definite(0.0).unwrap());
}

#[test]
fn f5_witness_and_verdict() {
    assert!(bezout_witness(&f5(), 0.0).unwrap().is_exact());
    assert!(reduction_is_unit(&f5(), 0.0).unwrap());
    let v = hurwitz_verdict(&f5(), &VerdictOptions::default()).unwrap();
    assert!(v.hurwitz);
    assert_eq!(v.route, Route::Bezoutian);
}

#[test]
fn f3_reconstruction_and_condition_c() {
    assert_eq!(reconstruct(&s58(), 3, 0.0).unwrap(), f3());
    let r = classify(&f3(), 0.0).unwrap();
    assert!(r.is_htm);
    assert!(!r.condition_c);
    let v = condition_c(&f3(), 0.0).unwrap();
    assert_eq!((v.odd, v.even), (1, 2));
    // Commutator of the Hermitian A_1, A_2: anti-Hermitian, with both off-diagonal entries −2i.
    assert_eq!(v.residual, m(&[&["0", "-2i"], &["-2i", "0"]]));
    assert_eq!(v.residual.conj_transpose(), -v.residual.clone());
    assert!(matches!(stability_certificate(&f3(), 0.0), Err(Error::CertificateUnavailable(_))));
    let [a, b, c, d] = f_quadruple(&f3());
    assert_eq!(bezoutian_oracle(&a, &b, &c, &d, 0.0).unwrap(), factorized_forms_unchecked(&f3()).unwrap().f);
}

#[test]
fn f3_witness_and_verdict() {
    assert!(bezout_witness(&f3(), 0.0).unwrap().is_exact());
    assert!(reduction_is_unit(&f3(), 0.0).unwrap());
    let v = hurwitz_verdict(&f3(), &VerdictOptions::default()).unwrap();
    assert!(v.hurwitz);
    assert_eq!(v.route, Route::RootOracle);
}

#[test]
fn even_truncation_of_f5_moments() {
    let f4 = reconstruct(&s33(), 4, 0.0).unwrap();
    assert_eq!(markov_of(&f4).unwrap(), s33().truncated(4));
    assert!(bezout_witness(&f4, 0.0).unwrap().is_exact());
    assert!(reduction_is_unit(&f4, 0.0).unwrap());
    let cert = stability_certificate(&f4, 0.0);
    let [a, b, c, d] = f_quadruple(&f4);
    assert_eq!(bezoutian_oracle(&a, &b, &c, &d, 0.0).unwrap(), factorized_forms_unchecked(&f4).unwrap().f);
    if let Ok(c) = cert {
        assert!(c.pd);
    }
}

#[test]
fn completion_example_b1() {
    use htm_core::completion::complete;
    let r = complete(&p3(), &seeds(&GaussRat::from_i64(1)), 0.0).unwrap();
    assert!(r.used_transpose);
    assert_eq!(
        r.q.leading_first(),
        vec![
            m(&[&["2", "-1"], &["-1", "1"]]),
            m(&[&["2732/109", "-8"], &["-8", "8"]]),
            m(&[&["6826/109", "-11"], &["-11", "11"]]),
        ]
    );
    assert_eq!(r.moments.get(3), &m(&[&["96", "-6"], &["-6", "6"]]));
    assert_eq!(r.moments.get(4), &m(&[&["768", "-24"], &["-24", "24"]]));
    assert_eq!(r.moments.get(5), &m(&[&["7680", "-120"], &["-120", "120"]]));
    let sp = r.f2n.split();
    assert_eq!((sp.h, sp.g), (p3().transpose(), r.q.clone()));
    assert!(classify(&r.f2n, 0.0).unwrap().is_htm);
    assert_eq!(r.in_p_orientation, r.f2n.transpose());
    assert_eq!(r.in_p_orientation.det_poly(), r.f2n.det_poly());
    assert!(stability_certificate(&r.f2n, 0.0).unwrap().pd);
    assert!(bezout_witness(&r.f2n, 0.0).unwrap().is_exact());
    assert!(reduction_is_unit(&r.f2n, 0.0).unwrap());
    assert!(!symmetry_check(&p3().split(), 0.0));
}
