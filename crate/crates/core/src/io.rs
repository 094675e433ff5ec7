//! JSON documents: matrix polynomials, moment sequences and report builders.
//! Numbers are `COMPLEX` strings; parse errors carry line and column.

use num_rational::{BigRational, Rational64};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bezout::StabilityCertificate;
use crate::certify::StabilityVerdict;
use crate::completion::CompletionResult;
use crate::error::{Error, Result};
use crate::htm::HtmReport;
use crate::matrix::{ExactMatrix, Matrix};
use crate::moments::{ExactMoments, MomentSequence};
use crate::poly::{ExactPoly, MatrixPoly};
use crate::scalar::{parse_complex, rational_string, GaussRat, Scalar};
use crate::scan::ScanReport;

struct Cx(GaussRat);

impl<'de> Deserialize<'de> for Cx {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_complex(&s).map(Cx).map_err(de::Error::custom)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyDoc {
    q: usize,
    degree: usize,
    coefficients: Vec<Vec<Vec<Cx>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MomentsDoc {
    q: usize,
    moments: Vec<Vec<Vec<Cx>>>,
}

#[derive(Serialize)]
struct PolyOut {
    q: usize,
    degree: usize,
    coefficients: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize)]
struct MomentsOut {
    q: usize,
    moments: Vec<Vec<Vec<String>>>,
}

fn from_json<'a, D: Deserialize<'a>>(text: &'a str) -> Result<D> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn square(rows: Vec<Vec<Cx>>, q: usize, what: &str) -> Result<ExactMatrix> {
    if rows.len() != q || rows.iter().any(|r| r.len() != q) {
        return Err(Error::Parse(format!("{what} is not {q}×{q}")));
    }
    Ok(Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(|c| c.0).collect()).collect()))
}

pub fn parse_poly(text: &str) -> Result<ExactPoly> {
    let doc: PolyDoc = from_json(text)?;
    if doc.q == 0 {
        return Err(Error::Parse("q must be positive".into()));
    }
    if doc.coefficients.len() != doc.degree + 1 {
        return Err(Error::Parse(format!(
            "degree {} needs {} coefficients, found {}",
            doc.degree,
            doc.degree + 1,
            doc.coefficients.len()
        )));
    }
    let coeffs = doc
        .coefficients
        .into_iter()
        .enumerate()
        .map(|(k, c)| square(c, doc.q, &format!("coefficient {k}")))
        .collect::<Result<Vec<_>>>()?;
    if coeffs[0].is_zero() {
        return Err(Error::Parse("leading coefficient is zero".into()));
    }
    Ok(MatrixPoly::from_leading(coeffs))
}

pub fn parse_moments(text: &str) -> Result<ExactMoments> {
    let doc: MomentsDoc = from_json(text)?;
    if doc.q == 0 {
        return Err(Error::Parse("q must be positive".into()));
    }
    let s = doc
        .moments
        .into_iter()
        .enumerate()
        .map(|(k, m)| square(m, doc.q, &format!("moment {k}")))
        .collect::<Result<Vec<_>>>()?;
    MomentSequence::new(doc.q, s)
}

/// Exact text for exact values; float values are rationalized first.
pub fn scalar_text<T: Scalar>(x: &T) -> String {
    if T::EXACT {
        return x.to_gauss().to_string();
    }
    let z = x.to_c64();
    let rat = |v: f64| {
        Rational64::approximate_float(v)
            .map(|r| BigRational::new((*r.numer()).into(), (*r.denom()).into()))
            .or_else(|| BigRational::from_float(v))
            .unwrap_or_default()
    };
    GaussRat::new(rat(z.re), rat(z.im)).to_string()
}

pub fn matrix_text<T: Scalar>(m: &Matrix<T>) -> Vec<Vec<String>> {
    m.row_vecs().iter().map(|r| r.iter().map(scalar_text).collect()).collect()
}

pub fn matrix_json<T: Scalar>(m: &Matrix<T>) -> Value {
    json!(matrix_text(m))
}

pub fn poly_json<T: Scalar>(p: &MatrixPoly<T>) -> Value {
    let out = PolyOut { q: p.q(), degree: p.degree(), coefficients: p.leading_first().iter().map(matrix_text).collect() };
    serde_json::to_value(out).expect("serializable")
}

pub fn moments_json<T: Scalar>(s: &MomentSequence<T>) -> Value {
    let out = MomentsOut { q: s.q(), moments: s.as_slice().iter().map(matrix_text).collect() };
    serde_json::to_value(out).expect("serializable")
}

pub fn htm_report_json<T: Scalar>(r: &HtmReport<T>) -> Value {
    let cf = r.cf.as_ref().map(|cf| {
        json!({
            "c": cf.c.iter().map(matrix_json).collect::<Vec<_>>(),
            "d": cf.d.iter().map(matrix_json).collect::<Vec<_>>(),
        })
    });
    let violation = r.condition_c_violation.as_ref().map(|v| {
        json!({"odd": v.odd, "even": v.even, "residual": matrix_json(&v.residual)})
    });
    json!({
        "is_htm": r.is_htm,
        "condition_c": r.condition_c,
        "markov": r.markov.as_slice().iter().map(matrix_json).collect::<Vec<_>>(),
        "continued_fraction": cf,
        "condition_c_violation": violation,
        "hankel": r.hankel_verdicts.iter()
            .map(|((kind, j), pd)| json!({"kind": kind, "index": j, "pd": pd}))
            .collect::<Vec<_>>(),
    })
}

pub fn certificate_json<T: Scalar>(c: &StabilityCertificate<T>) -> Value {
    let minors: Vec<String> = c.leading_minors.iter().map(|m| rational_string(&m.to_gauss().re)).collect();
    json!({
        "route": "bezoutian",
        "pd": c.pd,
        "matrix_size": c.matrix.rows(),
        "leading_minors": minors,
    })
}

/// Certificate document when no certificate exists.
pub fn certificate_unavailable_json(note: &str) -> Value {
    json!({"route": "root_oracle", "pd": null, "matrix_size": null, "leading_minors": [], "note": note})
}

pub fn verdict_json(v: &StabilityVerdict) -> Value {
    json!({
        "hurwitz": v.hurwitz,
        "status": v.status.as_str(),
        "route": v.route.as_str(),
        "roots": v.roots.iter().map(|r| json!({"re": r.z.re, "im": r.z.im, "residual": r.residual})).collect::<Vec<_>>(),
        "inertia": [v.inertia.plus, v.inertia.minus, v.inertia.zero],
        "note": v.certificate_note,
    })
}

pub fn completion_json<T: Scalar>(r: &CompletionResult<T>) -> Value {
    json!({
        "used_transpose": r.used_transpose,
        "p_used": poly_json(&r.p_used),
        "q_poly": poly_json(&r.q),
        "moments": moments_json(&r.moments),
        "f2n": poly_json(&r.f2n),
        "in_p_orientation": poly_json(&r.in_p_orientation),
    })
}

pub fn scan_json(r: &ScanReport) -> Value {
    json!({
        "seed": r.seed,
        "trials": r.trials,
        "q": r.q,
        "n": r.n,
        "complex": r.complex,
        "counterexamples": r.counterexamples.iter().map(|c| json!({
            "trial": c.trial,
            "failure": c.failure.as_str(),
            "moments": c.moments,
            "determinants": c.determinants,
        })).collect::<Vec<_>>(),
        "min_abs_det": r.min_abs_det,
        "note": "empirical evidence for a conjecture, not a proof",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int_matrix;
    use num_complex::Complex64;

    const DOC: &str = r#"{"q": 2, "degree": 1,
  "coefficients": [[["1","0"],["0","1"]], [["2","-i"],["i","3/2"]]]}"#;

    #[test]
    fn poly_round_trip() {
        let p = parse_poly(DOC).unwrap();
        assert_eq!(p.degree(), 1);
        assert_eq!(p.coeff(0).get(1, 1), &GaussRat::ratio(3, 2));
        let back = parse_poly(&poly_json(&p).to_string()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn errors_report_position() {
        let bad = DOC.replace("3/2", "3/x");
        let e = parse_poly(&bad).unwrap_err().to_string();
        assert!(e.contains("line 2"), "{e}");
        assert!(e.contains("column"), "{e}");
        let e = parse_poly("{\"q\": 2,\n \"degree\": }").unwrap_err().to_string();
        assert!(e.contains("line 2"), "{e}");
        assert!(parse_poly(&DOC.replace("\"degree\": 1", "\"degree\": 2")).is_err());
    }

    #[test]
    fn moments_round_trip() {
        let s = MomentSequence::new(1, vec![int_matrix(&[&[3]]), int_matrix(&[&[5]])]).unwrap();
        assert_eq!(parse_moments(&moments_json(&s).to_string()).unwrap(), s);
    }

    #[test]
    fn float_text_is_rationalized() {
        assert_eq!(scalar_text(&Complex64::new(0.5, -0.25)), "1/2-1/4i");
        assert_eq!(scalar_text(&Complex64::new(3.0, 0.0)), "3");
    }
}
