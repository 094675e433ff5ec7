//! Scalar backends: exact Gaussian rationals and `Complex64`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Field operations shared by the exact and floating backends.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// True for backends without rounding.
    const EXACT: bool;
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn i() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_gauss(g: &GaussRat) -> Self;
    /// Exact backends take the binary value of each double.
    fn from_c64(z: Complex64) -> Self;
    fn conj(&self) -> Self;
    /// Multiplicative inverse, `None` for an exact zero.
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    /// Exact backends ignore `tol`.
    fn near_zero(&self, tol: f64) -> bool;
    /// Real with strictly positive real part (`> tol` on the float backend).
    fn is_positive_real(&self, tol: f64) -> bool;
    fn to_c64(&self) -> Complex64;
    /// Exact value; the float backend converts the binary value of each part.
    fn to_gauss(&self) -> GaussRat;
    fn abs_f64(&self) -> f64 {
        self.to_c64().norm()
    }
}

/// Complex number with arbitrary-precision rational parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat { re, im: BigRational::zero() }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn cplx(re: (i64, i64), im: (i64, i64)) -> Self {
        GaussRat {
            re: BigRational::new(BigInt::from(re.0), BigInt::from(re.1)),
            im: BigRational::new(BigInt::from(im.0), BigInt::from(im.1)),
        }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

fn rat_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn rat_text(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", rat_text(&self.re));
        }
        let im = if self.im.is_one() {
            String::from("i")
        } else if (-&self.im).is_one() {
            String::from("-i")
        } else {
            format!("{}i", rat_text(&self.im))
        };
        if self.re.is_zero() {
            return write!(f, "{im}");
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(f, "{}{}{}i", rat_text(&self.re), sign, rat_text(&self.im.abs()))
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, o: GaussRat) -> GaussRat {
        GaussRat { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, o: GaussRat) -> GaussRat {
        GaussRat { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, o: GaussRat) -> GaussRat {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRat::real(self.re * o.re);
        }
        GaussRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Div for GaussRat {
    type Output = GaussRat;
    fn div(self, o: GaussRat) -> GaussRat {
        self * Scalar::inv(&o).expect("division by zero")
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re, im: -self.im }
    }
}

impl Scalar for GaussRat {
    const EXACT: bool = true;
    const NAME: &'static str = "exact";

    fn zero() -> Self {
        GaussRat { re: BigRational::zero(), im: BigRational::zero() }
    }
    fn one() -> Self {
        GaussRat::real(BigRational::one())
    }
    fn i() -> Self {
        GaussRat { re: BigRational::zero(), im: BigRational::one() }
    }
    fn from_i64(v: i64) -> Self {
        GaussRat::real(BigRational::from_integer(BigInt::from(v)))
    }
    fn from_gauss(g: &GaussRat) -> Self {
        g.clone()
    }
    fn from_c64(z: Complex64) -> Self {
        let f = |v: f64| BigRational::from_float(v).unwrap_or_else(BigRational::zero);
        GaussRat { re: f(z.re), im: f(z.im) }
    }
    fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -&self.im }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(GaussRat::real(self.re.recip()));
        }
        let d = self.norm_sqr();
        Some(GaussRat { re: &self.re / &d, im: -&self.im / &d })
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn near_zero(&self, _tol: f64) -> bool {
        self.is_zero()
    }
    fn is_positive_real(&self, _tol: f64) -> bool {
        self.im.is_zero() && self.re.is_positive()
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_f64(&self.re), rat_f64(&self.im))
    }
    fn to_gauss(&self) -> GaussRat {
        self.clone()
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;
    const NAME: &'static str = "float";

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn i() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn from_gauss(g: &GaussRat) -> Self {
        g.to_c64()
    }
    fn from_c64(z: Complex64) -> Self {
        z
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn inv(&self) -> Option<Self> {
        if *self == Complex64::new(0.0, 0.0) {
            None
        } else {
            Some(Complex64::new(1.0, 0.0) / self)
        }
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn near_zero(&self, tol: f64) -> bool {
        self.norm() <= tol
    }
    fn is_positive_real(&self, tol: f64) -> bool {
        self.re > tol && self.im.abs() <= tol.max(1e-12) * self.re.max(1.0)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn to_gauss(&self) -> GaussRat {
        GaussRat::from_c64(*self)
    }
}

fn parse_int(s: &str, offset: usize) -> Result<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Grammar { text: s.to_string(), position: offset, msg: "expected integer".into() });
    }
    BigInt::from_str(s.trim_start_matches('+'))
        .map_err(|_| Error::Grammar { text: s.to_string(), position: offset, msg: "expected integer".into() })
}

fn parse_rat(s: &str, offset: usize) -> Result<BigRational> {
    match s.find('/') {
        None => Ok(BigRational::from_integer(parse_int(s, offset)?)),
        Some(p) => {
            let num = parse_int(&s[..p], offset)?;
            let den_text = &s[p + 1..];
            if den_text.is_empty() || !den_text.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Grammar {
                    text: s.to_string(),
                    position: offset + p + 1,
                    msg: "expected positive denominator".into(),
                });
            }
            let den = BigInt::from_str(den_text).expect("digits");
            if den.is_zero() {
                return Err(Error::Grammar {
                    text: s.to_string(),
                    position: offset + p + 1,
                    msg: "zero denominator".into(),
                });
            }
            Ok(BigRational::new(num, den))
        }
    }
}

/// Parses `RAT`, `RAT±RATi`, `RATi`, `i` or `-i`.  Error positions are 0-based
/// character offsets into the (whitespace-stripped) text.
pub fn parse_complex(text: &str) -> Result<GaussRat> {
    let s: String = text.trim().replace('\u{2212}', "-");
    let bad = |position: usize, msg: &str| Error::Grammar { text: text.to_string(), position, msg: msg.to_string() };
    if s.is_empty() {
        return Err(bad(0, "empty number"));
    }
    let Some(body) = s.strip_suffix('i') else {
        return parse_rat(&s, 0).map(GaussRat::real).map_err(|e| e.with_text(text));
    };
    let unit = |b: &str| match b {
        "" | "+" => Some(BigRational::one()),
        "-" => Some(-BigRational::one()),
        _ => None,
    };
    if let Some(u) = unit(body) {
        return Ok(GaussRat::new(BigRational::zero(), u));
    }
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(k, c)| (c == '+' || c == '-') && body.as_bytes()[k - 1] != b'/')
        .map(|(k, _)| k)
        .last();
    let (re, im) = match split {
        Some(p) => {
            let re = parse_rat(&body[..p], 0).map_err(|e| e.with_text(text))?;
            let im = match unit(&body[p..]) {
                Some(u) => u,
                None => parse_rat(&body[p..], p).map_err(|e| e.with_text(text))?,
            };
            (re, im)
        }
        None => (BigRational::zero(), parse_rat(body, 0).map_err(|e| e.with_text(text))?),
    };
    Ok(GaussRat::new(re, im))
}

impl FromStr for GaussRat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_complex(s)
    }
}

/// Exact rational text for a real rational.
pub fn rational_string(r: &BigRational) -> String {
    rat_text(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_examples() {
        assert_eq!(parse_complex("486/37").unwrap(), GaussRat::ratio(486, 37));
        assert_eq!(parse_complex("-264/37i").unwrap(), GaussRat::cplx((0, 1), (-264, 37)));
        assert_eq!(parse_complex("2-1/3i").unwrap(), GaussRat::cplx((2, 1), (-1, 3)));
        assert_eq!(parse_complex("i").unwrap(), GaussRat::i());
        assert_eq!(parse_complex("-i").unwrap(), -GaussRat::i());
        assert_eq!(parse_complex("\u{2212}i").unwrap(), -GaussRat::i());
        assert_eq!(parse_complex("3+i").unwrap(), GaussRat::cplx((3, 1), (1, 1)));
        assert_eq!(parse_complex("-7").unwrap(), GaussRat::from_i64(-7));
    }

    #[test]
    fn grammar_errors_carry_position() {
        match parse_complex("2+x") {
            Err(Error::Grammar { position, .. }) => assert_eq!(position, 0),
            other => panic!("{other:?}"),
        }
        match parse_complex("1/0") {
            Err(Error::Grammar { position, .. }) => assert_eq!(position, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_complex("").is_err());
        assert!(parse_complex("1/-2").is_err());
    }

    #[test]
    fn display_round_trips() {
        for t in ["486/37", "-264/37i", "2-1/3i", "i", "-i", "0", "5+2i"] {
            let g = parse_complex(t).unwrap();
            assert_eq!(parse_complex(&g.to_string()).unwrap(), g, "{t}");
        }
        assert_eq!(GaussRat::cplx((2, 1), (-1, 3)).to_string(), "2-1/3i");
    }

    #[test]
    fn field_ops() {
        let a = GaussRat::cplx((1, 2), (3, 1));
        let b = GaussRat::cplx((-2, 1), (1, 5));
        assert_eq!((a.clone() * b.clone()) / b.clone(), a);
        let n = a.clone() * a.conj();
        assert!(n.is_real());
        assert!(GaussRat::zero().inv().is_none());
    }
}
