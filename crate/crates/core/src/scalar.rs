//! Scalar backends.
//!
//! Every rational-valued formula in the crate is written once over [`Real`],
//! which is implemented for `f64` (floating point, relative tolerances) and
//! for [`Rational`] (exact, equality means equality).  Complex quantities are
//! `num_complex::Complex<R>`.

use std::fmt::Debug;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type Complex64 = Complex<f64>;

/// Default relative tolerance of the float backend.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Float tolerance, overridable through the `RSL_TOL` environment variable.
pub fn float_tolerance() -> f64 {
    static TOL: OnceLock<f64> = OnceLock::new();
    *TOL.get_or_init(|| {
        std::env::var("RSL_TOL")
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .filter(|t| t.is_finite() && *t > 0.0)
            .unwrap_or(DEFAULT_TOL)
    })
}

pub trait Real:
    Clone + Debug + PartialEq + PartialOrd + Num + std::ops::Neg<Output = Self> + Send + Sync + 'static
{
    /// `true` for the exact rational backend.
    const EXACT: bool;

    fn from_i64(n: i64) -> Self;
    fn ratio(n: i64, d: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    /// Lossy for the float backend; exact binary expansion for rationals.
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn to_rational(&self) -> Option<Rational>;
    fn abs(&self) -> Self;

    /// Equality up to `rel_tol` relative to `max(1, |a|, |b|)`; exact equality
    /// for rationals.
    fn near(&self, other: &Self, rel_tol: f64) -> bool;

    /// `|self| <= tol * scale`; exact zero test for rationals.
    fn negligible(&self, scale: f64, tol: f64) -> bool;

    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Option<Self>;

    fn is_finite(&self) -> bool {
        true
    }
}

impl Real for f64 {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn ratio(n: i64, d: i64) -> Self {
        n as f64 / d as f64
    }
    fn from_rational(q: &Rational) -> Self {
        rational_to_f64(q)
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn to_rational(&self) -> Option<Rational> {
        None
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn near(&self, other: &Self, rel_tol: f64) -> bool {
        let scale = 1f64.max(f64::abs(*self)).max(f64::abs(*other));
        (self - other).abs() <= rel_tol * scale
    }
    fn negligible(&self, scale: f64, tol: f64) -> bool {
        f64::abs(*self) <= tol * scale
    }
    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self).map_or(Value::Null, Value::Number)
    }
    fn from_json(v: &Value) -> Option<Self> {
        match v {
            Value::Number(n) => n.as_f64(),
            Value::String(s) => parse_rational(s).map(|q| rational_to_f64(&q)).or_else(|| s.parse().ok()),
            _ => None,
        }
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

impl Real for Rational {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
    fn ratio(n: i64, d: i64) -> Self {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn from_f64(x: f64) -> Self {
        <Rational as FromPrimitive>::from_f64(x).unwrap_or_else(Rational::zero)
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn near(&self, other: &Self, _rel_tol: f64) -> bool {
        self == other
    }
    fn negligible(&self, _scale: f64, _tol: f64) -> bool {
        self.is_zero()
    }
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }
    fn from_json(v: &Value) -> Option<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => n
                .as_i64()
                .map(<Rational as Real>::from_i64)
                .or_else(|| n.as_f64().and_then(<Rational as FromPrimitive>::from_f64)),
            _ => None,
        }
    }
}

fn rational_to_f64(q: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Huge numerator/denominator: shift both down before dividing.
    let bits = q.numer().bits().max(q.denom().bits()) as i64 - 900;
    let shift = bits.max(0) as usize;
    let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
    let d = (q.denom() >> shift).to_f64().unwrap_or(1.0);
    if d == 0.0 {
        if n >= 0.0 {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        }
    } else {
        n / d
    }
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p"`, `"-p"` or `"p/q"` with integer `p`, `q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).ok()?;
    let d = BigInt::from_str(d).ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// A user-supplied number: integer and `p/q` literals are exact, anything with a
/// decimal point or exponent is a float.
#[derive(Clone, Debug, PartialEq)]
pub enum Number {
    Exact(Rational),
    Float(f64),
}

impl Number {
    pub fn parse(s: &str) -> Result<Number> {
        if let Some(q) = parse_rational(s) {
            return Ok(Number::Exact(q));
        }
        match s.trim().parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(Number::Float(x)),
            _ => Err(Error::Parse(format!("not a number: {s:?}"))),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Number::Exact(_))
    }

    pub fn to_real<R: Real>(&self) -> R {
        match self {
            Number::Exact(q) => R::from_rational(q),
            Number::Float(x) => R::from_f64(*x),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Number::Exact(q) => rational_to_f64(q),
            Number::Float(x) => *x,
        }
    }
}

pub fn cx<R: Real>(re: R, im: R) -> Complex<R> {
    Complex::new(re, im)
}

pub fn cx_real<R: Real>(re: R) -> Complex<R> {
    Complex::new(re, R::zero())
}

pub fn cx_i<R: Real>() -> Complex<R> {
    Complex::new(R::zero(), R::one())
}

pub fn cx_to_f64<R: Real>(z: &Complex<R>) -> Complex64 {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

pub fn cx_from_f64<R: Real>(z: Complex64) -> Complex<R> {
    Complex::new(R::from_f64(z.re), R::from_f64(z.im))
}

pub fn cx_near<R: Real>(a: &Complex<R>, b: &Complex<R>, rel_tol: f64) -> bool {
    if R::EXACT {
        return a == b;
    }
    let a = cx_to_f64(a);
    let b = cx_to_f64(b);
    let scale = 1f64.max(a.norm()).max(b.norm());
    (a - b).norm() <= rel_tol * scale
}

/// `|z|^2`.
pub fn abs2<R: Real>(z: &Complex<R>) -> R {
    z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone()
}

pub fn pow_real<R: Real>(x: &R, n: u32) -> R {
    let mut acc = R::one();
    for _ in 0..n {
        acc = acc * x.clone();
    }
    acc
}

pub fn cx_to_json<R: Real>(z: &Complex<R>) -> (Value, Value) {
    (z.re.to_json(), z.im.to_json())
}

/// Best rational approximation of `x` among continued-fraction convergents
/// with denominator at most `max_den`, in increasing-denominator order.
pub fn convergents(x: f64, max_den: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rest = x;
    for _ in 0..40 {
        let a = rest.floor();
        let ai = match BigInt::from_f64(a) {
            Some(v) => v,
            None => break,
        };
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2 > BigInt::from(max_den) {
            break;
        }
        out.push(Rational::new(h2.clone(), k2.clone()));
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let frac = rest - a;
        if frac.abs() < 1e-15 {
            break;
        }
        rest = 1.0 / frac;
    }
    out
}
