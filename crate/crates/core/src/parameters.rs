//! The three parameter sets of a rigid sphere, the `C*` scaling action on
//! them, moduli normalisation, and the conversions between the sets.

use num_complex::Complex;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::cubic_discriminant::phi_cubic;
use crate::error::{Error, Result};
use crate::scalar::{abs2, cx, cx_near, cx_real, float_tolerance, Complex64, Real};

/// Reeb-field parameters `(tau, rho, a)`; every finite triple is admissible.
#[derive(Clone, Debug, PartialEq)]
pub struct SasakiTriple<R: Real = f64> {
    pub tau: R,
    pub rho: R,
    pub a: Complex<R>,
}

impl<R: Real> SasakiTriple<R> {
    pub fn new(tau: R, rho: R, a: Complex<R>) -> Self {
        SasakiTriple { tau, rho, a }
    }

    pub fn heisenberg() -> Self {
        SasakiTriple::new(R::zero(), R::zero(), cx_real(R::zero()))
    }

    pub fn is_heisenberg(&self) -> bool {
        self.tau.is_zero() && self.rho.is_zero() && self.a.re.is_zero() && self.a.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.tau.is_finite() && self.rho.is_finite() && self.a.re.is_finite() && self.a.im.is_finite()
    }

    pub fn to_f64(&self) -> SasakiTriple<f64> {
        SasakiTriple::new(self.tau.to_f64(), self.rho.to_f64(), Complex::new(self.a.re.to_f64(), self.a.im.to_f64()))
    }

    /// Componentwise comparison, exact for rationals.
    pub fn near(&self, other: &Self, rel_tol: f64) -> bool {
        self.tau.near(&other.tau, rel_tol) && self.rho.near(&other.rho, rel_tol) && cx_near(&self.a, &other.a, rel_tol)
    }
}

/// Stanton's parameters `(theta, r, b)` with `r >= 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct StantonParams<R: Real = f64> {
    pub theta: R,
    pub r: R,
    pub b: Complex<R>,
}

impl<R: Real> StantonParams<R> {
    pub fn new(theta: R, r: R, b: Complex<R>) -> Result<Self> {
        if r < R::zero() {
            return Err(Error::InvalidArgument("Stanton parameter r must be non-negative".into()));
        }
        Ok(StantonParams { theta, r, b })
    }
}

/// Parameters `(theta, s = r^2, phi, a)` of the general closed-form equation.
/// `s` may be negative (purely imaginary `r`).
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormParams<R: Real = f64> {
    pub theta: R,
    pub s: R,
    pub phi: R,
    pub a: Complex<R>,
}

impl<R: Real> ClosedFormParams<R> {
    /// Checks `|a|^2 = phi ((theta - 2 phi)^2 + s)`.
    pub fn new(theta: R, s: R, phi: R, a: Complex<R>) -> Result<Self> {
        let cf = ClosedFormParams { theta, s, phi, a };
        cf.check_consistency()?;
        Ok(cf)
    }

    pub fn consistency_residual(&self) -> R {
        let two = R::from_i64(2);
        let d = self.theta.clone() - two * self.phi.clone();
        self.phi.clone() * (d.clone() * d + self.s.clone()) - abs2(&self.a)
    }

    pub(crate) fn check_consistency(&self) -> Result<()> {
        let res = self.consistency_residual();
        let scale = 1.0 + abs2(&self.a).to_f64().abs() + self.phi.to_f64().abs() * (self.theta.to_f64().powi(2) + self.s.to_f64().abs() + self.phi.to_f64().powi(2));
        if res.negligible(scale, float_tolerance()) {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "closed-form parameters violate |a|^2 = phi((theta-2phi)^2+s): residual {:e}",
                res.to_f64()
            )))
        }
    }
}

/// Representative of a scaling orbit: `tau^4 + a^{8/3} + rho^2 = 1`, `a >= 0`,
/// or the Heisenberg point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModuliPoint {
    pub tau: f64,
    pub rho: f64,
    pub a_nonneg: f64,
}

impl ModuliPoint {
    pub const HEISENBERG: ModuliPoint = ModuliPoint {
        tau: 0.0,
        rho: 0.0,
        a_nonneg: 0.0,
    };

    pub fn new(tau: f64, rho: f64, a_nonneg: f64) -> Result<Self> {
        let m = ModuliPoint { tau, rho, a_nonneg };
        if m.is_heisenberg() {
            return Ok(m);
        }
        let tol = 1e-9;
        if a_nonneg < 0.0 || !(tau.is_finite() && rho.is_finite() && a_nonneg.is_finite()) {
            return Err(Error::InvalidArgument("moduli point needs finite entries and a >= 0".into()));
        }
        if (m.norm8() - 1.0).abs() > tol {
            return Err(Error::InvalidArgument(format!(
                "moduli point off the surface tau^4 + a^(8/3) + rho^2 = 1 (value {})",
                m.norm8()
            )));
        }
        Ok(m)
    }

    /// Moduli point over `(tau, rho)` in the closed disk `tau^4 + rho^2 <= 1`.
    pub fn from_disk(tau: f64, rho: f64) -> Result<Self> {
        let rest = 1.0 - tau.powi(4) - rho * rho;
        if rest < -1e-12 {
            return Err(Error::InvalidArgument("(tau, rho) outside tau^4 + rho^2 <= 1".into()));
        }
        Ok(ModuliPoint {
            tau,
            rho,
            a_nonneg: rest.max(0.0).powf(3.0 / 8.0),
        })
    }

    pub fn is_heisenberg(&self) -> bool {
        self.tau == 0.0 && self.rho == 0.0 && self.a_nonneg == 0.0
    }

    fn norm8(&self) -> f64 {
        self.tau.powi(4) + self.a_nonneg.powf(8.0 / 3.0) + self.rho * self.rho
    }

    pub fn to_triple(&self) -> SasakiTriple<f64> {
        SasakiTriple::new(self.tau, self.rho, Complex::new(self.a_nonneg, 0.0))
    }

    pub fn near(&self, other: &ModuliPoint, rel_tol: f64) -> bool {
        self.tau.near(&other.tau, rel_tol) && self.rho.near(&other.rho, rel_tol) && self.a_nonneg.near(&other.a_nonneg, rel_tol)
    }
}

/// `c in C*` acting by `tau -> |c|^2 tau`, `a -> c cbar^2 a`, `rho -> |c|^4 rho`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalingAction<R: Real = f64> {
    c: Complex<R>,
}

impl<R: Real> ScalingAction<R> {
    pub fn new(c: Complex<R>) -> Result<Self> {
        if c.re.is_zero() && c.im.is_zero() {
            return Err(Error::InvalidArgument("scaling factor c must be non-zero".into()));
        }
        Ok(ScalingAction { c })
    }

    pub fn identity() -> Self {
        ScalingAction { c: cx_real(R::one()) }
    }

    pub fn c(&self) -> &Complex<R> {
        &self.c
    }

    pub fn modulus_squared(&self) -> R {
        abs2(&self.c)
    }

    pub fn compose(&self, other: &Self) -> Self {
        ScalingAction {
            c: self.c.clone() * other.c.clone(),
        }
    }

    pub fn inverse(&self) -> Self {
        ScalingAction {
            c: cx_real(R::one()) / self.c.clone(),
        }
    }
}

/// Low-order normal-form coefficients `gamma_22`, `gamma_23`, `gamma_33`.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaLow<R: Real = f64> {
    pub g22: R,
    pub g23: Complex<R>,
    pub g33: R,
}

pub fn apply_scaling<R: Real>(t: &SasakiTriple<R>, c: &ScalingAction<R>) -> SasakiTriple<R> {
    let m2 = c.modulus_squared();
    let cbar = c.c.conj();
    SasakiTriple {
        tau: m2.clone() * t.tau.clone(),
        rho: m2.clone() * m2.clone() * t.rho.clone(),
        a: c.c.clone() * cbar.clone() * cbar * t.a.clone(),
    }
}

/// Unique moduli representative and a scaling that carries `t` onto it.
pub fn normalize_to_moduli<R: Real>(t: &SasakiTriple<R>) -> (ModuliPoint, ScalingAction<f64>) {
    let t = t.to_f64();
    if t.is_heisenberg() {
        return (ModuliPoint::HEISENBERG, ScalingAction::identity());
    }
    let a_abs = t.a.norm();
    let norm8 = t.tau.powi(4) + a_abs.powf(8.0 / 3.0) + t.rho * t.rho;
    let modulus = norm8.powf(-1.0 / 8.0);
    // arg c = arg a makes c cbar^2 a = |c|^2 cbar a real and non-negative.
    let phase = if a_abs > 0.0 { t.a.arg() } else { 0.0 };
    let c = Complex64::from_polar(modulus, phase);
    let m2 = modulus * modulus;
    let point = ModuliPoint {
        tau: m2 * t.tau,
        rho: m2 * m2 * t.rho,
        a_nonneg: m2 * modulus * a_abs,
    };
    (point, ScalingAction { c })
}

/// A scaling carrying `t` to `t2`, if the two are homothetic.
pub fn are_homothetic<R: Real>(t: &SasakiTriple<R>, t2: &SasakiTriple<R>) -> Option<ScalingAction<f64>> {
    if t == t2 {
        return Some(ScalingAction::identity());
    }
    let (m1, c1) = normalize_to_moduli(t);
    let (m2, c2) = normalize_to_moduli(t2);
    if m1.is_heisenberg() != m2.is_heisenberg() || !m1.near(&m2, 1e-9) {
        return None;
    }
    Some(c1.compose(&c2.inverse()))
}

pub fn stanton_to_sasaki<R: Real>(sp: &StantonParams<R>) -> SasakiTriple<R> {
    let b2 = abs2(&sp.b);
    let two = R::from_i64(2);
    let three = R::from_i64(3);
    let tau = sp.theta.clone() - three.clone() * b2.clone();
    let inner = cx(sp.r.clone(), two.clone() * b2.clone() - sp.theta.clone());
    let a = -(sp.b.clone() * inner);
    let rho = -(three * b2.clone() * b2.clone()) - sp.r.clone() * sp.r.clone() + two * b2 * sp.theta.clone();
    SasakiTriple { tau, rho, a }
}

pub fn closedform_from_sasaki<R: Real>(t: &SasakiTriple<R>, phi: R) -> Result<ClosedFormParams<R>> {
    let [c3, c2, c1, c0] = phi_cubic(t);
    let residual = ((c3 * phi.clone() + c2) * phi.clone() + c1) * phi.clone() + c0;
    let p = phi.to_f64().abs();
    let scale = 1.0 + 4.0 * p.powi(3) + 4.0 * t.tau.to_f64().abs() * p * p + (t.tau.to_f64().powi(2) + t.rho.to_f64().abs()) * p + abs2(&t.a).to_f64();
    if !residual.negligible(scale, float_tolerance()) {
        return Err(Error::Precondition(format!(
            "phi = {} is not a root of the cubic (residual {:e})",
            phi.to_f64(),
            residual.to_f64()
        )));
    }
    let two = R::from_i64(2);
    let three = R::from_i64(3);
    let theta = t.tau.clone() + three.clone() * phi.clone();
    let s = -t.rho.clone() + (two * t.tau.clone() + three * phi.clone()) * phi.clone();
    Ok(ClosedFormParams {
        theta,
        s,
        phi,
        a: t.a.clone(),
    })
}

pub fn sasaki_from_closedform<R: Real>(cf: &ClosedFormParams<R>) -> Result<SasakiTriple<R>> {
    cf.check_consistency()?;
    let two = R::from_i64(2);
    let three = R::from_i64(3);
    let tau = cf.theta.clone() - three.clone() * cf.phi.clone();
    let rho = (two * tau.clone() + three * cf.phi.clone()) * cf.phi.clone() - cf.s.clone();
    Ok(SasakiTriple { tau, rho, a: cf.a.clone() })
}

/// Stanton parameters of a closed-form branch, when that branch is one of
/// Stanton's (`phi >= 0`, `s >= 0`).  When `a = 0` forces `|b|^2 = phi` with a
/// free phase, the real non-negative `b` is returned.
pub fn stanton_from_closedform(cf: &ClosedFormParams<f64>, tol: f64) -> Option<StantonParams<f64>> {
    if cf.phi < -tol || cf.s < -tol {
        return None;
    }
    let phi = cf.phi.max(0.0);
    let r = cf.s.max(0.0).sqrt();
    let denom = Complex64::new(r, 2.0 * phi - cf.theta);
    let b = if denom.norm() > tol {
        -cf.a / denom
    } else if cf.a.norm() <= tol {
        Complex64::new(phi.sqrt(), 0.0)
    } else {
        return None;
    };
    if (b.norm_sqr() - phi).abs() > tol.sqrt() * (1.0 + phi) {
        return None;
    }
    StantonParams::new(cf.theta, r, b).ok()
}

pub fn gamma_to_sasaki<R: Real>(g: &GammaLow<R>) -> SasakiTriple<R> {
    let two = R::from_i64(2);
    let tau = -(g.g22.clone() / two.clone());
    let a = -(g.g23.clone() / cx_real(two));
    let rho = -(R::ratio(3, 2) * g.g33.clone()) + R::ratio(9, 4) * g.g22.clone() * g.g22.clone();
    SasakiTriple { tau, rho, a }
}

pub fn sasaki_to_gamma<R: Real>(t: &SasakiTriple<R>) -> GammaLow<R> {
    GammaLow {
        g22: -(R::from_i64(2) * t.tau.clone()),
        g23: -(cx_real(R::from_i64(2)) * t.a.clone()),
        g33: R::from_i64(6) * t.tau.clone() * t.tau.clone() - R::ratio(2, 3) * t.rho.clone(),
    }
}

pub fn stanton_scaling<R: Real>(sp: &StantonParams<R>, c: &ScalingAction<R>) -> StantonParams<R> {
    let m2 = c.modulus_squared();
    StantonParams {
        theta: m2.clone() * sp.theta.clone(),
        r: m2 * sp.r.clone(),
        b: c.c.conj() * sp.b.clone(),
    }
}

// JSON forms: {"tau", "rho", "a_re", "a_im"} and analogues.  Rationals are
// written as "p/q" strings.

fn real_field<R: Real>(v: &Value, key: &str) -> std::result::Result<R, String> {
    v.get(key)
        .and_then(R::from_json)
        .ok_or_else(|| format!("missing or malformed field {key:?}"))
}

impl<R: Real> SasakiTriple<R> {
    pub fn to_json(&self) -> Value {
        json!({
            "tau": self.tau.to_json(),
            "rho": self.rho.to_json(),
            "a_re": self.a.re.to_json(),
            "a_im": self.a.im.to_json(),
        })
    }

    pub fn from_json(v: &Value) -> std::result::Result<Self, String> {
        Ok(SasakiTriple {
            tau: real_field(v, "tau")?,
            rho: real_field(v, "rho")?,
            a: Complex::new(real_field(v, "a_re")?, real_field(v, "a_im")?),
        })
    }
}

impl<R: Real> StantonParams<R> {
    pub fn to_json(&self) -> Value {
        json!({
            "theta": self.theta.to_json(),
            "r": self.r.to_json(),
            "b_re": self.b.re.to_json(),
            "b_im": self.b.im.to_json(),
        })
    }
}

impl<R: Real> ClosedFormParams<R> {
    pub fn to_json(&self) -> Value {
        json!({
            "theta": self.theta.to_json(),
            "s": self.s.to_json(),
            "phi": self.phi.to_json(),
            "a_re": self.a.re.to_json(),
            "a_im": self.a.im.to_json(),
        })
    }
}

impl<R: Real> GammaLow<R> {
    pub fn to_json(&self) -> Value {
        json!({
            "g22": self.g22.to_json(),
            "g23_re": self.g23.re.to_json(),
            "g23_im": self.g23.im.to_json(),
            "g33": self.g33.to_json(),
        })
    }
}

impl ModuliPoint {
    pub fn to_json(&self) -> Value {
        json!({ "tau": self.tau, "rho": self.rho, "a": self.a_nonneg })
    }
}

impl<R: Real> ScalingAction<R> {
    pub fn to_json(&self) -> Value {
        json!({ "c_re": self.c.re.to_json(), "c_im": self.c.im.to_json() })
    }
}

impl<R: Real> Serialize for SasakiTriple<R> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de, R: Real> Deserialize<'de> for SasakiTriple<R> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(deserializer)?;
        SasakiTriple::from_json(&v).map_err(serde::de::Error::custom)
    }
}
