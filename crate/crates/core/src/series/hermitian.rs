use num_complex::Complex;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::parameters::{gamma_to_sasaki, GammaLow, SasakiTriple, ScalingAction};
use crate::ring::Coeff;
use crate::scalar::{cx_near, Real};
use crate::series::bivariate::BiSeries;

/// Defining series `v = sum gamma_{kl} z^k zbar^l` of a rigid hypersurface,
/// truncated at total degree `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianSeries<R: Real = f64> {
    gamma: BiSeries<Complex<R>>,
}

/// Failed normal-form conditions, one human-readable entry each.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct NormalFormReport {
    pub violations: Vec<String>,
}

impl NormalFormReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl<R: Real> HermitianSeries<R> {
    /// Wraps a bivariate series after checking Hermitian symmetry and
    /// `psi(0) = d psi(0) = 0`.
    pub fn new(gamma: BiSeries<Complex<R>>) -> Result<Self> {
        let tol = crate::scalar::float_tolerance();
        for (k, l, c) in gamma.terms() {
            if k + l <= 1 && !Coeff::negligible(c, 1.0, tol) {
                return Err(Error::InvalidArgument(format!("gamma_{k}{l} must vanish, got {c:?}")));
            }
            if !cx_near(&gamma.get(l, k), &c.conj(), tol) {
                return Err(Error::InvalidArgument(format!("gamma_{l}{k} is not the conjugate of gamma_{k}{l}")));
            }
        }
        Ok(HermitianSeries { gamma })
    }

    /// Builds from `(k, l, gamma_kl)` entries, filling in `gamma_lk`.
    pub fn from_entries(order: usize, entries: &[(usize, usize, Complex<R>)]) -> Result<Self> {
        let mut g = BiSeries::zero(order);
        for (k, l, c) in entries {
            if k + l > order {
                return Err(Error::InvalidArgument(format!("entry ({k},{l}) exceeds order {order}")));
            }
            g.set(*k, *l, c.clone());
            g.set(*l, *k, c.conj());
        }
        Self::new(g)
    }

    /// `v = |z|^2`.
    pub fn heisenberg(order: usize) -> Self {
        HermitianSeries {
            gamma: BiSeries::zzbar(order),
        }
    }

    pub fn order(&self) -> usize {
        self.gamma.order()
    }

    pub fn gamma(&self, k: usize, l: usize) -> Complex<R> {
        self.gamma.get(k, l)
    }

    pub fn series(&self) -> &BiSeries<Complex<R>> {
        &self.gamma
    }

    pub fn into_series(self) -> BiSeries<Complex<R>> {
        self.gamma
    }

    pub fn to_f64(&self) -> HermitianSeries<f64> {
        HermitianSeries {
            gamma: self.gamma.map(crate::scalar::cx_to_f64),
        }
    }

    /// Coefficientwise comparison at the common order, relative to
    /// `max(1, |gamma|)`; exact equality for rationals.
    pub fn near(&self, other: &Self, rel_tol: f64) -> bool {
        self.first_difference(other, rel_tol).is_none()
    }

    /// First `(k, l)` where the two series differ beyond `rel_tol`.
    pub fn first_difference(&self, other: &Self, rel_tol: f64) -> Option<(usize, usize)> {
        let n = self.order().min(other.order());
        self.gamma
            .terms()
            .filter(|(k, l, _)| k + l <= n)
            .find(|(k, l, c)| !cx_near(c, &other.gamma(*k, *l), rel_tol))
            .map(|(k, l, _)| (k, l))
    }

    /// `{"order": N, "gamma": [{"k", "l", "re", "im"}, ...]}` listing the
    /// nonzero entries with `k <= l`.
    pub fn to_json(&self) -> Value {
        let gamma: Vec<Value> = self
            .gamma
            .terms()
            .filter(|(k, l, c)| k <= l && !Coeff::is_zero(*c))
            .map(|(k, l, c)| json!({"k": k, "l": l, "re": c.re.to_json(), "im": c.im.to_json()}))
            .collect();
        json!({"order": self.order(), "gamma": gamma})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("series JSON: {what}"));
        let order = v.get("order").and_then(Value::as_u64).ok_or_else(|| bad("missing order"))? as usize;
        let list = v.get("gamma").and_then(Value::as_array).ok_or_else(|| bad("missing gamma"))?;
        let mut entries = Vec::with_capacity(list.len());
        for e in list {
            let idx = |key| e.get(key).and_then(Value::as_u64).map(|x| x as usize).ok_or_else(|| bad("bad index"));
            let num = |key| e.get(key).and_then(R::from_json).ok_or_else(|| bad("bad coefficient"));
            entries.push((idx("k")?, idx("l")?, Complex::new(num("re")?, num("im")?)));
        }
        Self::from_entries(order, &entries)
    }
}

/// Checks `gamma_11 = 1`, no harmonic terms and no `(k,1)`, `(1,l)` terms
/// with `k, l >= 2`.
pub fn is_rigid_normal_form<R: Real>(h: &HermitianSeries<R>, tol: f64) -> NormalFormReport {
    let mut report = NormalFormReport::default();
    let scale = 1f64.max(h.gamma.max_magnitude());
    for (k, l, c) in h.gamma.terms() {
        let expected_one = k == 1 && l == 1;
        let must_vanish = k == 0 || l == 0 || (k == 1 && l >= 2) || (l == 1 && k >= 2);
        if expected_one {
            let one = <Complex<R> as Coeff>::one();
            if !cx_near(c, &one, tol) {
                report.violations.push(format!("gamma_11 = {c:?}, expected 1"));
            }
        } else if must_vanish && !Coeff::negligible(c, scale, tol) {
            report.violations.push(format!("gamma_{k}{l} = {c:?}, expected 0"));
        }
    }
    report
}

/// `(tau, rho, a)` from `gamma_22, gamma_23, gamma_33` of a normal form.
pub fn extract_normal_params<R: Real>(h: &HermitianSeries<R>) -> Result<SasakiTriple<R>> {
    if h.order() < 6 {
        return Err(Error::InvalidArgument(format!("order {} < 6", h.order())));
    }
    let report = is_rigid_normal_form(h, crate::scalar::float_tolerance());
    if !report.ok() {
        return Err(Error::InvalidArgument(format!("not in rigid normal form: {}", report.violations.join("; "))));
    }
    let g = GammaLow {
        g22: h.gamma(2, 2).re,
        g23: h.gamma(2, 3),
        g33: h.gamma(3, 3).re,
    };
    Ok(gamma_to_sasaki(&g))
}

/// Normal form in the coordinates `z = c z'`, `w = |c|^2 w'`:
/// `gamma'_{kl} = c^{k-1} cbar^{l-1} gamma_{kl}`.
///
/// With this law `extract_normal_params(rescale_surface(h, c))` equals
/// `apply_scaling(extract_normal_params(h), c)` for the same `c`.
pub fn rescale_surface<R: Real>(h: &HermitianSeries<R>, c: &ScalingAction<R>) -> Result<HermitianSeries<R>> {
    let report = is_rigid_normal_form(h, crate::scalar::float_tolerance());
    if !report.ok() {
        return Err(Error::InvalidArgument(format!("not in rigid normal form: {}", report.violations.join("; "))));
    }
    let c = c.c().clone();
    let cb = c.conj();
    let n = h.order();
    let cp: Vec<Complex<R>> = (0..n).map(|k| Coeff::pow(&c, k as u32)).collect();
    let cbp: Vec<Complex<R>> = (0..n).map(|k| Coeff::pow(&cb, k as u32)).collect();
    let mut out = BiSeries::zero(n);
    for (k, l, g) in h.gamma.terms() {
        if k >= 1 && l >= 1 && !Coeff::is_zero(g) {
            out.set(k, l, g.clone() * cp[k - 1].clone() * cbp[l - 1].clone());
        }
    }
    Ok(HermitianSeries { gamma: out })
}
