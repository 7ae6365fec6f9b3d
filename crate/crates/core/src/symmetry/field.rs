use std::collections::BTreeMap;

use num_complex::Complex;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::parameters::SasakiTriple;
use crate::ring::Coeff;
use crate::scalar::{cx, cx_real, Real};

/// Polynomial `sum c_{ij} z^i w^j` with complex coefficients; zero terms are
/// not stored.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyZW<R: Real = f64> {
    terms: BTreeMap<(u32, u32), Complex<R>>,
}

impl<R: Real> Default for PolyZW<R> {
    fn default() -> Self {
        PolyZW { terms: BTreeMap::new() }
    }
}

impl<R: Real> PolyZW<R> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Complex<R>)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: (u32, u32), c: Complex<R>) {
        let sum = self.terms.get(&m).cloned().unwrap_or_else(Coeff::zero) + c;
        if Coeff::is_zero(&sum) {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> Complex<R> {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Complex<R>)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-<Complex<R> as Coeff>::one()))
    }

    pub fn scale(&self, s: &Complex<R>) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, c.clone() * s.clone())))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((i1, j1), a) in &self.terms {
            for ((i2, j2), b) in &other.terms {
                out.add_term((i1 + i2, j1 + j2), a.clone() * b.clone());
            }
        }
        out
    }

    pub fn d_dz(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|((i, j), c)| ((i - 1, *j), c.clone() * cx_real(R::from_i64(*i as i64)))),
        )
    }

    pub fn d_dw(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((_, j), _)| *j > 0)
                .map(|((i, j), c)| ((*i, j - 1), c.clone() * cx_real(R::from_i64(*j as i64)))),
        )
    }

    /// Drops coefficients below `tol * scale` (float rounding noise).
    pub fn chop(&self, scale: f64, tol: f64) -> Self {
        Self::from_terms(self.terms.iter().filter(|(_, c)| !Coeff::negligible(*c, scale, tol)).map(|(m, c)| (*m, c.clone())))
    }

    pub fn max_magnitude(&self) -> f64 {
        self.terms.values().map(Coeff::magnitude).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|((i, j), c)| json!({"z": i, "w": j, "re": c.re.to_json(), "im": c.im.to_json()}))
                .collect(),
        )
    }
}

/// `X = X_z d/dz + X_w d/dw` with polynomial components of degree at most 2.
#[derive(Clone, Debug, PartialEq)]
pub struct HoloVectorField<R: Real = f64> {
    pub dz: PolyZW<R>,
    pub dw: PolyZW<R>,
}

pub const MAX_DEGREE: u32 = 2;

impl<R: Real> HoloVectorField<R> {
    pub fn new(dz: PolyZW<R>, dw: PolyZW<R>) -> Result<Self> {
        let degree = dz.degree().max(dw.degree()).unwrap_or(0);
        if degree > MAX_DEGREE {
            return Err(Error::DegreeOverflow { degree: degree as usize });
        }
        Ok(HoloVectorField { dz, dw })
    }

    pub fn zero() -> Self {
        HoloVectorField {
            dz: PolyZW::zero(),
            dw: PolyZW::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.dz.is_zero() && self.dw.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        HoloVectorField {
            dz: self.dz.add(&other.dz),
            dw: self.dw.add(&other.dw),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        HoloVectorField {
            dz: self.dz.sub(&other.dz),
            dw: self.dw.sub(&other.dw),
        }
    }

    pub fn scale(&self, s: &Complex<R>) -> Self {
        HoloVectorField {
            dz: self.dz.scale(s),
            dw: self.dw.scale(s),
        }
    }

    /// `X(f) = X_z df/dz + X_w df/dw`.
    pub fn apply(&self, f: &PolyZW<R>) -> PolyZW<R> {
        self.dz.mul(&f.d_dz()).add(&self.dw.mul(&f.d_dw()))
    }

    pub fn max_magnitude(&self) -> f64 {
        self.dz.max_magnitude().max(self.dw.max_magnitude())
    }

    /// Coefficientwise comparison, exact for rationals.
    pub fn near(&self, other: &Self, tol: f64) -> bool {
        let scale = 1f64.max(self.max_magnitude()).max(other.max_magnitude());
        let diff = self.sub(other);
        let ok = diff.dz.terms().chain(diff.dw.terms()).all(|(_, c)| Coeff::negligible(c, scale, tol));
        ok
    }

    /// Real coordinates of every coefficient of degree <= 2, in a fixed order
    /// (`d/dz` then `d/dw`; monomials `1, z, w, z^2, zw, w^2`; re then im).
    pub fn real_coordinates(&self) -> Vec<R> {
        let mut out = Vec::with_capacity(24);
        for p in [&self.dz, &self.dw] {
            for m in MONOMIALS {
                let c = p.coeff(m.0, m.1);
                out.push(c.re);
                out.push(c.im);
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({"dz": self.dz.to_json(), "dw": self.dw.to_json()})
    }
}

const MONOMIALS: [(u32, u32); 6] = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)];

/// `[X, Y]_i = X(Y_i) - Y(X_i)`.  Results of degree above 2 are reported as
/// [`Error::DegreeOverflow`] rather than truncated.
pub fn bracket<R: Real>(x: &HoloVectorField<R>, y: &HoloVectorField<R>) -> Result<HoloVectorField<R>> {
    let dz = x.apply(&y.dz).sub(&y.apply(&x.dz));
    let dw = x.apply(&y.dw).sub(&y.apply(&x.dw));
    let (dz, dw) = if R::EXACT {
        (dz, dw)
    } else {
        let scale = 1f64.max(x.max_magnitude() * y.max_magnitude());
        let tol = crate::scalar::float_tolerance();
        (dz.chop(scale, tol), dw.chop(scale, tol))
    };
    HoloVectorField::new(dz, dw)
}

/// Parameters of the 8-dimensional family of infinitesimal automorphisms of
/// `v = |z|^2`.  (`r` here is unrelated to Stanton's `r`.)
#[derive(Clone, Debug, PartialEq)]
pub struct AutParams<R: Real = f64> {
    pub p: Complex<R>,
    pub c: Complex<R>,
    pub a: Complex<R>,
    pub q: R,
    pub r: R,
}

/// Real coordinate order used throughout: `p_re, p_im, c_re, c_im, a_re, a_im, q, r`.
pub const AUT_COORDINATES: [&str; 8] = ["p_re", "p_im", "c_re", "c_im", "a_re", "a_im", "q", "r"];

impl<R: Real> AutParams<R> {
    pub fn to_vector(&self) -> [R; 8] {
        [
            self.p.re.clone(),
            self.p.im.clone(),
            self.c.re.clone(),
            self.c.im.clone(),
            self.a.re.clone(),
            self.a.im.clone(),
            self.q.clone(),
            self.r.clone(),
        ]
    }

    pub fn from_vector(v: &[R]) -> Self {
        AutParams {
            p: cx(v[0].clone(), v[1].clone()),
            c: cx(v[2].clone(), v[3].clone()),
            a: cx(v[4].clone(), v[5].clone()),
            q: v[6].clone(),
            r: v[7].clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        let v = self.to_vector();
        Value::Object(AUT_COORDINATES.iter().zip(v.iter()).map(|(k, x)| (k.to_string(), x.to_json())).collect())
    }
}

fn two_i<R: Real>() -> Complex<R> {
    cx(R::zero(), R::from_i64(2))
}

/// `(p + c z + a w + 2i abar z^2 + r z w) d/dz
///  + (q + 2i pbar z + 2 Re(c) w + 2i abar z w + r w^2) d/dw`.
pub fn aut_family<R: Real>(ap: &AutParams<R>) -> HoloVectorField<R> {
    let ab = ap.a.conj();
    let dz = PolyZW::from_terms([
        ((0, 0), ap.p.clone()),
        ((1, 0), ap.c.clone()),
        ((0, 1), ap.a.clone()),
        ((2, 0), two_i::<R>() * ab.clone()),
        ((1, 1), cx_real(ap.r.clone())),
    ]);
    let dw = PolyZW::from_terms([
        ((0, 0), cx_real(ap.q.clone())),
        ((1, 0), two_i::<R>() * ap.p.conj()),
        ((0, 1), cx_real(R::from_i64(2) * ap.c.re.clone())),
        ((1, 1), two_i::<R>() * ab),
        ((0, 2), cx_real(ap.r.clone())),
    ]);
    HoloVectorField { dz, dw }
}

/// Inverse of [`aut_family`] on its image.
pub fn aut_params_of<R: Real>(x: &HoloVectorField<R>, tol: f64) -> Option<AutParams<R>> {
    let r = x.dz.coeff(1, 1);
    let q = x.dw.coeff(0, 0);
    let ap = AutParams {
        p: x.dz.coeff(0, 0),
        c: x.dz.coeff(1, 0),
        a: x.dz.coeff(0, 1),
        q: q.re.clone(),
        r: r.re.clone(),
    };
    let scale = 1f64.max(x.max_magnitude());
    let real = r.im.negligible(scale, tol) && q.im.negligible(scale, tol);
    (real && aut_family(&ap).near(x, tol)).then_some(ap)
}

/// `Z = (i tau z + a w + 2i abar z^2 + rho z w) d/dz + (1 + 2i abar z w + rho w^2) d/dw`,
/// the member of the family with `p = 0, c = i tau, q = 1, r = rho`.
pub fn reeb_params<R: Real>(t: &SasakiTriple<R>) -> AutParams<R> {
    AutParams {
        p: Coeff::zero(),
        c: cx(R::zero(), t.tau.clone()),
        a: t.a.clone(),
        q: R::one(),
        r: t.rho.clone(),
    }
}

pub fn reeb_field<R: Real>(t: &SasakiTriple<R>) -> HoloVectorField<R> {
    aut_family(&reeb_params(t))
}

/// Second generator of the symmetry algebra when `a != 0`:
/// `p = i a`, `c = i (rho - tau^2)`, `a' = -a tau`, `q = 0`, `r = -2|a|^2`.
pub fn transverse_generator<R: Real>(t: &SasakiTriple<R>) -> AutParams<R> {
    let i = cx(R::zero(), R::one());
    let tau = t.tau.clone();
    AutParams {
        p: i.clone() * t.a.clone(),
        c: i * cx_real(t.rho.clone() - tau.clone() * tau.clone()),
        a: -(t.a.clone() * cx_real(tau)),
        q: R::zero(),
        r: -(R::from_i64(2) * crate::scalar::abs2(&t.a)),
    }
}

/// Compares two fields up to a real multiple of a third (used to compare
/// generators modulo the Reeb field).
pub fn equal_modulo<R: Real>(x: &HoloVectorField<R>, y: &HoloVectorField<R>, z: &HoloVectorField<R>, tol: f64) -> bool {
    let diff = x.sub(y);
    if diff.near(&HoloVectorField::zero(), tol) {
        return true;
    }
    let zc = z.real_coordinates();
    let dc = diff.real_coordinates();
    let Some(k) = zc.iter().position(|c| !c.negligible(1.0, tol)) else {
        return false;
    };
    let lambda = dc[k].clone() / zc[k].clone();
    diff.sub(&z.scale(&cx_real(lambda))).near(&HoloVectorField::zero(), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Complex64, Rational};

    type Q = Rational;

    fn q(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    fn qc(re: i64, im: i64) -> Complex<Q> {
        Complex::new(q(re, 1), q(im, 1))
    }

    fn poly(terms: &[((u32, u32), Complex<Q>)]) -> PolyZW<Q> {
        PolyZW::from_terms(terms.iter().cloned())
    }

    fn field(dz: &[((u32, u32), Complex<Q>)], dw: &[((u32, u32), Complex<Q>)]) -> HoloVectorField<Q> {
        HoloVectorField::new(poly(dz), poly(dw)).unwrap()
    }

    fn params(p: Complex<Q>, c: Complex<Q>, a: Complex<Q>, qq: i64, r: i64) -> AutParams<Q> {
        AutParams { p, c, a, q: q(qq, 1), r: q(r, 1) }
    }

    #[test]
    fn reeb_examples() {
        let t = |tau, rho, a| SasakiTriple::new(q(tau, 1), q(rho, 1), qc(a, 0));
        assert_eq!(reeb_field(&t(0, 0, 0)), field(&[], &[((0, 0), qc(1, 0))]));
        assert_eq!(reeb_field(&t(1, 0, 0)), field(&[((1, 0), qc(0, 1))], &[((0, 0), qc(1, 0))]));
        assert_eq!(
            reeb_field(&t(0, 0, 2)),
            field(&[((0, 1), qc(2, 0)), ((2, 0), qc(0, 4))], &[((0, 0), qc(1, 0)), ((1, 1), qc(0, 4))])
        );
    }

    #[test]
    fn family_examples() {
        let z = qc(0, 0);
        assert_eq!(aut_family(&params(z.clone(), z.clone(), z.clone(), 1, 0)), field(&[], &[((0, 0), qc(1, 0))]));
        assert_eq!(
            aut_family(&params(qc(1, 0), z.clone(), z.clone(), 0, 0)),
            field(&[((0, 0), qc(1, 0))], &[((1, 0), qc(0, 2))])
        );
        assert_eq!(aut_family(&params(z.clone(), qc(0, 1), z.clone(), 0, 0)), field(&[((1, 0), qc(0, 1))], &[]));
    }

    #[test]
    fn bracket_examples() {
        let dw = field(&[], &[((0, 0), qc(1, 0))]);
        let dz = field(&[((0, 0), qc(1, 0))], &[]);
        assert!(bracket(&dw, &dz).unwrap().is_zero());
        let rot = field(&[((1, 0), qc(0, 1))], &[]);
        let z2 = field(&[((2, 0), qc(1, 0))], &[]);
        assert_eq!(bracket(&rot, &z2).unwrap(), field(&[((2, 0), qc(0, 1))], &[]));
        let r = qc(3, 0);
        let x = field(&[((1, 1), r.clone())], &[((0, 2), r.clone())]);
        assert_eq!(
            bracket(&dw, &x).unwrap(),
            field(&[((1, 0), r.clone())], &[((0, 1), r.clone() * qc(2, 0))])
        );
    }

    #[test]
    fn bracket_reports_degree_overflow() {
        let z2 = field(&[((2, 0), qc(1, 0))], &[]);
        let w2 = field(&[((0, 2), qc(1, 0))], &[]);
        assert!(matches!(bracket(&z2, &w2), Err(Error::DegreeOverflow { degree: 3 })));
    }

    #[test]
    fn params_recovery() {
        let ap = params(qc(1, -2), qc(3, 1), qc(-1, 1), 2, -5);
        assert_eq!(aut_params_of(&aut_family(&ap), 0.0), Some(ap));
        let w_dz = field(&[((0, 1), qc(1, 0))], &[]);
        assert_eq!(aut_params_of(&w_dz, 0.0), None);
    }

    #[test]
    fn float_bracket_chops_noise() {
        let x = aut_family(&AutParams {
            p: Complex64::new(0.1, 0.2),
            c: Complex64::new(0.0, 0.3),
            a: Complex64::new(0.7, -0.1),
            q: 1.0,
            r: 0.4,
        });
        let y = aut_family(&AutParams {
            p: Complex64::new(-0.3, 0.2),
            c: Complex64::new(0.5, 0.3),
            a: Complex64::new(0.1, 0.1),
            q: -1.0,
            r: 0.2,
        });
        let b = bracket(&x, &y).unwrap();
        assert!(aut_params_of(&b, 1e-10).is_some());
    }
    fn small() -> impl proptest::strategy::Strategy<Value = Q> {
        use proptest::strategy::Strategy;
        (-5i64..=5, 1i64..=3).prop_map(|(n, d)| q(n, d))
    }

    fn arb_params() -> impl proptest::strategy::Strategy<Value = AutParams<Q>> {
        use proptest::strategy::Strategy;
        proptest::array::uniform8(small()).prop_map(|v| AutParams::from_vector(&v))
    }

    proptest::proptest! {
        #[test]
        fn family_is_closed_and_satisfies_jacobi(x in arb_params(), y in arb_params(), z in arb_params()) {
            let (x, y, z) = (aut_family(&x), aut_family(&y), aut_family(&z));
            let xy = bracket(&x, &y).unwrap();
            proptest::prop_assert!(aut_params_of(&xy, 0.0).is_some());
            let yz = bracket(&y, &z).unwrap();
            let zx = bracket(&z, &x).unwrap();
            let sum = bracket(&x, &yz).unwrap().add(&bracket(&y, &zx).unwrap()).add(&bracket(&z, &xy).unwrap());
            proptest::prop_assert!(sum.is_zero());
            proptest::prop_assert_eq!(bracket(&y, &x).unwrap(), xy.scale(&qc(-1, 0)));
        }
    }
}
