use std::collections::BTreeMap;

use num_complex::Complex;

use crate::ring::Coeff;
use crate::scalar::{cx, Real};
use crate::symmetry::field::{HoloVectorField, PolyZW};

/// Polynomial in `(z, zbar, u)`.
type Poly3<R> = BTreeMap<(u32, u32, u32), Complex<R>>;

fn add_term<R: Real>(p: &mut Poly3<R>, m: (u32, u32, u32), c: Complex<R>) {
    let sum = p.get(&m).cloned().unwrap_or_else(Coeff::zero) + c;
    if Coeff::is_zero(&sum) {
        p.remove(&m);
    } else {
        p.insert(m, sum);
    }
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, j| acc * (n - j) as i64 / (j + 1) as i64)
}

/// `P(z, u + i z zbar)`.
fn restrict<R: Real>(p: &PolyZW<R>) -> Poly3<R> {
    let mut out = Poly3::new();
    for ((i, j), c) in p.terms() {
        // (u + i z zbar)^j = sum_k C(j,k) u^{j-k} (i z zbar)^k
        for k in 0..=*j {
            let ik = Coeff::pow(&cx(R::zero(), R::one()), k);
            let coef = c.clone() * ik * Complex::new(R::from_i64(binomial(*j, k)), R::zero());
            add_term(&mut out, (i + k, k, j - k), coef);
        }
    }
    out
}

/// Whether `2 Re X` is tangent to `v = |z|^2`, i.e. whether
/// `Re(-zbar X_z + X_w / (2i))` vanishes identically on `w = u + i|z|^2`.
pub fn is_tangent_to_sphere<R: Real>(x: &HoloVectorField<R>) -> bool {
    tangency_defect(x)
        .values()
        .all(|c| Coeff::negligible(c, 1f64.max(x.max_magnitude()), crate::scalar::float_tolerance()))
}

/// The real polynomial `2 Re(-zbar X_z + X_w / (2i))` restricted to the sphere.
fn tangency_defect<R: Real>(x: &HoloVectorField<R>) -> Poly3<R> {
    let mut e = Poly3::new();
    for ((i, j, k), c) in restrict(&x.dz) {
        add_term(&mut e, (i, j + 1, k), -c);
    }
    let minus_half_i = cx(R::zero(), R::ratio(-1, 2));
    for (m, c) in restrict(&x.dw) {
        add_term(&mut e, m, c * minus_half_i.clone());
    }
    let mut out = e.clone();
    for ((i, j, k), c) in e {
        add_term(&mut out, (j, i, k), c.conj());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use crate::symmetry::field::{aut_family, AutParams};

    type Q = Rational;

    fn qc(re: i64, im: i64) -> Complex<Q> {
        Complex::new(Q::ratio(re, 1), Q::ratio(im, 1))
    }

    fn field(dz: &[((u32, u32), Complex<Q>)], dw: &[((u32, u32), Complex<Q>)]) -> HoloVectorField<Q> {
        HoloVectorField::new(PolyZW::from_terms(dz.iter().cloned()), PolyZW::from_terms(dw.iter().cloned())).unwrap()
    }

    #[test]
    fn examples() {
        assert!(is_tangent_to_sphere(&field(&[], &[((0, 0), qc(1, 0))])));
        assert!(is_tangent_to_sphere(&field(&[((1, 0), qc(0, 1))], &[])));
        assert!(!is_tangent_to_sphere(&field(&[((0, 1), qc(1, 0))], &[])));
        assert!(!is_tangent_to_sphere(&field(&[((0, 0), qc(1, 0))], &[])));
        let ap = AutParams {
            p: qc(1, -3),
            c: qc(2, 5),
            a: qc(-1, 2),
            q: Q::ratio(7, 1),
            r: Q::ratio(-2, 1),
        };
        assert!(is_tangent_to_sphere(&aut_family(&ap)));
    }
}
