use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{float_tolerance, Real};
use crate::series::bivariate::BiSeries;
use crate::series::hermitian::HermitianSeries;

/// A finite automorphism of `v = log(1 + |z|^2)` (`epsilon = 1`) or of
/// `v = -log(1 - |z|^2)` (`epsilon = -1`):
///
/// ```text
/// z' = e^{i angle} (z - epsilon zeta) / (conj(zeta) z + 1)
/// w' = w + q - 2 i epsilon log(1 + conj(zeta) z) + i epsilon log(1 + epsilon |zeta|^2)
/// ```
///
/// The real translation `q` does not move `v` and only enters the JSON form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoebiusMapParams {
    pub angle: f64,
    pub zeta: Complex64,
    pub q: f64,
}

impl MoebiusMapParams {
    pub fn identity() -> Self {
        MoebiusMapParams {
            angle: 0.0,
            zeta: Complex64::new(0.0, 0.0),
            q: 0.0,
        }
    }
}

/// `epsilon log(1 + epsilon |z|^2) = sum_{k>=1} (-epsilon)^{k-1} |z|^{2k} / k`.
fn reference(epsilon: f64, order: usize) -> HermitianSeries<f64> {
    let mut s = BiSeries::zero(order);
    for k in 1..=order / 2 {
        let c = (-epsilon).powi(k as i32 - 1) / k as f64;
        s.set(k, k, Complex64::new(c, 0.0));
    }
    HermitianSeries::new(s).expect("real diagonal series")
}

fn identify(h: &HermitianSeries<f64>) -> Result<f64> {
    let tol = 1e3 * float_tolerance();
    for epsilon in [1.0, -1.0] {
        if h.near(&reference(epsilon, h.order()), tol) {
            return Ok(epsilon);
        }
    }
    Err(Error::InvalidArgument(
        "series is neither v = log(1+|z|^2) nor v = -log(1-|z|^2)".into(),
    ))
}

/// Largest coefficient of `psi - epsilon (log(1 + conj(zeta) z) + conj - log(1 + epsilon |zeta|^2))
/// - epsilon log(1 + epsilon |z'|^2)` up to total degree `n`.
///
/// The right-hand side is expanded around `|z'(0)|^2 = |zeta|^2`, where the
/// defining function is known in closed form.
pub fn finite_automorphism_residual<R: Real>(h: &HermitianSeries<R>, map: &MoebiusMapParams, n: usize) -> Result<f64> {
    let h = h.to_f64();
    if n > h.order() {
        return Err(Error::InvalidArgument(format!("order {n} exceeds the series order {}", h.order())));
    }
    if !(map.angle.is_finite() && map.zeta.is_finite() && map.q.is_finite()) {
        return Err(Error::InvalidArgument("map parameters must be finite".into()));
    }
    let epsilon = identify(&h)?;
    residual_with_sign(&h, map, n, epsilon)
}

fn residual_with_sign(h: &HermitianSeries<f64>, map: &MoebiusMapParams, n: usize, epsilon: f64) -> Result<f64> {
    let x0 = map.zeta.norm_sqr();
    if epsilon < 0.0 && x0 >= 1.0 {
        return Err(Error::InvalidArgument(format!("|zeta| = {} must be < 1 on the hyperboloid", x0.sqrt())));
    }
    let zero = Complex64::new(0.0, 0.0);

    // z'(z) = e^{i angle} (z - epsilon zeta) sum (-conj(zeta) z)^k
    let rot = Complex64::from_polar(1.0, map.angle);
    let geo: Vec<Complex64> = (0..=n).map(|k| (-map.zeta.conj()).powu(k as u32)).collect();
    let mut zp = vec![zero; n + 1];
    for k in 0..=n {
        zp[k] = -epsilon * map.zeta * geo[k];
        if k > 0 {
            zp[k] += geo[k - 1];
        }
        zp[k] *= rot;
    }

    // delta = |z'|^2 - |zeta|^2, no constant term
    let mut delta = BiSeries::zero(n);
    for k in 0..=n {
        for l in 0..=n - k {
            if k + l > 0 {
                delta.set(k, l, zp[k] * zp[l].conj());
            }
        }
    }

    // epsilon log(1 + epsilon (x0 + delta)) = sum f_k delta^k
    let base = 1.0 + epsilon * x0;
    let mut rhs = BiSeries::constant(n, Complex64::new(epsilon * base.ln(), 0.0));
    let mut power = BiSeries::constant(n, Complex64::new(1.0, 0.0));
    for k in 1..=n {
        power = power.mul(&delta);
        let fk = (-epsilon).powi(k as i32 - 1) / (k as f64 * base.powi(k as i32));
        rhs = rhs.add(&power.scale(&Complex64::new(fk, 0.0)));
    }

    let mut lhs = BiSeries::zero(n);
    for (k, l, c) in h.series().terms() {
        if k + l <= n {
            lhs.set(k, l, *c);
        }
    }
    lhs.set(0, 0, Complex64::new(epsilon * base.ln(), 0.0));
    let zb = map.zeta.conj();
    for k in 1..=n {
        let c = -epsilon * (-1f64).powi(k as i32 - 1) * zb.powu(k as u32) / k as f64;
        lhs.set(k, 0, lhs.get(k, 0) + c);
        lhs.set(0, k, lhs.get(0, k) + c.conj());
    }

    Ok(lhs.sub(&rhs).max_magnitude())
}

/// Whether the map preserves the defining series of `h` through order `n`.
pub fn verify_finite_automorphism<R: Real>(h: &HermitianSeries<R>, map: &MoebiusMapParams, n: usize) -> Result<bool> {
    let scale = 1f64.max(map.zeta.norm().powi(n as i32));
    let res = finite_automorphism_residual(h, map, n)?;
    Ok(res <= 1e3 * float_tolerance() * scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere(n: usize) -> HermitianSeries<f64> {
        reference(1.0, n)
    }

    fn hyperboloid(n: usize) -> HermitianSeries<f64> {
        reference(-1.0, n)
    }

    fn map(angle: f64, re: f64, im: f64) -> MoebiusMapParams {
        MoebiusMapParams {
            angle,
            zeta: Complex64::new(re, im),
            q: 0.3,
        }
    }

    #[test]
    fn reference_coefficients() {
        let s = sphere(6);
        assert_eq!(s.gamma(1, 1).re, 1.0);
        assert_eq!(s.gamma(2, 2).re, -0.5);
        assert!((s.gamma(3, 3).re - 1.0 / 3.0).abs() < 1e-15);
        let h = hyperboloid(6);
        assert_eq!(h.gamma(2, 2).re, 0.5);
    }

    #[test]
    fn identity_rotation_and_translation() {
        assert!(verify_finite_automorphism(&sphere(8), &MoebiusMapParams::identity(), 8).unwrap());
        assert!(verify_finite_automorphism(&sphere(8), &map(1.3, 0.0, 0.0), 8).unwrap());
        assert!(verify_finite_automorphism(&sphere(6), &map(0.0, 0.5, 0.0), 6).unwrap());
        assert!(verify_finite_automorphism(&hyperboloid(6), &map(2.0, 0.3, -0.4), 6).unwrap());
    }

    #[test]
    fn unrecognized_series_is_rejected() {
        let res = finite_automorphism_residual(&sphere(6), &map(0.0, 0.5, 0.0), 6).unwrap();
        assert!(res < 1e-12);
        let mut bad = sphere(6).into_series();
        bad.set(2, 2, Complex64::new(-0.5 + 1e-3, 0.0));
        let bad = HermitianSeries::new(bad).unwrap();
        assert!(matches!(
            verify_finite_automorphism(&bad, &map(0.0, 0.5, 0.0), 6),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn hyperbolic_zeta_bound() {
        assert!(matches!(
            verify_finite_automorphism(&hyperboloid(6), &map(0.0, 1.0, 0.0), 6),
            Err(Error::InvalidArgument(_))
        ));
        assert!(verify_finite_automorphism(&sphere(6), &map(0.0, 3.0, 0.0), 6).unwrap());
    }

    #[test]
    fn mismatched_family_leaves_residual() {
        let m = map(0.4, 0.5, 0.2);
        assert!(residual_with_sign(&sphere(6), &m, 6, 1.0).unwrap() < 1e-12);
        assert!(residual_with_sign(&sphere(6), &m, 6, -1.0).unwrap() > 1e-3);
        assert!(residual_with_sign(&hyperboloid(6), &m, 6, 1.0).unwrap() > 1e-3);
    }
}
