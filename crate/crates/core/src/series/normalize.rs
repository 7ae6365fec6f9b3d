use num_complex::Complex;

use crate::error::{Error, Result};
use crate::ring::Coeff;
use crate::scalar::{cx_real, Real};
use crate::series::bivariate::BiSeries;
use crate::series::hermitian::HermitianSeries;
use crate::series::univariate::VSeries;

/// Brings a rigid defining series `v = psi(z, zbar)` to rigid normal form.
///
/// 1. `w -> w - 2i psi(z, 0)` removes the harmonic part `psi(z,0) + conj`.
/// 2. `w -> w / gamma_11` makes the Levi form 1.
/// 3. `z -> dpsi/dzbar (z, 0)` removes the `(k, 1)` terms; the new series is
///    obtained by substituting the reverted map.
pub fn stanton_normalize<R: Real>(psi: &HermitianSeries<R>) -> Result<HermitianSeries<R>> {
    let n = psi.order();
    let g11 = psi.gamma(1, 1).re;
    if g11.negligible(1f64.max(psi.series().max_magnitude()), crate::scalar::float_tolerance()) {
        return Err(Error::LeviDegenerate);
    }

    let mut harmonic = BiSeries::zero(n);
    for k in 1..=n {
        let c = psi.gamma(k, 0);
        harmonic.set(k, 0, c.clone());
        harmonic.set(0, k, c.conj());
    }
    let scaled = psi.series().sub(&harmonic).scale(&cx_real(R::one() / g11));

    let f = VSeries::from_coeffs((0..=n).map(|k| scaled.get(k, 1)).collect(), n);
    let g = f.revert().ok_or(Error::LeviDegenerate)?;
    let out = scaled.substitute(&g, &g.conj());
    HermitianSeries::new(clean(out))
}

/// The substitution produces (k,0) and (k,1) terms that cancel only up to
/// rounding; zero them when they are rounding noise.
fn clean<R: Real>(mut s: BiSeries<Complex<R>>) -> BiSeries<Complex<R>> {
    if R::EXACT {
        return s;
    }
    let scale = 1f64.max(s.max_magnitude());
    let tol = 1e-12;
    let n = s.order();
    for k in 0..=n {
        for l in [0usize, 1] {
            if k + l <= n && (k, l) != (1, 1) {
                for (a, b) in [(k, l), (l, k)] {
                    if Coeff::negligible(&s.get(a, b), scale, tol) {
                        s.set(a, b, Coeff::zero());
                    }
                }
            }
        }
    }
    s
}
