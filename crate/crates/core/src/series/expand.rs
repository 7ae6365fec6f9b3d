use std::sync::Arc;

use num_complex::Complex;

use crate::cubic_discriminant::{phi_cubic, solve_phi};
use crate::error::{Error, Result};
use crate::parameters::{closedform_from_sasaki, ClosedFormParams, SasakiTriple, StantonParams};
use crate::ring::{Coeff, CubicExt, CubicModulus, QI};
use crate::scalar::{cx_real, Rational, Real};
use crate::series::bivariate::BiSeries;
use crate::series::hermitian::HermitianSeries;
use crate::series::univariate::VSeries;

pub const DEFAULT_ORDER: usize = 8;

/// Tolerance for "this residual coefficient is zero" in the float solver,
/// relative to the size of the current solution.
const RESIDUAL_TOL: f64 = 1e-12;

/// The `v`-dependent factors of the closed-form equation, all real-analytic in
/// `s = r^2`:
///
/// * `S = sin(2rv)/(2r) = sum (-4s)^k v^{2k+1}/(2k+1)!`
/// * `C = cos(2rv) = sum (-4s)^k v^{2k}/(2k)!`
/// * `E = exp(-2 theta v)`
/// * `Q = (E - C + 2 theta S)/(s + theta^2)`, produced by `Q'' = 4E - 4sQ`,
///   `Q(0) = Q'(0) = 0`, which stays regular where `s + theta^2 = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct VFactors<C> {
    pub s: VSeries<C>,
    pub c: VSeries<C>,
    pub e: VSeries<C>,
    pub q: VSeries<C>,
}

fn factorials<C: Coeff>(n: usize) -> Vec<C> {
    // 1/k! as exact rationals
    let mut out = Vec::with_capacity(n + 1);
    let mut f = Rational::from_i64(1);
    for k in 0..=n {
        if k > 0 {
            f = f / Rational::from_i64(k as i64);
        }
        out.push(C::from_rational(&f));
    }
    out
}

fn v_factors<C: Coeff>(theta: &C, s: &C, n: usize) -> VFactors<C> {
    let inv_fact = factorials::<C>(n);
    let minus_4s = -(C::from_int(4) * s.clone());
    let minus_2theta = -(C::from_int(2) * theta.clone());

    let mut sv = VSeries::zero(n);
    let mut cv = VSeries::zero(n);
    let mut pow = C::one();
    for k in 0..=n / 2 {
        cv.set(2 * k, pow.clone() * inv_fact[2 * k].clone());
        if 2 * k + 1 <= n {
            sv.set(2 * k + 1, pow.clone() * inv_fact[2 * k + 1].clone());
        }
        pow = pow * minus_4s.clone();
    }

    let mut ev = VSeries::zero(n);
    let mut pow = C::one();
    for (k, f) in inv_fact.iter().enumerate() {
        ev.set(k, pow.clone() * f.clone());
        pow = pow * minus_2theta.clone();
    }

    let mut q = vec![C::zero(); n + 1];
    for k in 2..=n {
        let num = C::from_int(4) * ev.coeff(k - 2) - C::from_int(4) * s.clone() * q[k - 2].clone();
        q[k] = num * C::from_ratio(1, (k * (k - 1)) as i64);
    }
    VFactors {
        s: sv,
        c: cv,
        e: ev,
        q: VSeries::from_coeffs(q, n),
    }
}

/// `S, C, E, Q` for real `theta`, `s`, truncated at `v^n`.
pub fn build_v_factors<R: Real>(theta: &R, s: &R, n: usize) -> VFactors<Complex<R>> {
    v_factors(&cx_real(theta.clone()), &cx_real(s.clone()), n)
}

/// A defining equation `F(z, zbar, v) = 0` with `dF/dv = 1` at the origin.
#[derive(Clone, Debug)]
pub enum DefiningFunction<C> {
    /// `(1 - 4 phi |z|^2) S - E |z|^2 - (phi - abar z - a zbar + 4 phi (phi - theta) |z|^2) Q`.
    Sphere {
        theta: C,
        phi: C,
        a: C,
        factors: VFactors<C>,
    },
    /// Stanton's equation cleared of its denominators:
    /// `S - |z|^2 E g1 g2 - |b|^2 Q - bbar z g1 P+ - b zbar g2 P-`
    /// with `g1 = 1/(1 - 2i bbar z)`, `g2 = 1/(1 + 2i b zbar)` and
    /// `P± = (E - exp(±2irv)) / (r ∓ i theta)` as entire series.
    Stanton {
        b: C,
        factors: VFactors<C>,
        p_plus: VSeries<C>,
        p_minus: VSeries<C>,
    },
}

fn truncate_v<C: Coeff>(f: &VSeries<C>, n: usize) -> VSeries<C> {
    // v has weight 2, so v^k with 2k > n never contributes
    VSeries::from_coeffs(f.coeffs().iter().take(n / 2 + 1).cloned().collect(), n / 2)
}

impl<C: Coeff> DefiningFunction<C> {
    pub fn sphere(theta: C, s: C, phi: C, a: C, n: usize) -> Self {
        let factors = v_factors(&theta, &s, n / 2);
        DefiningFunction::Sphere { theta, phi, a, factors }
    }

    pub fn stanton(theta: C, r: C, b: C, n: usize) -> Self {
        let m = n / 2;
        let s = r.clone() * r.clone();
        let factors = v_factors(&theta, &s, m);
        let x = -(C::from_int(2) * theta);
        let y = C::from_int(2) * C::i() * r;
        let inv_fact = factorials::<C>(m);
        let divided = |y: &C| {
            let mut out = vec![C::zero(); m + 1];
            for (k, f) in inv_fact.iter().enumerate().skip(1) {
                let mut sum = C::zero();
                for j in 0..k {
                    sum = sum + x.pow(j as u32) * y.pow((k - 1 - j) as u32);
                }
                out[k] = sum * f.clone();
            }
            VSeries::from_coeffs(out, m)
        };
        let two_i = C::from_int(2) * C::i();
        let p_plus = divided(&y).scale(&-two_i.clone());
        let p_minus = divided(&-y).scale(&two_i);
        DefiningFunction::Stanton {
            b,
            factors,
            p_plus,
            p_minus,
        }
    }

    /// `F(z, zbar, v)` for the series `v`, truncated at the order of `v`.
    pub fn evaluate(&self, v: &BiSeries<C>) -> BiSeries<C> {
        let n = v.order();
        let zz = BiSeries::zzbar(n);
        let at = |f: &VSeries<C>| v.compose_into(&truncate_v(f, n));
        match self {
            DefiningFunction::Sphere { theta, phi, a, factors } => {
                let four_phi = C::from_int(4) * phi.clone();
                let lead = BiSeries::constant(n, C::one()).sub(&zz.scale(&four_phi));
                let mut coef = BiSeries::constant(n, phi.clone());
                coef.set(1, 0, -a.conj());
                coef.set(0, 1, -a.clone());
                coef.set(1, 1, four_phi * (phi.clone() - theta.clone()));
                lead.mul(&at(&factors.s)).sub(&at(&factors.e).mul(&zz)).sub(&coef.mul(&at(&factors.q)))
            }
            DefiningFunction::Stanton {
                b,
                factors,
                p_plus,
                p_minus,
            } => {
                let bb = b.conj();
                let two_i = C::from_int(2) * C::i();
                let mut g1 = BiSeries::zero(n);
                let mut g2 = BiSeries::zero(n);
                let u1 = two_i.clone() * bb.clone();
                let u2 = -(two_i * b.clone());
                for k in 0..=n {
                    g1.set(k, 0, u1.pow(k as u32));
                    g2.set(0, k, u2.pow(k as u32));
                }
                let phi = b.clone() * bb.clone();
                let bz = BiSeries::monomial(n, 1, 0, bb);
                let bzb = BiSeries::monomial(n, 0, 1, b.clone());
                at(&factors.s)
                    .sub(&zz.mul(&at(&factors.e)).mul(&g1).mul(&g2))
                    .sub(&at(&factors.q).scale(&phi))
                    .sub(&bz.mul(&g1).mul(&at(p_plus)))
                    .sub(&bzb.mul(&g2).mul(&at(p_minus)))
            }
        }
    }

    /// Solves `F(z, zbar, v) = 0` for `v` by `v <- v - F(v)` from `v = |z|^2`.
    ///
    /// Every step must raise the lowest degree of the residual; otherwise the
    /// equation is not of the expected shape and an internal error is returned.
    pub fn solve(&self, n: usize) -> Result<BiSeries<C>> {
        let mut v = BiSeries::zzbar(n);
        let mut prev: Option<usize> = None;
        for _ in 0..=n + 1 {
            let residual = self.evaluate(&v);
            let scale = 1f64.max(v.max_magnitude());
            let Some(degree) = residual.low_degree(scale, RESIDUAL_TOL) else {
                return Ok(v);
            };
            if prev.is_some_and(|p| degree <= p) {
                return Err(Error::Internal(format!(
                    "series iteration stalled at degree {degree}: defining equation has the wrong grading"
                )));
            }
            prev = Some(degree);
            v = v.sub(&residual);
        }
        Err(Error::Internal("series iteration did not converge".into()))
    }
}

fn check_order(n: usize) -> Result<()> {
    if (2..=32).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("series order {n} outside [2, 32]")))
    }
}

/// Averages `gamma_kl` with `conj(gamma_lk)` to remove rounding asymmetry.
fn symmetrize<R: Real>(g: BiSeries<Complex<R>>) -> BiSeries<Complex<R>> {
    if R::EXACT {
        return g;
    }
    let half = Complex::new(R::ratio(1, 2), R::zero());
    g.add(&g.conj()).scale(&half)
}

/// Rigid normal form of the closed-form sphere with parameters `cf`.
pub fn expand_sphere<R: Real>(cf: &ClosedFormParams<R>, n: usize) -> Result<HermitianSeries<R>> {
    check_order(n)?;
    cf.check_consistency()?;
    let f = DefiningFunction::sphere(
        cx_real(cf.theta.clone()),
        cx_real(cf.s.clone()),
        cx_real(cf.phi.clone()),
        cf.a.clone(),
        n,
    );
    HermitianSeries::new(symmetrize(f.solve(n)?))
}

/// Rigid normal form of Stanton's sphere with parameters `sp`.
pub fn expand_stanton<R: Real>(sp: &StantonParams<R>, n: usize) -> Result<HermitianSeries<R>> {
    check_order(n)?;
    let f = DefiningFunction::stanton(cx_real(sp.theta.clone()), cx_real(sp.r.clone()), sp.b.clone(), n);
    HermitianSeries::new(symmetrize(f.solve(n)?))
}

/// One expansion per real root of the branch cubic.
#[derive(Clone, Debug)]
pub struct BranchExpansion<R: Real> {
    pub params: ClosedFormParams<R>,
    pub series: HermitianSeries<R>,
}

/// Expands every real branch in floating point.
pub fn expand_float_branches<R: Real>(t: &SasakiTriple<R>, n: usize) -> Result<Vec<BranchExpansion<f64>>> {
    let t = t.to_f64();
    solve_phi(&t)
        .real_values()
        .map(|phi| {
            let params = closedform_from_sasaki(&t, phi)?;
            let series = expand_sphere(&params, n)?;
            Ok(BranchExpansion { params, series })
        })
        .collect()
}

/// Expands every rational real branch exactly.
pub fn expand_rational_branches(t: &SasakiTriple<Rational>, n: usize) -> Result<Vec<BranchExpansion<Rational>>> {
    solve_phi(t)
        .roots
        .iter()
        .filter_map(|r| r.exact.clone())
        .map(|phi| {
            let params = closedform_from_sasaki(t, phi)?;
            let series = expand_sphere(&params, n)?;
            Ok(BranchExpansion { params, series })
        })
        .collect()
}

/// Exact expansion with `phi` a formal root of the branch cubic, i.e. in
/// `Q(i)[x]/(cubic)`.  All three roots are handled at once; the result is
/// returned only if every coefficient is independent of the root.
pub fn expand_sphere_all_branches(t: &SasakiTriple<Rational>, n: usize) -> Result<HermitianSeries<Rational>> {
    check_order(n)?;
    let [lead, b, c, d] = phi_cubic(t);
    let modulus = Arc::new(CubicModulus::from_coefficients(&lead, &b, &c, &d));
    let phi = CubicExt::generator(modulus);
    let real = |q: &Rational| CubicExt::from_rational(q);
    let tau = real(&t.tau);
    let theta = tau.clone() + CubicExt::from_int(3) * phi.clone();
    let s = -real(&t.rho) + (CubicExt::from_int(2) * tau + CubicExt::from_int(3) * phi.clone()) * phi.clone();
    let a = CubicExt::constant(t.a.clone());
    let v = DefiningFunction::sphere(theta, s, phi, a, n).solve(n)?;
    let mut out = BiSeries::<QI>::zero(n);
    for (k, l, coeff) in v.terms() {
        let value = coeff.as_constant().ok_or_else(|| {
            Error::Internal(format!("gamma_{k}{l} depends on the choice of cubic root: {:?}", coeff.coefficients()))
        })?;
        out.set(k, l, value);
    }
    HermitianSeries::new(out)
}
