//! The cubic `4 phi^3 + 4 tau phi^2 + (tau^2 - rho) phi - |a|^2 = 0` that selects
//! the closed-form branch, its discriminant locus, and the Stanton region.
//!
//! Sign convention: the standard discriminant of the cubic equals
//! `-16 * discriminant(t)`, so `discriminant(t) < 0` means three distinct real
//! roots and `discriminant(t) > 0` one real root with a complex pair.  Along
//! `|a| = 2` one has `discriminant(t) = -discriminant_a2(tau, rho)`.

use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::parameters::{ModuliPoint, SasakiTriple};
use crate::scalar::{abs2, convergents, Rational, Real};

/// Band around region boundaries that is reported as [`RegionLabel::Boundary`].
pub const REGION_BAND: f64 = 1e-9;

/// Relative radius below which computed roots are merged.
const CLUSTER_RADIUS: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CubicRoot {
    pub value: f64,
    pub multiplicity: u8,
    /// Exact value when the root is rational and the input was exact.
    #[serde(skip)]
    pub exact: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CubicRootSet {
    /// Real roots in ascending order.
    pub roots: Vec<CubicRoot>,
    pub complex_pair_present: bool,
}

impl CubicRootSet {
    pub fn real_values(&self) -> impl Iterator<Item = f64> + '_ {
        self.roots.iter().map(|r| r.value)
    }

    pub fn max_multiplicity(&self) -> u8 {
        self.roots.iter().map(|r| r.multiplicity).max().unwrap_or(0)
    }

    pub fn has_repeated_root(&self) -> bool {
        self.max_multiplicity() >= 2
    }

    fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity as usize).sum::<usize>() + if self.complex_pair_present { 2 } else { 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RegionLabel {
    Stanton,
    NonStanton,
    Boundary,
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RegionLabel::Stanton => "Stanton",
            RegionLabel::NonStanton => "NonStanton",
            RegionLabel::Boundary => "Boundary",
        };
        f.write_str(s)
    }
}

/// Point of the parametrised discriminant curve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiscriminantCurvePoint {
    pub phi: f64,
    pub sign: i8,
    pub tau: f64,
    pub rho: f64,
    pub a_abs: f64,
}

impl DiscriminantCurvePoint {
    pub fn triple(&self) -> SasakiTriple<f64> {
        SasakiTriple::new(self.tau, self.rho, num_complex::Complex::new(self.a_abs, 0.0))
    }

    pub fn discriminant(&self) -> f64 {
        discriminant(&self.triple())
    }
}

/// Coefficients `(4, 4 tau, tau^2 - rho, -|a|^2)`, highest degree first.
pub fn phi_cubic<R: Real>(t: &SasakiTriple<R>) -> [R; 4] {
    let four = R::from_i64(4);
    [
        four.clone(),
        four * t.tau.clone(),
        t.tau.clone() * t.tau.clone() - t.rho.clone(),
        -abs2(&t.a),
    ]
}

/// `27 a^4 - 18 a^2 rho tau + 2 a^2 tau^3 - rho^3 + 2 rho^2 tau^2 - rho tau^4`
/// with `a^2 = |a|^2`.
pub fn discriminant<R: Real>(t: &SasakiTriple<R>) -> R {
    discriminant_terms(t).into_iter().fold(R::zero(), |acc, x| acc + x)
}

fn discriminant_terms<R: Real>(t: &SasakiTriple<R>) -> [R; 6] {
    let a2 = abs2(&t.a);
    let tau = t.tau.clone();
    let rho = t.rho.clone();
    let tau2 = tau.clone() * tau.clone();
    [
        R::from_i64(27) * a2.clone() * a2.clone(),
        -(R::from_i64(18) * a2.clone() * rho.clone() * tau.clone()),
        R::from_i64(2) * a2 * tau2.clone() * tau.clone(),
        -(rho.clone() * rho.clone() * rho.clone()),
        R::from_i64(2) * rho.clone() * rho.clone() * tau2.clone(),
        -(rho * tau2.clone() * tau2),
    ]
}

/// Largest monomial magnitude of [`discriminant`]; the natural scale for
/// deciding whether it vanishes numerically.
pub fn discriminant_scale<R: Real>(t: &SasakiTriple<R>) -> f64 {
    discriminant_terms(t).iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
}

/// `rho^3 - 2 rho^2 tau^2 + rho tau^4 + 72 rho tau - 8 tau^3 - 432`, the `|a| = 2`
/// slice.  Equals `-discriminant((tau, rho, 2))`.
pub fn discriminant_a2<R: Real>(tau: &R, rho: &R) -> R {
    let t2 = tau.clone() * tau.clone();
    let r2 = rho.clone() * rho.clone();
    r2.clone() * rho.clone() - R::from_i64(2) * r2 * t2.clone() + rho.clone() * t2.clone() * t2.clone()
        + R::from_i64(72) * rho.clone() * tau.clone()
        - R::from_i64(8) * t2 * tau.clone()
        - R::from_i64(432)
}

/// Real roots of the branch cubic, with multiplicities.
pub fn solve_phi<R: Real>(t: &SasakiTriple<R>) -> CubicRootSet {
    let coeffs = phi_cubic(t);
    let out = match coeffs.iter().map(Real::to_rational).collect::<Option<Vec<_>>>() {
        Some(q) => solve_cubic_exact(&[q[0].clone(), q[1].clone(), q[2].clone(), q[3].clone()]),
        None => solve_cubic([coeffs[0].to_f64(), coeffs[1].to_f64(), coeffs[2].to_f64(), coeffs[3].to_f64()]),
    };
    debug_assert_eq!(out.total_multiplicity(), 3);
    out
}

fn simple(value: f64) -> CubicRoot {
    CubicRoot {
        value,
        multiplicity: 1,
        exact: None,
    }
}

fn finish(mut roots: Vec<CubicRoot>, complex_pair_present: bool) -> CubicRootSet {
    roots.sort_by(|a, b| a.value.total_cmp(&b.value));
    CubicRootSet {
        roots,
        complex_pair_present,
    }
}

/// Monic real cubic `x^3 + b x^2 + c x + d`.
fn eval_monic(b: f64, c: f64, d: f64, x: f64) -> f64 {
    ((x + b) * x + c) * x + d
}

fn newton_polish(b: f64, c: f64, d: f64, x: f64) -> f64 {
    let f = eval_monic(b, c, d, x);
    let df = (3.0 * x + 2.0 * b) * x + c;
    if df == 0.0 {
        return x;
    }
    let y = x - f / df;
    if y.is_finite() && eval_monic(b, c, d, y).abs() <= f.abs() {
        y
    } else {
        x
    }
}

fn monic_discriminant(b: f64, c: f64, d: f64) -> f64 {
    18.0 * b * c * d - 4.0 * b * b * b * d + b * b * c * c - 4.0 * c * c * c - 27.0 * d * d
}

/// Float solver for `coeffs[0] x^3 + ... + coeffs[3]`, `coeffs[0] != 0`.
///
/// Trigonometric (three real roots) or Cardano (one real root) closed form,
/// one Newton step per simple root.  A repeated root is declared when the
/// discriminant is below `1e-12 max(1, |coeffs|)^4`; double and simple roots
/// then come from their rational expressions in the coefficients.
pub fn solve_cubic(coeffs: [f64; 4]) -> CubicRootSet {
    let lead = coeffs[0];
    let (b, c, d) = (coeffs[1] / lead, coeffs[2] / lead, coeffs[3] / lead);
    let scale = 1f64.max(b.abs()).max(c.abs()).max(d.abs());

    if d == 0.0 {
        return solve_with_zero_root(b, c, scale);
    }

    let disc = monic_discriminant(b, c, d);
    if disc.abs() <= 1e-12 * scale.powi(4) {
        return repeated_roots(b, c, d, scale);
    }

    // depressed cubic y^3 + p y + q with x = y - b/3
    let shift = b / 3.0;
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;

    if disc > 0.0 {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        let roots = (0..3)
            .map(|k| {
                let y = m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos();
                simple(newton_polish(b, c, d, y - shift))
            })
            .collect();
        finish(roots, false)
    } else {
        let half_q = q / 2.0;
        let root_disc = (half_q * half_q + p * p * p / 27.0).max(0.0).sqrt();
        // choose the sign avoiding cancellation
        let w = -half_q - half_q.signum() * root_disc;
        let u = w.cbrt();
        let y = if u == 0.0 { 0.0 } else { u - p / (3.0 * u) };
        finish(vec![simple(newton_polish(b, c, d, y - shift))], true)
    }
}

fn repeated_roots(b: f64, c: f64, d: f64, scale: f64) -> CubicRootSet {
    let p = b * b - 3.0 * c;
    let triple = || {
        finish(
            vec![CubicRoot {
                value: -b / 3.0,
                multiplicity: 3,
                exact: None,
            }],
            false,
        )
    };
    if p.abs() <= 1e-14 * scale * scale {
        return triple();
    }
    let double = (9.0 * d - b * c) / (2.0 * p);
    let single = (4.0 * b * c - 9.0 * d - b * b * b) / p;
    if (double - single).abs() <= CLUSTER_RADIUS * 1f64.max(double.abs()) {
        return triple();
    }
    finish(
        vec![
            CubicRoot {
                value: double,
                multiplicity: 2,
                exact: None,
            },
            simple(newton_polish(b, c, d, single)),
        ],
        false,
    )
}

/// `x (x^2 + b x + c)`.
fn solve_with_zero_root(b: f64, c: f64, scale: f64) -> CubicRootSet {
    if c == 0.0 {
        return if b == 0.0 {
            finish(
                vec![CubicRoot {
                    value: 0.0,
                    multiplicity: 3,
                    exact: None,
                }],
                false,
            )
        } else {
            finish(
                vec![
                    CubicRoot {
                        value: 0.0,
                        multiplicity: 2,
                        exact: None,
                    },
                    simple(-b),
                ],
                false,
            )
        };
    }
    let disc = b * b - 4.0 * c;
    if disc.abs() <= 1e-12 * scale * scale {
        return finish(
            vec![
                simple(0.0),
                CubicRoot {
                    value: -b / 2.0,
                    multiplicity: 2,
                    exact: None,
                },
            ],
            false,
        );
    }
    if disc < 0.0 {
        return finish(vec![simple(0.0)], true);
    }
    let sq = disc.sqrt();
    // stable quadratic roots
    let big = -0.5 * (b + b.signum() * sq);
    let (r1, r2) = if big == 0.0 { (0.0, 0.0) } else { (big, c / big) };
    finish(vec![simple(0.0), simple(r1), simple(r2)], false)
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

fn eval_exact(c: &[Rational; 4], x: &Rational) -> Rational {
    ((&c[0] * x + &c[1]) * x + &c[2]) * x + &c[3]
}

fn exact_root(value: Rational, multiplicity: u8) -> CubicRoot {
    CubicRoot {
        value: Real::to_f64(&value),
        multiplicity,
        exact: Some(value),
    }
}

/// Exact multiplicities for rational coefficients.  Repeated roots of a
/// rational cubic are rational and are returned exactly; simple roots are
/// computed in floating point and promoted to exact rationals when a
/// continued-fraction convergent verifies exactly.
pub fn solve_cubic_exact(c: &[Rational; 4]) -> CubicRootSet {
    let b = &c[1] / &c[0];
    let cc = &c[2] / &c[0];
    let d = &c[3] / &c[0];
    let three = Rational::from_i64(3);

    if d.is_zero() {
        let disc = &b * &b - Rational::from_i64(4) * &cc;
        let zero = Rational::zero();
        if cc.is_zero() {
            return if b.is_zero() {
                finish(vec![exact_root(zero, 3)], false)
            } else {
                finish(vec![exact_root(zero, 2), exact_root(-b, 1)], false)
            };
        }
        if disc.is_zero() {
            return finish(vec![exact_root(zero, 1), exact_root(-b / Rational::from_i64(2), 2)], false);
        }
        if disc.is_negative() {
            return finish(vec![exact_root(zero, 1)], true);
        }
        if let Some(sq) = rational_sqrt(&disc) {
            let two = Rational::from_i64(2);
            return finish(
                vec![
                    exact_root(zero, 1),
                    exact_root((-&b + &sq) / &two, 1),
                    exact_root((-&b - sq) / two, 1),
                ],
                false,
            );
        }
    }

    let disc = Rational::from_i64(18) * &b * &cc * &d - Rational::from_i64(4) * &b * &b * &b * &d + &b * &b * &cc * &cc
        - Rational::from_i64(4) * &cc * &cc * &cc
        - Rational::from_i64(27) * &d * &d;
    if disc.is_zero() {
        let p = &b * &b - &three * &cc;
        if p.is_zero() {
            return finish(vec![exact_root(-b / three, 3)], false);
        }
        let double = (Rational::from_i64(9) * &d - &b * &cc) / (Rational::from_i64(2) * &p);
        let single = (Rational::from_i64(4) * &b * &cc - Rational::from_i64(9) * &d - &b * &b * &b) / &p;
        return finish(vec![exact_root(double, 2), exact_root(single, 1)], false);
    }

    let approx = solve_cubic([1.0, Real::to_f64(&b), Real::to_f64(&cc), Real::to_f64(&d)]);
    let monic = [Rational::from_i64(1), b, cc, d];
    let want_real = if disc.is_positive() { 3 } else { 1 };
    let mut roots: Vec<CubicRoot> = approx
        .roots
        .iter()
        .map(|r| {
            let exact = convergents(r.value, 1 << 40)
                .into_iter()
                .rev()
                .find(|cand| eval_exact(&monic, cand).is_zero());
            CubicRoot {
                value: exact.as_ref().map_or(r.value, Real::to_f64),
                multiplicity: 1,
                exact,
            }
        })
        .collect();
    // The float solver may see a near-double root; the exact discriminant is
    // authoritative for the count.
    if roots.len() != want_real || approx.has_repeated_root() {
        roots = resplit(&monic, want_real);
    }
    finish(roots, want_real == 1)
}

/// Fallback for float/exact disagreement near the discriminant locus:
/// bracket sign changes of the exact polynomial on a fine grid around the
/// float estimates and bisect.
fn resplit(monic: &[Rational; 4], want_real: usize) -> Vec<CubicRoot> {
    let f = |x: f64| {
        let x = Rational::from_f64(x);
        Real::to_f64(&eval_exact(monic, &x))
    };
    let b = Real::to_f64(&monic[1]);
    let c = Real::to_f64(&monic[2]);
    let d = Real::to_f64(&monic[3]);
    let bound = 1.0 + b.abs().max(c.abs()).max(d.abs());
    let n = 20000;
    let mut out = Vec::new();
    let mut prev_x = -bound;
    let mut prev = f(prev_x);
    for k in 1..=n {
        let x = -bound + 2.0 * bound * k as f64 / n as f64;
        let fx = f(x);
        if prev == 0.0 || prev.signum() != fx.signum() {
            let (mut lo, mut hi) = (prev_x, x);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if f(lo).signum() == f(mid).signum() && f(mid) != 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            out.push(simple(0.5 * (lo + hi)));
        }
        prev_x = x;
        prev = fx;
        if out.len() == want_real {
            break;
        }
    }
    out
}

/// Region of a moduli point relative to Stanton's family.
pub fn stanton_membership(m: &ModuliPoint) -> RegionLabel {
    region_of(&m.to_triple())
}

/// Region classification for an arbitrary triple (scaling invariant).
pub fn region_of<R: Real>(t: &SasakiTriple<R>) -> RegionLabel {
    let t = t.to_f64();
    let roots = solve_phi(&t);
    let mut label = RegionLabel::NonStanton;
    for phi in roots.real_values() {
        let s = -t.rho + (2.0 * t.tau + 3.0 * phi) * phi;
        let scale = 1.0 + t.tau.abs() + t.rho.abs().sqrt() + t.a.norm().powf(1.0 / 3.0);
        let band_phi = REGION_BAND * scale;
        let band_s = REGION_BAND * scale * scale;
        if phi > band_phi && s > band_s {
            return RegionLabel::Stanton;
        }
        if phi >= -band_phi && s >= -band_s {
            label = RegionLabel::Boundary;
        }
    }
    label
}

fn check_positive(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} must be positive, got {x}")))
    }
}

fn check_sign(sign: i8) -> Result<()> {
    if sign == 1 || sign == -1 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("sign must be +1 or -1, got {sign}")))
    }
}

pub fn curve_point(a_abs: f64, phi: f64, sign: i8) -> Result<DiscriminantCurvePoint> {
    check_positive("a_abs", a_abs)?;
    check_positive("phi", phi)?;
    check_sign(sign)?;
    let sq = phi.sqrt();
    let sg = sign as f64;
    Ok(DiscriminantCurvePoint {
        phi,
        sign,
        tau: sg * a_abs / sq - phi,
        rho: sg * 2.0 * a_abs * sq + phi * phi,
        a_abs,
    })
}

/// Points of `tau = ±|a|/sqrt(phi) - phi`, `rho = ±2|a| sqrt(phi) + phi^2`, in
/// input order.
pub fn curve_points(a_abs: f64, phis: &[f64], sign: i8) -> Result<Vec<DiscriminantCurvePoint>> {
    phis.par_iter().map(|&phi| curve_point(a_abs, phi, sign)).collect()
}

/// Rescales `(tau, |a|, rho)` by the positive `c` putting it on the moduli
/// surface and returns the disk coordinates.
pub fn project_to_moduli(tau: f64, a_abs: f64, rho: f64) -> Result<(f64, f64)> {
    if a_abs < 0.0 {
        return Err(Error::InvalidArgument("a_abs must be non-negative".into()));
    }
    let norm8 = tau.powi(4) + a_abs.powf(8.0 / 3.0) + rho * rho;
    if norm8 == 0.0 {
        return Err(Error::InvalidArgument("cannot project the Heisenberg point (0, 0, 0)".into()));
    }
    let c = norm8.powf(-1.0 / 8.0);
    Ok((c * c * tau, c.powi(4) * rho))
}

pub const CSV_HEADER: &str = "phi,sign,tau,rho,tau_moduli,rho_moduli,discriminant";

/// CSV rows (with header) for each sign in turn; LF line endings, shortest
/// round-trip floats with exponent notation for very small or large values.
pub fn curve_csv(a_abs: f64, phis: &[f64], signs: &[i8]) -> Result<String> {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for &sign in signs {
        let rows: Vec<String> = curve_points(a_abs, phis, sign)?
            .par_iter()
            .map(|p| {
                let (tm, rm) = project_to_moduli(p.tau, p.a_abs, p.rho)?;
                Ok(format!("{:?},{},{:?},{:?},{:?},{:?},{:?}", p.phi, p.sign, p.tau, p.rho, tm, rm, p.discriminant()))
            })
            .collect::<Result<_>>()?;
        for row in rows {
            out.push_str(&row);
            out.push('\n');
        }
    }
    Ok(out)
}

/// Relative position of the double and the simple root at a curve point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RootOrder {
    DoubleAboveSimple,
    DoubleBelowSimple,
    /// Triple root.
    Cusp,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchSample {
    pub phi: f64,
    pub tau: f64,
    pub rho: f64,
    pub roots: CubicRootSet,
    pub order: RootOrder,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchEvidence {
    pub a_abs: f64,
    pub samples: Vec<BranchSample>,
    /// The double root sits above the simple root on one sample and below on
    /// another.
    pub order_flip: bool,
    pub cusp: bool,
}

/// Root configuration on the lower (`sign = -1`) branch at `phi`.
pub fn branch_sample(a_abs: f64, phi: f64) -> Result<BranchSample> {
    let p = curve_point(a_abs, phi, -1)?;
    // The cusp sits where d tau / d phi = 0, i.e. phi^{3/2} = |a|/2.
    let cusp_phi = (a_abs / 2.0).powf(2.0 / 3.0);
    let roots = if (phi - cusp_phi).abs() <= 1e-12 * cusp_phi {
        CubicRootSet {
            roots: vec![CubicRoot {
                value: -p.tau / 3.0,
                multiplicity: 3,
                exact: None,
            }],
            complex_pair_present: false,
        }
    } else {
        solve_phi(&p.triple())
    };
    let order = match roots.roots.iter().find(|r| r.multiplicity >= 2) {
        Some(r) if r.multiplicity == 3 => RootOrder::Cusp,
        Some(double) => {
            let single = roots
                .roots
                .iter()
                .find(|r| r.multiplicity == 1)
                .ok_or_else(|| Error::Internal("double root without simple root".into()))?;
            if double.value > single.value {
                RootOrder::DoubleAboveSimple
            } else {
                RootOrder::DoubleBelowSimple
            }
        }
        None => {
            return Err(Error::Internal(format!(
                "no repeated root detected on the discriminant curve at phi = {phi}"
            )))
        }
    };
    Ok(BranchSample {
        phi,
        tau: p.tau,
        rho: p.rho,
        roots,
        order,
    })
}

/// Numerical evidence that real roots do not continue across the cusp: the
/// double root changes side relative to the simple root.
pub fn branch_evidence(a_abs: f64, phi_low: f64, phi_high: Option<f64>) -> Result<BranchEvidence> {
    let mut samples = vec![branch_sample(a_abs, phi_low)?];
    if let Some(high) = phi_high {
        samples.push(branch_sample(a_abs, high)?);
    }
    let cusp = samples.iter().any(|s| s.order == RootOrder::Cusp);
    let above = samples.iter().any(|s| s.order == RootOrder::DoubleAboveSimple);
    let below = samples.iter().any(|s| s.order == RootOrder::DoubleBelowSimple);
    Ok(BranchEvidence {
        a_abs,
        samples,
        order_flip: above && below,
        cusp,
    })
}
