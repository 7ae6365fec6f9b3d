//! Coefficient rings for the series engine.
//!
//! Expanding a defining equation only ever divides by integers, so the series
//! code runs over any commutative ring with an imaginary unit and a
//! conjugation.  Besides `Complex<R>` this includes [`CubicExt`], the ring
//! `Q(i)[x] / (x^3 + p2 x^2 + p1 x + p0)` in which `x` stands for *every* root
//! of a rational cubic at once.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex;
use num_traits::Zero;

use crate::scalar::{cx_to_f64, Complex64, Rational, Real};

pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn zero() -> Self;
    fn one() -> Self;
    fn i() -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn conj(&self) -> Self;
    /// Exact zero test (float: bitwise zero).
    fn is_zero(&self) -> bool;
    /// Size used for tolerance decisions.
    fn magnitude(&self) -> f64;
    /// Multiplicative inverse where one exists in the ring.
    fn inverse(&self) -> Option<Self>;
    /// Whether equality tests on this ring are exact.
    fn exact() -> bool;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_i64(n))
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(&Rational::ratio(n, d))
    }

    /// Zero within `tol * scale` (exact rings: exactly zero).
    fn negligible(&self, scale: f64, tol: f64) -> bool {
        if Self::exact() {
            self.is_zero()
        } else {
            self.magnitude() <= tol * scale
        }
    }

    fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }
}

impl<R: Real> Coeff for Complex<R> {
    fn zero() -> Self {
        Complex::new(R::zero(), R::zero())
    }
    fn one() -> Self {
        Complex::new(R::one(), R::zero())
    }
    fn i() -> Self {
        Complex::new(R::zero(), R::one())
    }
    fn from_rational(q: &Rational) -> Self {
        Complex::new(R::from_rational(q), R::zero())
    }
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn magnitude(&self) -> f64 {
        cx_to_f64(self).norm()
    }
    fn inverse(&self) -> Option<Self> {
        if Coeff::is_zero(self) {
            None
        } else {
            Some(Complex::new(R::one(), R::zero()) / self.clone())
        }
    }
    fn exact() -> bool {
        R::EXACT
    }
}

pub type QI = Complex<Rational>;

/// Monic cubic modulus `x^3 + c[2] x^2 + c[1] x + c[0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicModulus {
    pub c: [Rational; 3],
}

impl CubicModulus {
    /// Modulus of `lead x^3 + b x^2 + c x + d`, `lead != 0`.
    pub fn from_coefficients(lead: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Self {
        CubicModulus {
            c: [d / lead, c / lead, b / lead],
        }
    }
}

/// Element `c0 + c1 x + c2 x^2` of `Q(i)[x]/(m(x))`.
///
/// Constants carry no modulus so that `zero()`/`one()` need no context; any
/// product involving a non-constant picks up the modulus from that factor.
#[derive(Clone, Debug)]
pub struct CubicExt {
    coeffs: [QI; 3],
    modulus: Option<Arc<CubicModulus>>,
}

impl CubicExt {
    pub fn constant(c: QI) -> Self {
        CubicExt {
            coeffs: [c, Coeff::zero(), Coeff::zero()],
            modulus: None,
        }
    }

    /// The class of `x` itself.
    pub fn generator(modulus: Arc<CubicModulus>) -> Self {
        CubicExt {
            coeffs: [Coeff::zero(), Coeff::one(), Coeff::zero()],
            modulus: Some(modulus),
        }
    }

    pub fn coefficients(&self) -> &[QI; 3] {
        &self.coeffs
    }

    /// The value if the element does not depend on `x`.
    pub fn as_constant(&self) -> Option<QI> {
        if Coeff::is_zero(&self.coeffs[1]) && Coeff::is_zero(&self.coeffs[2]) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Evaluates at a (numerical) root of the modulus.
    pub fn eval(&self, x: f64) -> Complex64 {
        let c: Vec<Complex64> = self.coeffs.iter().map(cx_to_f64).collect();
        c[0] + c[1] * x + c[2] * x * x
    }

    fn join_modulus(&self, other: &Self) -> Option<Arc<CubicModulus>> {
        match (&self.modulus, &other.modulus) {
            (Some(m), Some(n)) => {
                debug_assert!(Arc::ptr_eq(m, n) || m == n, "mixing distinct cubic extensions");
                Some(m.clone())
            }
            (Some(m), None) | (None, Some(m)) => Some(m.clone()),
            (None, None) => None,
        }
    }
}

impl PartialEq for CubicExt {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Add for CubicExt {
    type Output = CubicExt;
    fn add(self, rhs: CubicExt) -> CubicExt {
        let modulus = self.join_modulus(&rhs);
        let [a0, a1, a2] = self.coeffs;
        let [b0, b1, b2] = rhs.coeffs;
        CubicExt {
            coeffs: [a0 + b0, a1 + b1, a2 + b2],
            modulus,
        }
    }
}

impl Sub for CubicExt {
    type Output = CubicExt;
    fn sub(self, rhs: CubicExt) -> CubicExt {
        self + (-rhs)
    }
}

impl Neg for CubicExt {
    type Output = CubicExt;
    fn neg(self) -> CubicExt {
        let [a0, a1, a2] = self.coeffs;
        CubicExt {
            coeffs: [-a0, -a1, -a2],
            modulus: self.modulus,
        }
    }
}

impl Mul for CubicExt {
    type Output = CubicExt;
    fn mul(self, rhs: CubicExt) -> CubicExt {
        let modulus = self.join_modulus(&rhs);
        let a = &self.coeffs;
        let b = &rhs.coeffs;
        let mut prod: [QI; 5] = std::array::from_fn(|_| Coeff::zero());
        for i in 0..3 {
            if Coeff::is_zero(&a[i]) {
                continue;
            }
            for j in 0..3 {
                if Coeff::is_zero(&b[j]) {
                    continue;
                }
                prod[i + j] = prod[i + j].clone() + a[i].clone() * b[j].clone();
            }
        }
        if let Some(m) = &modulus {
            // x^3 = -(c2 x^2 + c1 x + c0)
            for deg in (3..5).rev() {
                let top = std::mem::replace(&mut prod[deg], Coeff::zero());
                if Coeff::is_zero(&top) {
                    continue;
                }
                for (k, ck) in m.c.iter().enumerate() {
                    let t = top.clone() * Complex::new(ck.clone(), Rational::zero());
                    prod[deg - 3 + k] = prod[deg - 3 + k].clone() - t;
                }
            }
        } else {
            debug_assert!(prod[3..].iter().all(Coeff::is_zero));
        }
        let [c0, c1, c2, _, _] = prod;
        CubicExt {
            coeffs: [c0, c1, c2],
            modulus,
        }
    }
}

impl Coeff for CubicExt {
    fn zero() -> Self {
        CubicExt::constant(Coeff::zero())
    }
    fn one() -> Self {
        CubicExt::constant(Coeff::one())
    }
    fn i() -> Self {
        CubicExt::constant(<QI as Coeff>::i())
    }
    fn from_rational(q: &Rational) -> Self {
        CubicExt::constant(<QI as Coeff>::from_rational(q))
    }
    /// Conjugates the `Q(i)` coefficients; `x` is treated as real.
    fn conj(&self) -> Self {
        CubicExt {
            coeffs: std::array::from_fn(|k| Coeff::conj(&self.coeffs[k])),
            modulus: self.modulus.clone(),
        }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Coeff::is_zero)
    }
    fn magnitude(&self) -> f64 {
        self.coeffs.iter().map(Coeff::magnitude).fold(0.0, f64::max)
    }
    fn inverse(&self) -> Option<Self> {
        self.as_constant()
            .and_then(|c| Coeff::inverse(&c))
            .map(CubicExt::constant)
    }
    fn exact() -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn generator_satisfies_its_modulus() {
        // x^3 - 2 = 0
        let m = Arc::new(CubicModulus {
            c: [q(-2, 1), q(0, 1), q(0, 1)],
        });
        let x = CubicExt::generator(m);
        let x3 = x.clone() * x.clone() * x.clone();
        assert_eq!(x3.as_constant(), Some(QI::new(q(2, 1), q(0, 1))));
    }

    #[test]
    fn reduction_matches_numeric_root() {
        // 4x^3 + 4x^2 - 3x - 1 (irreducible), random element products
        let m = Arc::new(CubicModulus::from_coefficients(&q(4, 1), &q(4, 1), &q(-3, 1), &q(-1, 1)));
        let x = CubicExt::generator(m);
        let a = x.clone() * CubicExt::from_ratio(3, 7) + <CubicExt as Coeff>::i();
        let b = x.clone() * x.clone() - CubicExt::from_int(5);
        let p = a.clone() * b.clone() * a.clone();
        for root in [0.7227, -0.2, -1.4] {
            // refine the root numerically
            let mut r: f64 = root;
            for _ in 0..50 {
                let f = 4.0 * r * r * r + 4.0 * r * r - 3.0 * r - 1.0;
                let df = 12.0 * r * r + 8.0 * r - 3.0;
                r -= f / df;
            }
            let direct = a.eval(r) * b.eval(r) * a.eval(r);
            assert!((p.eval(r) - direct).norm() < 1e-9);
        }
    }

    #[test]
    fn constants_stay_constant() {
        let a = CubicExt::from_ratio(1, 3) * CubicExt::from_int(6) - CubicExt::one();
        assert_eq!(a.as_constant(), Some(QI::new(q(1, 1), q(0, 1))));
        assert!(a.inverse().is_some());
    }
}
