use crate::ring::Coeff;

/// Truncated univariate series `sum_k coeffs[k] x^k`, `k <= order`.
///
/// Used both for the `v`-dependent factors of the defining equations and for
/// holomorphic coordinate changes `z -> f(z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct VSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> VSeries<C> {
    pub fn zero(order: usize) -> Self {
        VSeries {
            coeffs: vec![C::zero(); order + 1],
        }
    }

    /// Pads or truncates `coeffs` to `order + 1` entries.
    pub fn from_coeffs(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        VSeries { coeffs }
    }

    /// The series `x`.
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = C::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn set(&mut self, k: usize, c: C) {
        if k < self.coeffs.len() {
            self.coeffs[k] = c;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        VSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() - b.clone()).collect();
        VSeries { coeffs }
    }

    pub fn scale(&self, c: &C) -> Self {
        VSeries {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] = out.coeffs[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    /// `self(inner(x))`; `inner` must have no constant term.
    pub fn compose(&self, inner: &Self) -> Self {
        debug_assert!(inner.coeff(0).is_zero());
        let n = inner.order();
        let mut acc = Self::zero(n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner);
            acc.coeffs[0] = acc.coeffs[0].clone() + c.clone();
        }
        acc
    }

    /// Compositional inverse of a series `x + O(x^2)` (after dividing by the
    /// linear coefficient, which must be invertible).
    pub fn revert(&self) -> Option<Self> {
        if !self.coeff(0).is_zero() {
            return None;
        }
        let lin_inv = self.coeff(1).inverse()?;
        let n = self.order();
        // g <- g - (f(g) - x), starting from g = x / f_1
        let mut g = Self::identity(n).scale(&lin_inv);
        for _ in 0..n {
            let err = self.compose(&g).sub(&Self::identity(n));
            if err.coeffs.iter().all(Coeff::is_zero) {
                break;
            }
            g = g.sub(&err.scale(&lin_inv));
        }
        Some(g)
    }

    /// Formal derivative (order drops by one).
    pub fn derivative(&self) -> Self {
        let n = self.order().max(1) - 1;
        let coeffs = (0..=n).map(|k| self.coeff(k + 1) * C::from_int(k as i64 + 1)).collect();
        VSeries { coeffs }
    }

    pub fn conj(&self) -> Self {
        VSeries {
            coeffs: self.coeffs.iter().map(Coeff::conj).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Complex64, Rational, Real};
    use num_complex::Complex;

    type QC = Complex<Rational>;

    fn qc(n: i64, d: i64) -> QC {
        Complex::new(Rational::ratio(n, d), Rational::ratio(0, 1))
    }

    #[test]
    fn geometric_series_times_one_minus_x() {
        let geo = VSeries::from_coeffs(vec![qc(1, 1); 7], 6);
        let one_minus = VSeries::from_coeffs(vec![qc(1, 1), qc(-1, 1)], 6);
        assert_eq!(geo.mul(&one_minus), VSeries::from_coeffs(vec![qc(1, 1)], 6));
    }

    #[test]
    fn reversion_of_x_over_one_minus_x() {
        // f = x/(1-x) = x + x^2 + ...; inverse x/(1+x) = x - x^2 + x^3 - ...
        let mut f = vec![qc(0, 1)];
        f.extend(vec![qc(1, 1); 6]);
        let g = VSeries::from_coeffs(f, 6).revert().unwrap();
        let want: Vec<QC> = (0..=6).map(|k| if k == 0 { qc(0, 1) } else { qc(if k % 2 == 1 { 1 } else { -1 }, 1) }).collect();
        assert_eq!(g.coeffs(), &want[..]);
    }

    #[test]
    fn reversion_round_trip_float() {
        let f = VSeries::from_coeffs(
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(2.0, 1.0),
                Complex64::new(0.5, -0.3),
                Complex64::new(-1.0, 0.2),
            ],
            7,
        );
        let g = f.revert().unwrap();
        let id = f.compose(&g);
        for k in 0..=7 {
            let want = if k == 1 { 1.0 } else { 0.0 };
            assert!((id.coeff(k) - Complex64::new(want, 0.0)).norm() < 1e-12);
        }
    }
}
