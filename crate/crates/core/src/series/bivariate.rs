use crate::ring::Coeff;
use crate::series::univariate::VSeries;

/// Truncated series `sum c_{kl} z^k zbar^l` over all `k + l <= order`.
///
/// `z` and `zbar` are independent formal variables; conjugation swaps them.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries<C> {
    order: usize,
    coeffs: Vec<C>,
}

fn index(k: usize, l: usize) -> usize {
    let d = k + l;
    d * (d + 1) / 2 + l
}

impl<C: Coeff> BiSeries<C> {
    pub fn zero(order: usize) -> Self {
        BiSeries {
            order,
            coeffs: vec![C::zero(); (order + 1) * (order + 2) / 2],
        }
    }

    pub fn monomial(order: usize, k: usize, l: usize, c: C) -> Self {
        let mut s = Self::zero(order);
        s.set(k, l, c);
        s
    }

    /// `z zbar`.
    pub fn zzbar(order: usize) -> Self {
        Self::monomial(order, 1, 1, C::one())
    }

    pub fn constant(order: usize, c: C) -> Self {
        Self::monomial(order, 0, 0, c)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, k: usize, l: usize) -> C {
        if k + l <= self.order {
            self.coeffs[index(k, l)].clone()
        } else {
            C::zero()
        }
    }

    pub fn get_ref(&self, k: usize, l: usize) -> &C {
        &self.coeffs[index(k, l)]
    }

    /// Terms beyond the truncation order are dropped.
    pub fn set(&mut self, k: usize, l: usize, c: C) {
        if k + l <= self.order {
            self.coeffs[index(k, l)] = c;
        }
    }

    /// `(k, l, coefficient)` for every stored term, by total degree.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &C)> + '_ {
        (0..=self.order).flat_map(move |d| (0..=d).map(move |l| (d - l, l, &self.coeffs[index(d - l, l)])))
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> BiSeries<D> {
        BiSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.order, other.order);
        BiSeries {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.order, other.order);
        BiSeries {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a.clone())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        self.map(|a| a.clone() * c.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.order, other.order);
        let n = self.order;
        let mut out = Self::zero(n);
        let lhs: Vec<_> = self.terms().filter(|(_, _, c)| !c.is_zero()).collect();
        let rhs: Vec<_> = other.terms().filter(|(_, _, c)| !c.is_zero()).collect();
        for &(k1, l1, a) in &lhs {
            for &(k2, l2, b) in &rhs {
                if k1 + l1 + k2 + l2 > n {
                    // terms() is ordered by total degree
                    break;
                }
                let i = index(k1 + k2, l1 + l2);
                out.coeffs[i] = out.coeffs[i].clone() + a.clone() * b.clone();
            }
        }
        out
    }

    /// `f(self)` for a univariate `f`; `self` must have no constant term.
    pub fn compose_into(&self, f: &VSeries<C>) -> Self {
        debug_assert!(self.get(0, 0).is_zero());
        let mut acc = Self::zero(self.order);
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self);
            acc.coeffs[0] = acc.coeffs[0].clone() + c.clone();
        }
        acc
    }

    /// Substitutes `z -> g(z)`, `zbar -> h(zbar)`, with `g(0) = h(0) = 0`.
    pub fn substitute(&self, g: &VSeries<C>, h: &VSeries<C>) -> Self {
        let n = self.order;
        let powers = |s: &VSeries<C>| {
            let mut out = vec![VSeries::from_coeffs(vec![C::one()], n)];
            for _ in 0..n {
                let next = out.last().unwrap().mul(s);
                out.push(next);
            }
            out
        };
        let gp = powers(&VSeries::from_coeffs(g.coeffs().to_vec(), n));
        let hp = powers(&VSeries::from_coeffs(h.coeffs().to_vec(), n));
        let mut out = Self::zero(n);
        for (k, l, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            for (i, a) in gp[k].coeffs().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in hp[l].coeffs().iter().enumerate().take(n + 1 - i) {
                    if !b.is_zero() {
                        let idx = index(i, j);
                        out.coeffs[idx] = out.coeffs[idx].clone() + c.clone() * a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    /// Complex conjugate of the function: `c_{kl} -> conj(c_{lk})`.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.order);
        for (k, l, c) in self.terms() {
            out.set(l, k, c.conj());
        }
        out
    }

    /// `z^k` part with `l = 0`, as a univariate series.
    pub fn holomorphic_part(&self) -> VSeries<C> {
        VSeries::from_coeffs((0..=self.order).map(|k| self.get(k, 0)).collect(), self.order)
    }

    /// Lowest total degree carrying a coefficient that is not negligible.
    pub fn low_degree(&self, scale: f64, tol: f64) -> Option<usize> {
        self.terms().find(|(_, _, c)| !c.negligible(scale, tol)).map(|(k, l, _)| k + l)
    }

    pub fn max_magnitude(&self) -> f64 {
        self.coeffs.iter().map(Coeff::magnitude).fold(0.0, f64::max)
    }
}
