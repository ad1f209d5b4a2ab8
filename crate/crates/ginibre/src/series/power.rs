//! Truncated formal power series over a generic coefficient ring.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{FromPrimitive, Num};

use crate::error::{Error, Result};

/// Coefficient field used by [`PowerSeries`]: rationals or floats.
pub trait Coeff: Clone + Num + Neg<Output = Self> + FromPrimitive + Debug {}
impl<T: Clone + Num + Neg<Output = T> + FromPrimitive + Debug> Coeff for T {}

pub(crate) fn int<T: Coeff>(n: i64) -> T {
    T::from_i64(n).expect("integer coefficient")
}

/// `sum_{i <= order} coeffs[i] t^i`, arithmetic exact through `order`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> PowerSeries<T> {
    /// Truncates or zero-pads `coeffs` to `order + 1` entries.
    pub fn new(mut coeffs: Vec<T>, order: usize) -> Self {
        coeffs.resize(order + 1, T::zero());
        PowerSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> T) -> Self {
        PowerSeries { coeffs: (0..=order).map(f).collect() }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn constant(c: T, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(T::one(), order)
    }

    /// The series `t` (zero when `order == 0`).
    pub fn variable(order: usize) -> Self {
        Self::new(vec![T::zero(), T::one()], order)
    }

    /// `e^{c t}`.
    pub fn exp_linear(c: T, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = T::one();
        coeffs.push(term.clone());
        for n in 1..=order {
            term = term * c.clone() / int(n as i64);
            coeffs.push(term.clone());
        }
        PowerSeries { coeffs }
    }

    /// `(1 + c t)^a`, by the binomial series.
    pub fn binomial(a: T, c: T, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = T::one();
        coeffs.push(term.clone());
        for j in 1..=order {
            term = term * (a.clone() - int(j as i64 - 1)) / int(j as i64) * c.clone();
            coeffs.push(term.clone());
        }
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &T {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }

    pub fn scale(&self, c: &T) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    pub fn derivative(&self) -> Self {
        let n = self.order();
        Self::from_fn(n.saturating_sub(1), |i| {
            if i < n {
                self.coeffs[i + 1].clone() * int((i + 1) as i64)
            } else {
                T::zero()
            }
        })
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn recip(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::Series("reciprocal needs a nonzero constant term"));
        }
        let inv0 = T::one() / a0.clone();
        let mut b: Vec<T> = Vec::with_capacity(self.coeffs.len());
        b.push(inv0.clone());
        for n in 1..self.coeffs.len() {
            let mut s = T::zero();
            for k in 1..=n {
                s = s + self.coeffs[k].clone() * b[n - k].clone();
            }
            b.push(-(s * inv0.clone()));
        }
        Ok(PowerSeries { coeffs: b })
    }

    pub fn powi(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one(self.order());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// `f^r` for `f` with constant term 1 (Miller's recurrence).
    pub fn pow_ratio(&self, r: &T) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Series("fractional power needs constant term 1"));
        }
        let f = &self.coeffs;
        let mut g: Vec<T> = Vec::with_capacity(f.len());
        g.push(T::one());
        let r1 = r.clone() + T::one();
        for n in 1..f.len() {
            let mut s = T::zero();
            for k in 1..=n {
                let w = r1.clone() * int(k as i64) - int(n as i64);
                s = s + w * f[k].clone() * g[n - k].clone();
            }
            g.push(s / int(n as i64));
        }
        Ok(PowerSeries { coeffs: g })
    }

    /// `exp(f)` for `f` with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Series("exp needs zero constant term"));
        }
        let f = &self.coeffs;
        let mut g: Vec<T> = Vec::with_capacity(f.len());
        g.push(T::one());
        for n in 1..f.len() {
            let mut s = T::zero();
            for k in 1..=n {
                s = s + int::<T>(k as i64) * f[k].clone() * g[n - k].clone();
            }
            g.push(s / int(n as i64));
        }
        Ok(PowerSeries { coeffs: g })
    }

    /// `ln(f)` for `f` with constant term 1.
    pub fn ln(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Series("log needs constant term 1"));
        }
        let f = &self.coeffs;
        let mut g: Vec<T> = Vec::with_capacity(f.len());
        g.push(T::zero());
        for n in 1..f.len() {
            let mut s = T::zero();
            for k in 1..n {
                s = s + int::<T>(k as i64) * g[k].clone() * f[n - k].clone();
            }
            g.push(f[n].clone() - s / int(n as i64));
        }
        Ok(PowerSeries { coeffs: g })
    }

    /// `self(g(t))` for `g` with zero constant term.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if !g.coeffs[0].is_zero() {
            return Err(Error::Series("composition needs an inner series without constant term"));
        }
        let order = self.order().min(g.order());
        let g = g.truncate(order);
        let mut acc = Self::zero(order);
        for c in self.coeffs[..=order].iter().rev() {
            acc = &acc * &g;
            acc.coeffs[0] = acc.coeffs[0].clone() + c.clone();
        }
        Ok(acc)
    }
}

impl<'a, T: Coeff> Add<&'a PowerSeries<T>> for &'a PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn add(self, rhs: &PowerSeries<T>) -> PowerSeries<T> {
        let n = self.order().min(rhs.order());
        PowerSeries::from_fn(n, |i| self.coeffs[i].clone() + rhs.coeffs[i].clone())
    }
}

impl<'a, T: Coeff> Sub<&'a PowerSeries<T>> for &'a PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn sub(self, rhs: &PowerSeries<T>) -> PowerSeries<T> {
        let n = self.order().min(rhs.order());
        PowerSeries::from_fn(n, |i| self.coeffs[i].clone() - rhs.coeffs[i].clone())
    }
}

impl<'a, T: Coeff> Mul<&'a PowerSeries<T>> for &'a PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn mul(self, rhs: &PowerSeries<T>) -> PowerSeries<T> {
        let n = self.order().min(rhs.order());
        PowerSeries::from_fn(n, |i| {
            let mut s = T::zero();
            for k in 0..=i {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                s = s + self.coeffs[k].clone() * rhs.coeffs[i - k].clone();
            }
            s
        })
    }
}

impl<T: Coeff> Neg for &PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn neg(self) -> PowerSeries<T> {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| -a.clone()).collect() }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<T: Coeff> $tr for PowerSeries<T> {
            type Output = PowerSeries<T>;
            fn $m(self, rhs: PowerSeries<T>) -> PowerSeries<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn geometric_reciprocal() {
        let f = PowerSeries::new(vec![q(1, 1), q(-1, 1)], 6);
        let g = f.recip().unwrap();
        assert!(g.coeffs().iter().all(|c| *c == q(1, 1)));
    }

    #[test]
    fn exp_log_roundtrip() {
        let f = PowerSeries::new(vec![q(0, 1), q(1, 2), q(-3, 7), q(2, 5)], 8);
        let back = f.exp().unwrap().ln().unwrap();
        assert_eq!(back, f);
        let e = PowerSeries::<Q>::variable(8).exp().unwrap();
        assert_eq!(e, PowerSeries::exp_linear(q(1, 1), 8));
    }

    #[test]
    fn binomial_matches_pow_ratio() {
        let a = q(-3, 2);
        let lhs = PowerSeries::binomial(a.clone(), q(1, 1), 10);
        let rhs = PowerSeries::new(vec![q(1, 1), q(1, 1)], 10).pow_ratio(&a).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn compose_with_polynomial() {
        // e^{t} composed with 2t equals e^{2t}
        let e = PowerSeries::exp_linear(q(1, 1), 7);
        let two_t = PowerSeries::new(vec![q(0, 1), q(2, 1)], 7);
        assert_eq!(e.compose(&two_t).unwrap(), PowerSeries::exp_linear(q(2, 1), 7));
    }

    #[test]
    fn negative_integer_power() {
        let f = PowerSeries::new(vec![q(2, 1), q(1, 1)], 5);
        let p = f.powi(-3).unwrap();
        let back = &p * &f.powi(3).unwrap();
        assert_eq!(back, PowerSeries::one(5));
    }

    #[test]
    fn rejects_bad_constant_terms() {
        let f = PowerSeries::new(vec![q(0, 1), q(1, 1)], 3);
        assert!(f.recip().is_err());
        assert!(f.pow_ratio(&q(1, 2)).is_err());
        assert!(f.ln().is_err());
        assert!(PowerSeries::<Q>::one(3).exp().is_err());
    }

    #[test]
    fn float_coefficients() {
        let f = PowerSeries::new(vec![1.0f64, 0.5, 0.25], 4);
        let g = f.pow_ratio(&0.5).unwrap();
        let sq = &g * &g;
        for (a, b) in sq.coeffs().iter().zip(f.coeffs()) {
            assert!((a - b).abs() < 1e-15);
        }
    }
}
