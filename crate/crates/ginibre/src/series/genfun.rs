//! Generating functions for the expansion coefficients `q_{k,s}`,
//! `p̂_{k,l}` and `p_{k,s}`.
//!
//! * `(t e^t/(e^t-1))^{k+2} · 2/(e^t+1) = Σ q_{k,s} t^s`
//! * `((e^t-1)/t)^{-3/2} · 2e^{t(k+2)}/(e^t+1) = Σ p̂_{k,l} t^l`
//! * `((e^t-1)/t)^{k-3/2} · 2e^{2t}/(e^t+1) = Σ p_{k,s} t^s`
//!
//! Each coefficient is a polynomial in `k` of degree at most its index,
//! which [`KPolynomial`] exposes for evaluation at large or non-integer `k`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::power::{int, Coeff, PowerSeries};
use crate::error::{Error, Result};

/// Largest coefficient index accepted by the public tables.
pub const MAX_INDEX: usize = 200;

/// `(e^t - 1)/t`.
fn expm1_over_t<T: Coeff>(order: usize) -> PowerSeries<T> {
    let e = PowerSeries::<T>::exp_linear(T::one(), order + 1);
    PowerSeries::from_fn(order, |n| e.coeff(n + 1).clone())
}

/// `2/(e^t + 1)`.
fn two_over_exp_plus_one<T: Coeff>(order: usize) -> PowerSeries<T> {
    let e = PowerSeries::<T>::exp_linear(T::one(), order);
    let half: T = T::one() / int(2);
    let mid = PowerSeries::from_fn(order, |n| {
        if n == 0 {
            T::one()
        } else {
            e.coeff(n).clone() * half.clone()
        }
    });
    mid.recip().expect("unit constant term")
}

/// Series whose coefficients are `q_{k,0..order}`; `k` may be any ring element.
pub fn q_series<T: Coeff>(k: &T, order: usize) -> PowerSeries<T> {
    let base = expm1_over_t::<T>(order);
    let ratio = PowerSeries::exp_linear(T::one(), order) * base.recip().expect("unit constant term");
    let pow = ratio.pow_ratio(&(k.clone() + int(2))).expect("unit constant term");
    pow * two_over_exp_plus_one(order)
}

/// Series whose coefficients are `p̂_{k,0..order}`.
pub fn p_hat_series<T: Coeff>(k: &T, order: usize) -> PowerSeries<T> {
    let base = expm1_over_t::<T>(order).pow_ratio(&(int::<T>(-3) / int(2))).expect("unit constant term");
    base * PowerSeries::exp_linear(k.clone() + int(2), order) * two_over_exp_plus_one(order)
}

/// Series whose coefficients are `p_{k,0..order}`.
pub fn p_series<T: Coeff>(k: &T, order: usize) -> PowerSeries<T> {
    let r = k.clone() - int::<T>(3) / int(2);
    let base = expm1_over_t::<T>(order).pow_ratio(&r).expect("unit constant term");
    base * PowerSeries::exp_linear(int(2), order) * two_over_exp_plus_one(order)
}

fn check_index(s_max: usize) -> Result<()> {
    if s_max > MAX_INDEX {
        return Err(Error::OutOfRange {
            name: "s_max",
            value: s_max.to_string(),
            range: "0..=200",
        });
    }
    Ok(())
}

fn rational_k(k: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// `q_{k,0}, ..., q_{k,s_max}` as exact rationals.
pub fn gen_q(k: u64, s_max: usize) -> Result<Vec<BigRational>> {
    check_index(s_max)?;
    Ok(q_series(&rational_k(k), s_max).into_coeffs())
}

/// `p̂_{k,0}, ..., p̂_{k,l_max}` as exact rationals.
pub fn gen_p_hat(k: u64, l_max: usize) -> Result<Vec<BigRational>> {
    check_index(l_max)?;
    Ok(p_hat_series(&rational_k(k), l_max).into_coeffs())
}

/// `p_{k,0}, ..., p_{k,s_max}` as exact rationals.
pub fn gen_p(k: u64, s_max: usize) -> Result<Vec<BigRational>> {
    check_index(s_max)?;
    Ok(p_series(&rational_k(k), s_max).into_coeffs())
}

/// Polynomial in one variable with exact rational coefficients (constant first).
#[derive(Debug, Clone, PartialEq)]
pub struct KPolynomial {
    coeffs: Vec<BigRational>,
}

impl KPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        KPolynomial { coeffs }
    }

    /// Interpolating polynomial through `(j, values[j])`, `j = 0..len`.
    pub fn interpolate(values: &[BigRational]) -> Self {
        // Newton forward differences, then expand the Newton basis.
        let n = values.len();
        let mut diff = values.to_vec();
        let mut newton = Vec::with_capacity(n);
        for j in 0..n {
            newton.push(diff[0].clone());
            for i in 0..n - j - 1 {
                diff[i] = &diff[i + 1] - &diff[i];
            }
        }
        let mut out = vec![BigRational::zero(); n.max(1)];
        // basis_j(k) = k (k-1) ... (k-j+1) / j!
        let mut basis = vec![BigRational::one()];
        for (j, c) in newton.iter().enumerate() {
            for (i, b) in basis.iter().enumerate() {
                out[i] += c * b;
            }
            let jr = rational_k(j as u64);
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (i, b) in basis.iter().enumerate() {
                next[i + 1] += b;
                next[i] -= b * &jr;
            }
            let inv = BigRational::one() / rational_k(j as u64 + 1);
            basis = next.into_iter().map(|b| b * &inv).collect();
        }
        KPolynomial::new(out)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, k: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * k + c)
    }

    pub fn eval_f64(&self, k: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * k + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Product with another polynomial.
    pub fn mul(&self, other: &KPolynomial) -> KPolynomial {
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        KPolynomial::new(out)
    }
}

/// Which generating function a [`KPolynomial`] is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    Q,
    PHat,
    P,
}

/// The coefficient of `t^s` as a polynomial in `k`.
pub fn k_polynomial(kind: GenKind, s: usize) -> KPolynomial {
    let samples: Vec<BigRational> = (0..=s as u64)
        .map(|k| {
            let k = rational_k(k);
            let series = match kind {
                GenKind::Q => q_series(&k, s),
                GenKind::PHat => p_hat_series(&k, s),
                GenKind::P => p_series(&k, s),
            };
            series.coeff(s).clone()
        })
        .collect();
    KPolynomial::interpolate(&samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn q_low_order_closed_forms() {
        for k in 0..=30u64 {
            let c = gen_q(k, k as usize + 1).unwrap();
            assert_eq!(c[0], q(1, 1));
            assert_eq!(c[1], q(k as i64 + 1, 2));
            assert_eq!(c[k as usize + 1], BigRational::new(1.into(), BigInt::from(2).pow(k as u32 + 1)));
        }
    }

    #[test]
    fn p_hat_first_order_by_hand() {
        // ((e^t-1)/t)^{-3/2} = 1 - 3t/4 + ..., 2e^{2t}/(e^t+1) = 1 + 3t/2 + ...
        let c = gen_p_hat(0, 1).unwrap();
        assert_eq!(c, vec![q(1, 1), q(3, 4)]);
        for k in 0..5 {
            assert_eq!(gen_p_hat(k, 3).unwrap()[0], q(1, 1));
            assert_eq!(gen_p(k, 3).unwrap()[0], q(1, 1));
        }
    }

    #[test]
    fn k_polynomials_reproduce_tables() {
        for kind in [GenKind::Q, GenKind::PHat, GenKind::P] {
            for s in 0..6 {
                let poly = k_polynomial(kind, s);
                assert!(poly.degree() <= s);
                for k in [0u64, 3, 11, 40] {
                    let direct = match kind {
                        GenKind::Q => gen_q(k, s),
                        GenKind::PHat => gen_p_hat(k, s),
                        GenKind::P => gen_p(k, s),
                    }
                    .unwrap();
                    assert_eq!(poly.eval(&rational_k(k)), direct[s], "{kind:?} s={s} k={k}");
                }
            }
        }
        // q_{k,1} = (k+1)/2 as a polynomial
        assert_eq!(k_polynomial(GenKind::Q, 1).coeffs(), &[q(1, 2), q(1, 2)]);
    }

    #[test]
    fn generic_over_floats() {
        let exact = gen_q(3, 5).unwrap();
        let float = q_series(&3.0f64, 5);
        for (a, b) in exact.iter().zip(float.coeffs()) {
            use num_traits::ToPrimitive;
            assert!((a.to_f64().unwrap() - b).abs() < 1e-14);
        }
    }

    #[test]
    fn index_cap() {
        assert!(gen_q(1, 201).is_err());
    }
}
