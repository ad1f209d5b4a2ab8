//! Hypergeometric double sums, the limit ratio `r(α)` and the exact
//! coefficient identities behind it.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{check_even_n, out_of_range, Error, Result};
use crate::expected::c_alpha;
use crate::series::exact::{binomial, double_factorial, factorial};
use crate::series::{a_k, a_k_n_limit};
use crate::specfun::{bessel_i_scaled, hyp2f1_regularized, ln_factorial, Hyp2F1Args, ScaledReal, ScaledSum};

/// Largest `α` for `r(α)`.
pub const MAX_ALPHA: f64 = 50.0;
/// Largest `k` for [`a_coefficients`].
pub const MAX_A_K: usize = 40;
/// Largest `k` for [`comb_identity`].
pub const MAX_COMB_K: usize = 200;

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= MAX_ALPHA) {
        return Err(out_of_range("alpha", alpha, "(0, 50]"));
    }
    Ok(())
}

/// `r(α) = 2 - 2 e^{-α²/2} (I_0(α²) + I_1(α²)) / (I_0(α²/2) + I_1(α²/2))`.
pub fn r_alpha(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let a2 = alpha * alpha;
    // e^{-α²/2} I(α²) / I(α²/2) = Ĩ(α²) / Ĩ(α²/2) with Ĩ(x) = e^{-x} I(x)
    let num = bessel_i_scaled(0, a2)? + bessel_i_scaled(1, a2)?;
    let den = bessel_i_scaled(0, a2 / 2.0)? + bessel_i_scaled(1, a2 / 2.0)?;
    Ok(2.0 - 2.0 * num / den)
}

/// `r(α) = 2 - 2 c(√2 α)/c(α)`.
pub fn r_alpha_c_ratio(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(2.0 - 2.0 * c_alpha(std::f64::consts::SQRT_2 * alpha) / c_alpha(alpha))
}

/// `(Ⅰ_N, Ⅱ_N)` with `Ⅰ_N + Ⅱ_N = (1/N) ∫∫ S¹(x,y)²`:
/// `Ⅰ_N = (1/N)(π/2)(1+τ)/(1-τ) Σ_{l,m<N/2} F(l-m+½, m-l+½; ½-l-m; z)²/((2l)!(2m)!)`,
/// `Ⅱ_N` the same over `1 ≤ l,m < N/2` with `c = 3/2-l-m` and `(2l-1)!(2m-1)!`,
/// `F` regularized and `z = -τ/(1-τ)`.
pub fn kernel_double_sum(n: usize, alpha: f64) -> Result<(f64, f64)> {
    check_even_n(n, 2)?;
    if n > 256 {
        return Err(Error::InvalidN { n, reason: "N above 256 for the double sum" });
    }
    let a2 = alpha * alpha;
    if !(alpha > 0.0 && a2 < n as f64) {
        return Err(out_of_range("alpha", alpha, "0 < alpha^2 < N"));
    }
    let tau = 1.0 - a2 / n as f64;
    let z = -tau / (1.0 - tau);
    let half = n / 2;
    let pre = PI / 2.0 * (1.0 + tau) / (1.0 - tau) / n as f64;
    let sum = |first: usize, c_shift: f64, fact_shift: u64| -> Result<f64> {
        let mut s = ScaledSum::new();
        for l in first..half {
            for m in l..half {
                let d = l as f64 - m as f64;
                let f = hyp2f1_regularized(Hyp2F1Args::new(d + 0.5, 0.5 - d, c_shift - (l + m) as f64, z))?;
                if f.is_zero() {
                    continue;
                }
                let fact = ln_factorial(2 * l as u64 - fact_shift) + ln_factorial(2 * m as u64 - fact_shift);
                // swapping l and m swaps the two numerator parameters
                let weight: f64 = if l == m { 1.0 } else { 2.0 };
                s.push(ScaledReal::from_log(2.0 * f.log_mag() - fact + weight.ln()));
            }
        }
        Ok(pre * s.value().to_f64())
    };
    Ok((sum(0, 0.5, 0)?, sum(1, 1.5, 1)?))
}

/// `a_k` for `k ≤ k_max` recombined as `a_k^0 + 2 Σ_{n≥1} a_k^n`.
pub fn a_coefficients(k_max: usize) -> Result<Vec<BigRational>> {
    if k_max > MAX_A_K {
        return Err(out_of_range("k_max", k_max, "0..=40"));
    }
    Ok((0..=k_max)
        .map(|k| {
            let mut a = a_k_n_limit(k, 0);
            for n in 1..=k / 2 {
                a += a_k_n_limit(k, n) * BigRational::from_integer(2.into());
            }
            a
        })
        .collect())
}

/// `true` when the recombined `a_k` equal `(-1)^k (2k-1)!!/(k!(k+1)!)` for all `k ≤ k_max`.
pub fn a_coefficients_match(k_max: usize) -> Result<bool> {
    Ok(a_coefficients(k_max)?.iter().enumerate().all(|(k, a)| *a == a_k(k)))
}

/// Odd double factorial `(2j-1)!!` for `j ≥ 0`, as an integer.
fn odd_double_factorial(j: i64) -> BigInt {
    double_factorial(2 * j - 1).to_integer()
}

/// Checks `binom(2k,k) = Σ_m binom(k,m) Σ_n (2n+2m-1)!!(2k-2m-2n-1)!!/((m+2n)!(k-m-2n)!)`
/// after multiplying through by `k!`, so every term is an integer.
pub fn comb_identity(k: usize) -> Result<bool> {
    if k > MAX_COMB_K {
        return Err(out_of_range("k", k, "0..=200"));
    }
    let ki = k as i64;
    let lhs = factorial(k as u64) * binomial(2 * ki, ki);
    let mut rhs = BigInt::zero();
    for m in 0..=ki {
        let bm = binomial(ki, m);
        for n in -(ki / 2)..=ki / 2 {
            let (lo, hi) = (m + 2 * n, ki - m - 2 * n);
            if lo < 0 || hi < 0 {
                continue;
            }
            rhs += &bm * binomial(ki, lo) * odd_double_factorial(n + m) * odd_double_factorial(ki - m - n);
        }
    }
    Ok(lhs == rhs)
}

/// `binom(2k,k) 2^k = Σ binom(k, m+n) binom(2m+2n, m) binom(2k-2m-2n, k-m)` over admissible `n`.
pub fn comb_identity_counting(k: usize) -> bool {
    let ki = k as i64;
    let lhs = binomial(2 * ki, ki) * (BigInt::one() << k);
    let mut rhs = BigInt::zero();
    for m in 0..=ki {
        for n in -(ki / 2)..=ki / 2 {
            if m + 2 * n < 0 || ki - m - 2 * n < 0 {
                continue;
            }
            rhs += binomial(ki, m + n) * binomial(2 * (m + n), m) * binomial(2 * (ki - m - n), ki - m);
        }
    }
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::exact::rat;

    #[test]
    fn r_alpha_routes() {
        for a in [0.1, 0.5, 1.0, 2.0, 4.0, 8.0] {
            let x = r_alpha(a).unwrap();
            let y = r_alpha_c_ratio(a).unwrap();
            assert!((x - y).abs() < 1e-12, "alpha={a}");
        }
        assert!(r_alpha(1e-4).unwrap().abs() < 1e-7);
        assert!((r_alpha(50.0).unwrap() - (2.0 - 2f64.sqrt())).abs() < 1e-3);
        assert!((r_alpha(1.0).unwrap() - 0.318_884_727_172_273).abs() < 1e-13);
    }

    #[test]
    fn small_a_coefficients() {
        let a = a_coefficients(3).unwrap();
        assert_eq!(a[0], rat(1, 1));
        assert_eq!(a[1], rat(-1, 2));
        assert_eq!(a_k_n_limit(1, 1), rat(0, 1));
        assert!(a_coefficients_match(40).unwrap());
    }

    #[test]
    fn combinatorial_identity() {
        for k in 0..=60 {
            assert!(comb_identity(k).unwrap(), "k={k}");
            assert!(comb_identity_counting(k), "k={k}");
        }
    }

    #[test]
    fn double_sum_matches_quadrature() {
        for n in [4, 8, 16] {
            let (one, two) = kernel_double_sum(n, 1.0).unwrap();
            let q = super::super::s1_square_integral(n, 1.0 - 1.0 / n as f64).unwrap() / n as f64;
            assert!(((one + two) - q).abs() < 1e-6 * q, "N={n}: {} vs {q}", one + two);
        }
    }
}
