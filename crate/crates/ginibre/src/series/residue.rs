//! Residues at `ζ = 1` computed as Taylor coefficients in `w = ζ - 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::exact::{binomial, double_factorial, factorial, inv_factorial, rat_int, sign_pow, to_f64};
use super::genfun::gen_q;
use super::power::PowerSeries;
use crate::error::{check_even_n, out_of_range, Result};

/// `√π · rational / √(1 - x)`: the residue `g_N(x)` with its irrational
/// factors kept apart from the exact part.
#[derive(Debug, Clone, PartialEq)]
pub struct GResidue {
    /// Coefficient of `w^{N-2}` in `(1+w)^{-3/2}(1-w)^{-1}(1 - w x/(1-x))^{-1/2}`.
    pub rational: BigRational,
    pub one_minus_x: BigRational,
}

impl GResidue {
    pub fn value(&self) -> f64 {
        std::f64::consts::PI.sqrt() * to_f64(&self.rational) / to_f64(&self.one_minus_x).sqrt()
    }
}

fn check_x(x: &BigRational) -> Result<()> {
    if x > &BigRational::zero() {
        return Err(out_of_range("x", x, "x <= 0"));
    }
    Ok(())
}

/// `g_N(x) = √π Res_{ζ=1}[ζ^{-3/2} (2-ζ)^{-1} (1-ζx)^{-1/2} / (ζ-1)^{N-1}]`.
///
/// Linear in `N`: the `(1+w)^{-3/2}(1-w)^{-1}` coefficients are running
/// sums, and only one coefficient of the final product is formed, in
/// integer arithmetic over the common denominator `4^{N-2} q^{N-2}` where
/// `y = -x/(1-x) = p/q`.
pub fn residue_g(n: usize, x: &BigRational) -> Result<GResidue> {
    check_even_n(n, 2)?;
    check_x(x)?;
    let one_minus_x = BigRational::one() - x;
    let y = -x / &one_minus_x;
    let m = n - 2;
    // central[j] = binom(2j, j); 4^j binom(-1/2, j) = (-1)^j central[j]
    let mut central = Vec::with_capacity(m + 1);
    central.push(BigInt::one());
    for j in 1..=m {
        let prev: &BigInt = &central[j - 1];
        central.push(prev * (2 * (2 * j as u64 - 1)) / j as u64);
    }
    // partial[i] = 4^i sum_{i' <= i} binom(-3/2, i')
    let mut partial = Vec::with_capacity(m + 1);
    partial.push(BigInt::one());
    for i in 1..=m {
        let term = &central[i] * (2 * i as u64 + 1);
        let prev: &BigInt = &partial[i - 1];
        let next = if i % 2 == 0 { prev * 4u32 + term } else { prev * 4u32 - term };
        partial.push(next);
    }
    let (p, q) = (y.numer().clone(), y.denom().clone());
    let signed = |j: usize| {
        let t = &central[j] * &partial[m - j];
        if j % 2 == 0 {
            t
        } else {
            -t
        }
    };
    let mut acc = signed(m);
    let mut qpow = BigInt::one();
    for j in (0..m).rev() {
        qpow *= &q;
        acc = acc * &p + signed(j) * &qpow;
    }
    let denom = (BigInt::one() << (2 * m)) * q.pow(m as u32);
    Ok(GResidue { rational: BigRational::new(acc, denom), one_minus_x })
}

/// The same residue by straightforward series multiplication; quadratic in
/// `N`, used as an oracle.
pub fn residue_g_series(n: usize, x: &BigRational) -> Result<GResidue> {
    check_even_n(n, 2)?;
    check_x(x)?;
    let order = n - 2;
    let one_minus_x = BigRational::one() - x;
    let y = -x / &one_minus_x;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let a = PowerSeries::binomial(-&half * rat_int(3), BigRational::one(), order);
    let b = PowerSeries::new(vec![BigRational::one(), -BigRational::one()], order).recip()?;
    let c = PowerSeries::binomial(-half, y, order);
    let prod = &(&a * &b) * &c;
    Ok(GResidue { rational: prod.coeff(order).clone(), one_minus_x })
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if k + 2 > n {
        return Err(out_of_range("k", k, "0 <= k <= N-2"));
    }
    Ok(())
}

fn n_pow(n: usize, e: usize) -> BigRational {
    rat_int(BigInt::from(n).pow(e as u32))
}

/// `Res_{ζ=1}` of `a_{N,k}(ζ) = (2/N^{k+1}) ζ^{-k-2} (2-ζ)^{-1} (ζ-1)^{-(N-k-1)}`
/// by Laurent-coefficient extraction.
pub fn residue_a(n: usize, k: usize) -> Result<BigRational> {
    check_even_n(n, 2)?;
    check_k(n, k)?;
    let order = n - k - 2;
    let a = PowerSeries::binomial(rat_int(-(k as i64) - 2), BigRational::one(), order);
    let b = PowerSeries::new(vec![BigRational::one(), -BigRational::one()], order).recip()?;
    let c = (&a * &b).coeff(order).clone();
    Ok(c * rat_int(2) / n_pow(n, k + 1))
}

/// `(-1)^k Σ_{s=0}^{k} q_{k,s}/(k+1-s)! · (-1)^s / N^s`.
pub fn residue_a_closed(n: usize, k: usize) -> Result<BigRational> {
    check_even_n(n, 2)?;
    check_k(n, k)?;
    let q = gen_q(k as u64, k)?;
    let mut sum = BigRational::zero();
    for (s, qs) in q.iter().enumerate() {
        sum += qs * inv_factorial((k + 1 - s) as i64) * sign_pow(s as i64) / n_pow(n, s);
    }
    Ok(sum * sign_pow(k as i64))
}

fn check_a_n(n: usize, k: usize) -> Result<()> {
    check_even_n(n, 4)?;
    check_k(n, k)
}

/// `Res_{η=1} Res_{ζ=1}` of
/// `ζ^A (ζ-1)^{-p} η^B (η-1)^{-q} / (1 - (ζ-1)^2 (η-1)^2)`, inner variable first.
fn double_residue(a: i64, p: i64, b: i64, q: i64) -> BigInt {
    // inner: coefficient of w^{p-1} in (1+w)^A Σ_j (w v)^{2j} is Σ_j v^{2j} binom(A, p-1-2j)
    let mut total = BigInt::zero();
    let mut j = 0;
    while p - 1 - 2 * j >= 0 {
        let r = q - 1 - 2 * j;
        if r >= 0 {
            total += binomial(a, p - 1 - 2 * j) * binomial(b, r);
        }
        j += 1;
    }
    total
}

/// `a_{N,k}^n` as a double residue.
pub fn residue_a_n(n: usize, k: usize, nn: usize) -> Result<BigRational> {
    check_a_n(n, k)?;
    let (ni, ki, nni) = (n as i64, k as i64, nn as i64);
    let mut sum = BigRational::zero();
    for m in 0..=ki {
        let a = -m - 2 * nni - 1;
        let p = ni - 1 - m - 2 * nni;
        let b = -ki + m - 1 + 2 * nni;
        let q = ni - 1 - ki + m;
        let res = double_residue(a, p, b, q);
        if res.is_zero() {
            continue;
        }
        let pre = double_factorial(2 * nni + 2 * m - 1) * sign_pow(ki - m)
            * inv_factorial(m)
            * inv_factorial(ki - m)
            / double_factorial(2 * nni - 2 * ki + 2 * m - 1);
        sum += pre * rat_int(res);
    }
    let scale = sign_pow(nni) / (n_pow(n, k + 1) * rat_int(BigInt::one() << k) / rat_int(2));
    Ok(sum * scale)
}

fn lemma_prefactor(k: i64, n: i64, m: i64) -> BigRational {
    double_factorial(2 * n + 2 * m - 1)
        * double_factorial(2 * k - 2 * m - 1 - 2 * n)
        * inv_factorial(m)
        * inv_factorial(k - m)
        * inv_factorial(m + 2 * n)
        * inv_factorial(k - m - 2 * n)
}

/// `a_{N,k}^n` by the single finite sum over `l ≤ N' = ⌊(N-m)/2⌋ - n - 1`.
pub fn residue_a_n_closed(n: usize, k: usize, nn: usize) -> Result<BigRational> {
    check_a_n(n, k)?;
    let (ni, ki, nni) = (n as i64, k as i64, nn as i64);
    let mut sum = BigRational::zero();
    for m in 0..=ki {
        if ki - m - 2 * nni < 0 {
            continue;
        }
        let pre = lemma_prefactor(ki, nni, m);
        let n_prime = (ni - m).div_euclid(2) - nni - 1;
        let mut inner = BigRational::zero();
        for l in 0..=n_prime.max(-1) {
            let top = ni - 2 - 2 * l;
            let num = factorial(top as u64) * factorial((top - 2 * nni) as u64);
            inner += rat_int(num) * inv_factorial(top - m - 2 * nni) * inv_factorial(top - ki + m);
        }
        sum += pre * inner;
    }
    Ok(sum * sign_pow(ki) * rat_int(2) / (rat_int(BigInt::one() << k) * n_pow(n, k + 1)))
}

/// Large-`N` limit `a_k^n = (-1)^k/2^k · 1/(k+1) · Σ_m (...)`.
pub fn a_k_n_limit(k: usize, nn: usize) -> BigRational {
    let (ki, nni) = (k as i64, nn as i64);
    let mut sum = BigRational::zero();
    for m in 0..=ki {
        if ki - m - 2 * nni >= 0 {
            sum += lemma_prefactor(ki, nni, m);
        }
    }
    sum * sign_pow(ki) / (rat_int(BigInt::one() << k) * rat_int(k as u64 + 1))
}

/// `a_k = (-1)^k (2k-1)!! / (k! (k+1)!)`.
pub fn a_k(k: usize) -> BigRational {
    let ki = k as i64;
    sign_pow(ki) * double_factorial(2 * ki - 1) * inv_factorial(ki) * inv_factorial(ki + 1)
}
