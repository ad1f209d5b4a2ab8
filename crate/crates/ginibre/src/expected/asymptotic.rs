//! Large-`N` expansions of the expected count.

use std::f64::consts::PI;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::coeffs::{ah_coefficients, MAX_L};
use super::regime::RegimeParam;
use crate::error::{check_even_n, out_of_range, Error, Result};
use crate::series::exact::{double_factorial, inv_factorial, rat_int, rational_from_f64, sign_pow};
use crate::series::{gen_p, k_polynomial, GenKind};

/// Largest `m` accepted by [`expected_asymptotic_elliptic`].
pub const MAX_ELLIPTIC_ORDER: usize = 5;

/// Term cap for the `τ`-power series of `a_l`.
const A_L_MAX_TERMS: u64 = 1_000_000;

/// Sum of labelled expansion terms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpansionResult {
    pub value: f64,
    pub terms: Vec<(String, f64)>,
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

impl ExpansionResult {
    fn from_terms(terms: Vec<(String, f64)>, order: usize, warning: Option<String>) -> Self {
        let value = terms.iter().map(|(_, v)| v).sum();
        ExpansionResult { value, terms, order, warning }
    }
}

/// `N c(α) + c_0(α) + 1/2 + Σ_{l=1}^{m-1} c_l(α)/N^l`.
pub fn expected_asymptotic_ah(n: usize, param: RegimeParam, m: usize) -> Result<ExpansionResult> {
    check_even_n(n, 2)?;
    if !(2..=MAX_L + 1).contains(&m) {
        return Err(out_of_range("order", m, "2..=9"));
    }
    let alpha = param.alpha_at(n);
    let co = ah_coefficients(alpha, m - 1)?;
    let nf = n as f64;
    let mut terms = vec![("N*c(alpha)".to_string(), nf * co.c), ("c_0(alpha)+1/2".to_string(), co.c0 + 0.5)];
    for (i, c) in co.c_l.iter().enumerate() {
        let l = i + 1;
        terms.push((format!("c_{l}(alpha)/N^{l}"), c / nf.powi(l as i32)));
    }
    Ok(ExpansionResult::from_terms(terms, m, None))
}

/// `a_l(τ) = -sqrt(1-τ) (2l-3)!!/2^l Σ_k (2k-1)!!/(2^k k!) p̂_{k,l} τ^k`.
pub fn a_l_p_hat(l: usize, tau: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&tau) {
        return Err(out_of_range("tau", tau, "[0, 1)"));
    }
    let poly: Vec<f64> = k_polynomial(GenKind::PHat, l)
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN))
        .collect();
    let eval = |k: f64| poly.iter().rev().fold(0.0, |acc, c| acc * k + c);
    let mut weight = 1.0; // (2k-1)!!/(2^k k!) τ^k
    let mut sum = eval(0.0);
    let mut k = 0u64;
    loop {
        k += 1;
        if k > A_L_MAX_TERMS {
            return Err(Error::Series("a_l power series did not converge"));
        }
        weight *= tau * (2 * k - 1) as f64 / (2 * k) as f64;
        let term = weight * eval(k as f64);
        sum += term;
        // past the maximum of k^l τ^k the terms decrease geometrically
        let decreasing = (k as f64) * (1.0 - tau) > l as f64 + 1.0;
        if weight == 0.0 || (decreasing && term.abs() <= 1e-17 * sum.abs()) {
            break;
        }
    }
    let pre = -(1.0 - tau).sqrt() * double_factorial(2 * l as i64 - 3).to_f64().unwrap_or(f64::NAN)
        / 2f64.powi(l as i32);
    Ok(pre * sum)
}

/// `a_l(τ) = P_l(τ/(τ-1))` with
/// `P_l(x) = (2l-3)!!/2^l Σ_{k≤l} (-1)^{k+1} (2k-1)!!/(2^k k!) p_{k,l-k} x^k`, exactly.
pub fn a_l_exact(l: usize, tau: &BigRational) -> Result<BigRational> {
    if tau >= &BigRational::one() || tau < &BigRational::zero() {
        return Err(out_of_range("tau", tau, "[0, 1)"));
    }
    let x = tau / (tau - BigRational::one());
    let mut sum = BigRational::zero();
    let mut xp = BigRational::one();
    for k in 0..=l {
        let p = gen_p(k as u64, l - k)?;
        let ki = k as i64;
        let coef = sign_pow(ki + 1) * double_factorial(2 * ki - 1) * inv_factorial(ki) / rat_int(1u64 << k);
        sum += coef * &p[l - k] * &xp;
        xp *= &x;
    }
    Ok(sum * double_factorial(2 * l as i64 - 3) / rat_int(1u64 << l))
}

/// `sqrt(2N/π (1+τ)/(1-τ)) [1 + Σ_{l=1}^{m-1} a_l(τ)/N^l] + 1/2`.
pub fn expected_asymptotic_elliptic(n: usize, tau: f64, m: usize) -> Result<ExpansionResult> {
    check_even_n(n, 2)?;
    if !(1..=MAX_ELLIPTIC_ORDER).contains(&m) {
        return Err(out_of_range("order", m, "1..=5"));
    }
    if !(0.0..1.0).contains(&tau) {
        return Err(out_of_range("tau", tau, "[0, 1)"));
    }
    let nf = n as f64;
    let pre = (2.0 * nf / PI * (1.0 + tau) / (1.0 - tau)).sqrt();
    let mut terms = vec![("sqrt(2N(1+tau)/(pi(1-tau)))".to_string(), pre)];
    for l in 1..m {
        terms.push((format!("prefactor*a_{l}(tau)/N^{l}"), pre * a_l_p_hat(l, tau)? / nf.powi(l as i32)));
    }
    terms.push(("1/2".to_string(), 0.5));
    let alpha2 = nf * (1.0 - tau);
    let warning = (alpha2 < 16.0).then(|| {
        format!("N(1-tau) = {alpha2:.3} is small: tau is in the almost-Hermitian range, use the alpha expansion")
    });
    Ok(ExpansionResult::from_terms(terms, m, warning))
}

/// `a_l(τ)` for `τ` given as a double, through its exact rational value.
pub fn a_l_exact_f64(l: usize, tau: f64) -> Result<BigRational> {
    a_l_exact(l, &rational_from_f64(tau)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::exact::rat;

    /// Closed forms of `a_1..a_4`, numerator coefficients in `τ` (constant first).
    fn closed(l: usize, tau: &BigRational) -> BigRational {
        let (num, den): (&[i64], i64) = match l {
            1 => (&[-3, 1], 8),
            2 => (&[-3, -14, 5], 128),
            3 => (&[27, -203, 73, -17], 1024),
            4 => (&[499, -4196, -6846, 2684, -541], 32768),
            _ => unreachable!(),
        };
        let mut p = BigRational::zero();
        for c in num.iter().rev() {
            p = p * tau + rat(*c, 1);
        }
        let mut d = rat(den, 1);
        for _ in 0..l {
            d *= BigRational::one() - tau;
        }
        p / d
    }

    #[test]
    fn tau_zero_values() {
        let want = [rat(-3, 8), rat(-3, 128), rat(27, 1024), rat(499, 32768)];
        for (l, w) in (1..=4).zip(want) {
            assert_eq!(a_l_exact(l, &BigRational::zero()).unwrap(), w);
        }
    }

    #[test]
    fn closed_forms_in_tau() {
        for tau in [rat(0, 1), rat(1, 4), rat(1, 2)] {
            for l in 1..=4 {
                assert_eq!(a_l_exact(l, &tau).unwrap(), closed(l, &tau), "l={l} tau={tau}");
            }
        }
    }

    #[test]
    fn p_hat_route_matches_exact() {
        for tau in [0.0, 0.25, 0.5, 0.9] {
            for l in 0..=4 {
                let a = a_l_p_hat(l, tau).unwrap();
                let b = if l == 0 { 1.0 } else { a_l_exact_f64(l, tau).unwrap().to_f64().unwrap() };
                assert!((a - b).abs() < 1e-12 * (1.0 + b.abs()), "l={l} tau={tau}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn expansion_terms_sum_to_value() {
        let r = expected_asymptotic_ah(256, RegimeParam::alpha(1.0).unwrap(), 3).unwrap();
        let s: f64 = r.terms.iter().map(|t| t.1).sum();
        assert_eq!(s, r.value);
        assert_eq!(r.terms.len(), 4);
        let e = expected_asymptotic_elliptic(64, 0.98, 3).unwrap();
        assert!(e.warning.is_some());
    }
}
