//! Almost-Hermitian coefficients `c(α)`, `c_0(α)`, `c_l(α)` and `d_s(α)`.
//!
//! With `u = α²/2`,
//! `d_s = ((-1)^s/2) Σ_{k≥s} q_{k,s} (-1)^k/(k+1-s)! · (2k-1)!!/k! · u^k`,
//! `c = 2 d_0`, and for `l ≥ 0`
//! `c_l (+1/2 when l = 0) = 2 d_{l+1} - 2 Σ_{k≤l} (2k-1)!!/(k+1)! (u/2)^{k+1} d_{l-k}`.
//!
//! Two evaluations are provided. The series route sums the definition at
//! the exact rational value of `u` in fixed point with enough guard bits to
//! absorb the `e^{2u}` cancellation. The Bessel route writes every
//! coefficient as `poly(u) + e^{-u}(P_0(u) I_0(u) + P_1(u) I_1(u))` with
//! exact rational polynomials; it is exact algebra but loses digits in
//! floating point once `u` is large.

use std::f64::consts::{LOG2_E, PI};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{out_of_range, Result};
use crate::quad::{integrate, AdaptiveOptions};
use crate::series::exact::{double_factorial, factorial, inv_factorial, rat, rat_int, rational_from_f64, sign_pow, to_f64, Fixed};
use crate::series::{k_polynomial, GenKind, KPolynomial};
use crate::specfun::{bessel_i_scaled, erf};

/// Upper bound on `α` for the coefficient routines.
pub const MAX_ALPHA: f64 = 50.0;
/// Largest `l` for `c_l`.
pub const MAX_L: usize = 8;

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= MAX_ALPHA) {
        return Err(out_of_range("alpha", alpha, "(0, 50]"));
    }
    Ok(())
}

fn check_l(l: usize) -> Result<()> {
    if l > MAX_L {
        return Err(out_of_range("l", l, "0..=8"));
    }
    Ok(())
}

fn scaled_bessel(u: f64) -> (f64, f64) {
    let i0 = bessel_i_scaled(0, u).expect("u >= 0");
    let i1 = bessel_i_scaled(1, u).expect("u >= 0");
    (i0, i1)
}

/// `c(α) = e^{-α²/2} [I_0(α²/2) + I_1(α²/2)]`.
pub fn c_alpha(alpha: f64) -> f64 {
    let (i0, i1) = scaled_bessel(alpha * alpha / 2.0);
    i0 + i1
}

/// `c(α) = 2/(α√π) ∫_0^1 erf(α sqrt(1-s²)) ds` by adaptive quadrature.
pub fn c_alpha_integral(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let opts = AdaptiveOptions::abs(1e-12);
    let res = integrate(&mut |s: f64| erf(alpha * (1.0 - s * s).max(0.0).sqrt()), 0.0, 1.0, &opts);
    Ok(2.0 / (alpha * PI.sqrt()) * res.require(1e-12)?)
}

/// `c_0(α) = -1/2 e^{-α²/2} [I_0(α²/2) + α² I_1(α²/2)]`.
pub fn c0_alpha(alpha: f64) -> f64 {
    let (i0, i1) = scaled_bessel(alpha * alpha / 2.0);
    -0.5 * (i0 + alpha * alpha * i1)
}

/// `W_s(k) = q_{k,s} (k+1)!/(k+1-s)!` as a polynomial in `k`.
fn w_polynomial(s: usize) -> KPolynomial {
    let mut w = k_polynomial(GenKind::Q, s);
    for i in 0..s {
        w = w.mul(&KPolynomial::new(vec![rat(1 - i as i64, 1), BigRational::one()]));
    }
    w
}

/// Integer coefficients and common denominator of `W_s`.
fn w_integer(s: usize) -> (Vec<BigInt>, BigInt) {
    let w = w_polynomial(s);
    let den = w.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let num = w.coeffs().iter().map(|c| (c * rat_int(den.clone())).to_integer()).collect();
    (num, den)
}

fn eval_int(poly: &[BigInt], k: u64) -> BigInt {
    poly.iter().rev().fold(BigInt::zero(), |acc, c| acc * k + c)
}

/// `d_0 .. d_{s_max}` at `α` in fixed point, by direct summation.
pub struct DSeries {
    u: BigRational,
    d: Vec<Fixed>,
}

impl DSeries {
    pub fn new(alpha: f64, s_max: usize) -> Result<Self> {
        check_alpha(alpha)?;
        let a = rational_from_f64(alpha)?;
        let u = &a * &a / rat(2, 1);
        let uf = alpha * alpha / 2.0;
        let bits = (2.0 * uf * LOG2_E).ceil() as u64 + 48 * (s_max as u64 + 1) + 160;
        let w: Vec<_> = (0..=s_max).map(w_integer).collect();
        let (p, q) = (u.numer().clone(), u.denom().clone());
        // b_k = (-1)^k (2k-1)!!/(k!(k+1)!) u^k
        let mut b = BigInt::one() << bits;
        let mut sums = vec![BigInt::zero(); s_max + 1];
        sums[0] += &b * eval_int(&w[0].0, 0);
        let mut k: u64 = 0;
        loop {
            k += 1;
            b = -(b * (2 * k - 1) * &p) / (&q * (k * (k + 1)));
            for (s, sum) in sums.iter_mut().enumerate() {
                if k as usize >= s {
                    *sum += &b * eval_int(&w[s].0, k);
                }
            }
            // remaining terms are below 2^{40-bits} once past the peak
            let size = b.bits() as f64 + 2.0 * s_max as f64 * ((k + 2) as f64).log2();
            if k as f64 > 2.0 * uf + s_max as f64 + 4.0 && (b.is_zero() || size < 40.0) {
                break;
            }
        }
        let d = sums
            .into_iter()
            .zip(&w)
            .enumerate()
            .map(|(s, (sum, (_, den)))| {
                let mant = sum / (den * 2u32);
                Fixed::from_mant(if s % 2 == 0 { mant } else { -mant }, bits)
            })
            .collect();
        Ok(DSeries { u, d })
    }

    pub fn d(&self, s: usize) -> f64 {
        self.d[s].to_f64()
    }

    /// `2 d_{l+1} - 2 Σ_{k≤l} (2k-1)!!/(k+1)! (u/2)^{k+1} d_{l-k}`; this is
    /// `c_0 + 1/2` at `l = 0`.
    fn recombined(&self, l: usize) -> Fixed {
        let mut acc = self.d[l + 1].mul_rational(&rat(2, 1));
        let half_u = &self.u / rat(2, 1);
        let mut pow = half_u.clone();
        for k in 0..=l {
            let coef = double_factorial(2 * k as i64 - 1) * inv_factorial(k as i64 + 1) * &pow * rat(2, 1);
            acc = acc.sub(&self.d[l - k].mul_rational(&coef));
            pow *= &half_u;
        }
        acc
    }

    pub fn c(&self) -> f64 {
        self.d(0) * 2.0
    }

    pub fn c0(&self) -> f64 {
        self.recombined(0).to_f64() - 0.5
    }

    /// `c_l` for `1 <= l < s_max`.
    pub fn c_l(&self, l: usize) -> f64 {
        self.recombined(l).to_f64()
    }
}

/// `d_s(α)` by direct summation of its defining series.
pub fn d_coeff(s: usize, alpha: f64) -> Result<f64> {
    check_l(s.saturating_sub(1))?;
    Ok(DSeries::new(alpha, s)?.d(s))
}

/// `c_l(α)` for `1 <= l <= 8`, by direct summation.
pub fn c_l_alpha(l: usize, alpha: f64) -> Result<f64> {
    check_l(l)?;
    if l == 0 {
        return Ok(c0_alpha(alpha));
    }
    Ok(DSeries::new(alpha, l + 1)?.c_l(l))
}

/// `c`, `c_0`, `c_1..c_{l_max}` at one `α`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct AhCoefficients {
    pub alpha: f64,
    pub c: f64,
    pub c0: f64,
    /// `c_l[l-1]` is `c_l`.
    pub c_l: Vec<f64>,
}

pub fn ah_coefficients(alpha: f64, l_max: usize) -> Result<AhCoefficients> {
    check_l(l_max)?;
    let ds = DSeries::new(alpha, l_max + 1)?;
    Ok(AhCoefficients { alpha, c: ds.c(), c0: ds.c0(), c_l: (1..=l_max).map(|l| ds.c_l(l)).collect() })
}

/// `poly(u) + e^{-u} (i0(u) I_0(u) + i1(u) I_1(u))` with exact rational
/// polynomials in `u = α²/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct BesselForm {
    pub poly: Vec<BigRational>,
    pub i0: Vec<BigRational>,
    pub i1: Vec<BigRational>,
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn padd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

fn pscale(a: &[BigRational], c: &BigRational, shift: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); shift];
    out.extend(a.iter().map(|x| x * c));
    trim(out)
}

/// `u p'(u)`
fn ptheta(a: &[BigRational]) -> Vec<BigRational> {
    trim(a.iter().enumerate().map(|(i, x)| x * rat_int(i as u64)).collect())
}

fn peval(p: &[BigRational], u: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * u + to_f64(c))
}

impl BesselForm {
    fn zero() -> Self {
        BesselForm { poly: vec![], i0: vec![], i1: vec![] }
    }

    /// `e^{-u}(I_0 + I_1) = Σ (-1)^k (2k-1)!!/(k!(k+1)!) u^k`.
    fn base() -> Self {
        BesselForm { poly: vec![], i0: vec![BigRational::one()], i1: vec![BigRational::one()] }
    }

    fn add(&self, o: &Self) -> Self {
        BesselForm { poly: padd(&self.poly, &o.poly), i0: padd(&self.i0, &o.i0), i1: padd(&self.i1, &o.i1) }
    }

    /// Multiply by `c u^shift`.
    fn scale(&self, c: &BigRational, shift: usize) -> Self {
        BesselForm {
            poly: pscale(&self.poly, c, shift),
            i0: pscale(&self.i0, c, shift),
            i1: pscale(&self.i1, c, shift),
        }
    }

    /// Apply `θ = u d/du`, using `(e^{-u}I_0)' = e^{-u}(I_1 - I_0)` and
    /// `(e^{-u}I_1)' = e^{-u}(I_0 - I_1 - I_1/u)`.
    fn theta(&self) -> Self {
        let one = BigRational::one();
        let up = pscale(&self.i0, &one, 1);
        let uq = pscale(&self.i1, &one, 1);
        let i0 = padd(&padd(&ptheta(&self.i0), &pscale(&up, &-&one, 0)), &uq);
        let i1 = padd(&padd(&up, &ptheta(&self.i1)), &padd(&pscale(&uq, &-&one, 0), &pscale(&self.i1, &-&one, 0)));
        BesselForm { poly: ptheta(&self.poly), i0, i1 }
    }

    pub fn eval(&self, alpha: f64) -> f64 {
        let u = alpha * alpha / 2.0;
        let (e0, e1) = scaled_bessel(u);
        peval(&self.poly, u) + peval(&self.i0, u) * e0 + peval(&self.i1, u) * e1
    }

    /// A polynomial in `u` rewritten in powers of `α` (`u^j = α^{2j}/2^j`).
    pub fn to_alpha(p: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); 2 * p.len()];
        for (j, c) in p.iter().enumerate() {
            out[2 * j] = c / rat_int(BigInt::one() << j);
        }
        trim(out)
    }
}

/// `d_s` as a [`BesselForm`]: `((-1)^s/2)[W_s(θ) F - (k = s-1 term)]` where
/// `F = e^{-u}(I_0+I_1)`.
pub fn d_bessel_form(s: usize) -> BesselForm {
    let w = w_polynomial(s);
    let mut acc = BesselForm::zero();
    let mut power = BesselForm::base();
    for c in w.coeffs() {
        acc = acc.add(&power.scale(c, 0));
        power = power.theta();
    }
    if s >= 1 {
        let k = s as i64 - 1;
        let wk = w.eval(&rat_int(k));
        let bk = sign_pow(k) * double_factorial(2 * k - 1) / rat_int(factorial(k as u64) * factorial(k as u64 + 1));
        let mut poly = vec![BigRational::zero(); s];
        poly[s - 1] = -(wk * bk);
        acc = acc.add(&BesselForm { poly, i0: vec![], i1: vec![] });
    }
    acc.scale(&(sign_pow(s as i64) / rat(2, 1)), 0)
}

/// `c_l` (`c_0 + 1/2` at `l = 0`) as a [`BesselForm`].
pub fn c_l_bessel_form(l: usize) -> BesselForm {
    let d: Vec<BesselForm> = (0..=l + 1).map(d_bessel_form).collect();
    let mut acc = d[l + 1].scale(&rat(2, 1), 0);
    for k in 0..=l {
        let coef = -double_factorial(2 * k as i64 - 1) * inv_factorial(k as i64 + 1) * rat(2, 1)
            / rat_int(BigInt::one() << (k + 1));
        acc = acc.add(&d[l - k].scale(&coef, k + 1));
    }
    acc
}

/// `d_s(α)` from its Bessel form in double precision.
pub fn d_coeff_bessel(s: usize, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(d_bessel_form(s).eval(alpha))
}

/// `c_l(α)` (`l ≥ 1`) from its Bessel form in double precision.
pub fn c_l_alpha_bessel(l: usize, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_l(l)?;
    let v = c_l_bessel_form(l).eval(alpha);
    Ok(if l == 0 { v - 0.5 } else { v })
}

/// Closed-form polynomials `(P_{l,0}, P_{l,1})` in powers of `α`, with
/// `c_l = e^{-α²/2}[P_{l,0} I_0(α²/2) + P_{l,1} I_1(α²/2)]`, for `l ∈ {1, 2}`.
pub fn c_l_closed_polynomials(l: usize) -> Option<(Vec<BigRational>, Vec<BigRational>)> {
    let v = |c: &[i64], d: i64| -> Vec<BigRational> { c.iter().map(|&x| rat(x, d)).collect() };
    match l {
        // -α⁴(3α²-8)/48, α²(3α⁴-8α²-2)/48
        1 => Some((v(&[0, 0, 0, 0, 8, 0, -3], 48), v(&[0, 0, -2, 0, -8, 0, 3], 48))),
        // α⁴(α⁶-8α⁴+11α²+1)/96, -α²(α⁸-7α⁶+6α⁴+3α²+4)/96
        2 => Some((
            v(&[0, 0, 0, 0, 1, 0, 11, 0, -8, 0, 1], 96),
            v(&[0, 0, -4, 0, -3, 0, -6, 0, 7, 0, -1], 96),
        )),
        _ => None,
    }
}

/// `c_l(α)` from the closed-form polynomials, `l ∈ {1, 2}`.
pub fn c_l_closed(l: usize, alpha: f64) -> Option<f64> {
    let (p0, p1) = c_l_closed_polynomials(l)?;
    let (e0, e1) = scaled_bessel(alpha * alpha / 2.0);
    Some(peval(&p0, alpha) * e0 + peval(&p1, alpha) * e1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d0_and_d1_routes() {
        for alpha in [0.1, 0.5, 1.0, 1.5, 3.0, 8.0] {
            for s in 0..=1 {
                let a = d_coeff(s, alpha).unwrap();
                let b = d_coeff_bessel(s, alpha).unwrap();
                assert!((a - b).abs() < 1e-12, "s={s} alpha={alpha}: {a} vs {b}");
            }
            assert!((2.0 * d_coeff(0, alpha).unwrap() - c_alpha(alpha)).abs() < 1e-14);
        }
        // at large α the series route still matches the Bessel closed form of d_0
        for alpha in [20.0, 50.0] {
            assert!((2.0 * d_coeff(0, alpha).unwrap() - c_alpha(alpha)).abs() < 1e-14);
        }
    }

    #[test]
    fn d1_closed_form_and_limit() {
        // d_1 = 1/4 + ((u-1)/4) e^{-u}I_0 - (u/4) e^{-u}I_1
        let f = d_bessel_form(1);
        assert_eq!(f.poly, vec![rat(1, 4)]);
        assert_eq!(f.i0, vec![rat(-1, 4), rat(1, 4)]);
        assert_eq!(f.i1, vec![rat(0, 1), rat(-1, 4)]);
        assert!(d_coeff(1, 1e-4).unwrap().abs() < 1e-8);
    }

    #[test]
    fn c0_recombination() {
        let f = c_l_bessel_form(0);
        assert_eq!(f.poly, vec![rat(1, 2)]);
        assert_eq!(f.i0, vec![rat(-1, 2)]);
        assert_eq!(f.i1, vec![rat(0, 1), rat(-1, 1)]);
        for alpha in [0.5, 2.0, 10.0, 50.0] {
            let ds = DSeries::new(alpha, 1).unwrap();
            assert!((ds.c0() - c0_alpha(alpha)).abs() < 1e-13, "alpha={alpha}");
        }
    }

    #[test]
    fn closed_polynomials_match_assembly() {
        for l in 1..=2 {
            let f = c_l_bessel_form(l);
            assert!(f.poly.is_empty());
            let (p0, p1) = c_l_closed_polynomials(l).unwrap();
            assert_eq!(BesselForm::to_alpha(&f.i0), p0);
            assert_eq!(BesselForm::to_alpha(&f.i1), p1);
        }
        for l in 3..=MAX_L {
            assert!(c_l_bessel_form(l).poly.is_empty(), "l = {l}");
        }
    }

    #[test]
    fn c_l_routes_agree() {
        for alpha in [0.5, 1.0, 2.0] {
            for l in 1..=4 {
                let a = c_l_alpha(l, alpha).unwrap();
                let b = c_l_alpha_bessel(l, alpha).unwrap();
                assert!((a - b).abs() < 1e-11 * (1.0 + b.abs()), "l={l} alpha={alpha}: {a} vs {b}");
            }
            for l in 1..=2 {
                let a = c_l_alpha(l, alpha).unwrap();
                assert!((a - c_l_closed(l, alpha).unwrap()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn c_forms_and_limits() {
        for alpha in [0.1, 0.5, 1.0, 2.0, 4.0, 8.0] {
            let a = c_alpha(alpha);
            let b = c_alpha_integral(alpha).unwrap();
            assert!((a - b).abs() < 1e-10, "alpha={alpha}: {a} vs {b}");
        }
        assert!((c_alpha(1e-6) - 1.0).abs() < 1e-9);
        assert!((50.0 * PI.sqrt() * c_alpha(50.0) / 2.0 - 1.0).abs() < 1e-3);
    }
}
