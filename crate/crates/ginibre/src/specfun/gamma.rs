//! Gamma function: exact products on the half-integer lattice, Lanczos elsewhere.

use std::f64::consts::{LN_2, PI};

use super::ScaledReal;
use crate::error::{Error, Result};

const LN_SQRT_PI: f64 = 0.572_364_942_924_700_087;

const LANCZOS_G: f64 = 5.242_187_5;
const LANCZOS: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];

/// Largest lattice index handled by exact products.
const EXACT_PRODUCT_MAX: f64 = 20_000.0;

/// Mantissa/exponent accumulator for long products of small integers.
struct BigProduct {
    m: f64,
    e: i64,
}

impl BigProduct {
    const STEP: f64 = 3.273_390_607_896_141_9e150; // 2^500

    fn new() -> Self {
        BigProduct { m: 1.0, e: 0 }
    }

    fn mul(&mut self, k: f64) {
        self.m *= k;
        if self.m > Self::STEP {
            self.m /= Self::STEP;
            self.e += 500;
        }
    }

    fn ln(&self) -> f64 {
        self.m.ln() + self.e as f64 * LN_2
    }
}

/// `ln((n-1)!)` for positive integer `n`, or `ln((2n-1)!!)` style products.
fn ln_product(range: impl Iterator<Item = f64>) -> f64 {
    let mut p = BigProduct::new();
    for k in range {
        p.mul(k);
    }
    p.ln()
}

/// `sin(pi x)` with argument reduction done before multiplying by pi.
pub fn sin_pi(x: f64) -> f64 {
    let mut r = x - 2.0 * (x / 2.0).round();
    let mut sign = 1.0;
    if r < 0.0 {
        r = -r;
        sign = -1.0;
    }
    if r > 0.5 {
        r = 1.0 - r;
    }
    if r == 0.0 {
        return 0.0;
    }
    sign * (PI * r).sin()
}

fn lanczos_ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let mut y = x;
    let tmp = x + LANCZOS_G;
    let tmp = (x + 0.5) * tmp.ln() - tmp;
    let mut ser = 0.999_999_999_999_997_092;
    for c in LANCZOS {
        y += 1.0;
        ser += c / y;
    }
    tmp + (2.506_628_274_631_000_5 * ser / x).ln()
}

/// `Gamma(x)` as a `ScaledReal`.
///
/// Integers and half-integers use exact products, other arguments use a
/// Lanczos approximation with reflection below 1/2.
pub fn log_gamma(x: f64) -> Result<ScaledReal> {
    if !x.is_finite() {
        return Err(Error::Pole(format!("Gamma({x})")));
    }
    if x <= 0.0 && x == x.round() {
        return Err(Error::Pole(format!("Gamma({x})")));
    }
    let twice = 2.0 * x;
    if twice == twice.round() && x.abs() <= EXACT_PRODUCT_MAX {
        return Ok(lattice_gamma(x));
    }
    if x >= 0.5 {
        return Ok(ScaledReal::from_log(lanczos_ln_gamma(x)));
    }
    let s = sin_pi(x);
    let rest = lanczos_ln_gamma(1.0 - x);
    Ok(ScaledReal::new(if s > 0.0 { 1 } else { -1 }, PI.ln() - s.abs().ln() - rest))
}

fn lattice_gamma(x: f64) -> ScaledReal {
    if x == x.round() {
        let n = x as i64;
        return ScaledReal::from_log(ln_product((2..n).map(|k| k as f64)));
    }
    // x = n + 1/2
    let n = (x - 0.5).round() as i64;
    if n >= 0 {
        // (2n-1)!! sqrt(pi) / 2^n
        let l = ln_product((0..n).map(|j| (2 * j + 1) as f64));
        ScaledReal::from_log(l - n as f64 * LN_2 + LN_SQRT_PI)
    } else {
        // Gamma(1/2 - m) = (-1)^m 2^m sqrt(pi) / (2m-1)!!
        let m = -n;
        let l = ln_product((0..m).map(|j| (2 * j + 1) as f64));
        let sign = if m % 2 == 0 { 1 } else { -1 };
        ScaledReal::new(sign, m as f64 * LN_2 + LN_SQRT_PI - l)
    }
}

/// `Gamma(x)` as a plain real.
pub fn gamma(x: f64) -> Result<f64> {
    log_gamma(x).map(ScaledReal::to_f64)
}

/// `ln(n!)`.
pub fn ln_factorial(n: u64) -> f64 {
    if (n as f64) < EXACT_PRODUCT_MAX {
        ln_product((2..=n).map(|k| k as f64))
    } else {
        lanczos_ln_gamma(n as f64 + 1.0)
    }
}

/// `1 / Gamma(x)`, zero at the poles.
pub fn rgamma(x: f64) -> ScaledReal {
    match log_gamma(x) {
        Ok(g) => g.recip(),
        Err(_) => ScaledReal::ZERO,
    }
}
