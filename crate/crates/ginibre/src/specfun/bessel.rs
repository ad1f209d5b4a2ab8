//! Modified Bessel functions `I_0`, `I_1`, plain and exponentially scaled.

use std::f64::consts::PI;

use crate::error::{out_of_range, Result};

/// Crossover between the power series and the large-argument expansion.
pub const SERIES_MAX: f64 = 20.0;

fn check_order(nu: u32) -> Result<()> {
    if nu > 1 {
        return Err(out_of_range("nu", nu, "{0, 1}"));
    }
    Ok(())
}

/// Power series `sum (x/2)^{2k+nu} / (k! (k+nu)!)`.
fn series(nu: u32, x: f64) -> f64 {
    let h = 0.5 * x;
    let h2 = h * h;
    let mut term = if nu == 0 { 1.0 } else { h };
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= h2 / (k * (k + f64::from(nu)));
        sum += term;
        if term <= 1e-17 * sum {
            return sum;
        }
    }
}

/// `e^{-x} I_nu(x)` by the Hankel expansion, valid for large `x`.
fn asymptotic_scaled(nu: u32, x: f64) -> f64 {
    let mu = 4.0 * f64::from(nu * nu);
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let kf = f64::from(k);
        let odd = 2.0 * kf - 1.0;
        term *= -(mu - odd * odd) / (8.0 * kf * x);
        if term.abs() >= prev {
            break;
        }
        sum += term;
        prev = term.abs();
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum / (2.0 * PI * x).sqrt()
}

/// `I_nu(x)` for `nu` in `{0, 1}` and `x >= 0`.
pub fn bessel_i(nu: u32, x: f64) -> Result<f64> {
    check_order(nu)?;
    if x < 0.0 {
        return Err(out_of_range("x", x, "[0, inf)"));
    }
    if x <= SERIES_MAX {
        Ok(series(nu, x))
    } else {
        Ok(asymptotic_scaled(nu, x) * x.exp())
    }
}

/// `e^{-x} I_nu(x)`; finite for every `x >= 0`.
pub fn bessel_i_scaled(nu: u32, x: f64) -> Result<f64> {
    check_order(nu)?;
    if x < 0.0 {
        return Err(out_of_range("x", x, "[0, inf)"));
    }
    if x <= SERIES_MAX {
        Ok(series(nu, x) * (-x).exp())
    } else {
        Ok(asymptotic_scaled(nu, x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, ToPrimitive, Zero};

    /// Truncated defining series in exact rationals.
    fn rational_oracle(nu: u32, x: &BigRational, terms: u32) -> f64 {
        let h = x / BigRational::from_integer(2.into());
        let mut sum = BigRational::zero();
        let mut kf = BigInt::one();
        for k in 0..terms {
            if k > 0 {
                kf *= k;
            }
            let knu: BigInt = &kf * if nu == 1 { BigInt::from(k + 1) } else { BigInt::one() };
            let p = num_traits::pow(h.clone(), (2 * k + nu) as usize);
            sum += p / BigRational::from_integer(&kf * knu);
        }
        sum.to_f64().unwrap()
    }

    #[test]
    fn anchors() {
        assert_eq!(bessel_i(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_i(1, 0.0).unwrap(), 0.0);
        let oracle = rational_oracle(0, &BigRational::one(), 25);
        assert!((bessel_i(0, 1.0).unwrap() - oracle).abs() < 1e-15);
        assert!((oracle - 1.266_065_877_752_008).abs() < 1e-15);
    }

    #[test]
    fn crossover_is_continuous() {
        for nu in 0..2 {
            let s = series(nu, SERIES_MAX) * (-SERIES_MAX).exp();
            let a = asymptotic_scaled(nu, SERIES_MAX);
            assert!(((s - a) / s).abs() < 1e-12, "nu = {nu}: {s} vs {a}");
        }
    }

    #[test]
    fn rational_oracle_at_moderate_argument() {
        let x = BigRational::new(37.into(), 4.into());
        for nu in 0..2 {
            let o = rational_oracle(nu, &x, 60);
            let v = bessel_i(nu, 9.25).unwrap();
            assert!(((v - o) / o).abs() < 1e-14);
        }
    }

    #[test]
    fn large_argument_reference() {
        // e^{-x} I_nu(x) at x = 50 and 1250 from an arbitrary precision evaluation.
        let cases = [
            (0, 50.0, 0.056_561_626_647_454_192_5),
            (1, 50.0, 0.055_993_123_892_895_399_6),
            (0, 1250.0, 0.011_284_920_558_316_507_8),
            (1, 1250.0, 0.011_280_405_686_576_397_3),
        ];
        for (nu, x, want) in cases {
            let v = bessel_i_scaled(nu, x).unwrap();
            assert!(((v - want) / want).abs() < 1e-14, "nu = {nu}, x = {x}");
        }
    }

    #[test]
    fn rejects_bad_order() {
        assert!(bessel_i(2, 1.0).is_err());
    }
}
