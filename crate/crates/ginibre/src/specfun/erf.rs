//! Error function and its complement.

use std::f64::consts::PI;

const SERIES_LIMIT: f64 = 0.5;

/// `erf(x)` by the positive Taylor series `2/sqrt(pi) e^{-x^2} sum 2^n x^{2n+1}/(2n+1)!!`.
fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    while term.abs() > 1e-17 * sum.abs() {
        n += 1.0;
        term *= 2.0 * x2 / (2.0 * n + 1.0);
        sum += term;
    }
    2.0 / PI.sqrt() * (-x2).exp() * sum
}

/// `erfc(x)` for `x >= 0.5` by the Laplace continued fraction (modified Lentz).
fn erfc_cf(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = f;
    let mut d = 0.0;
    for n in 1..5000 {
        let a = 0.5 * f64::from(n);
        d = x + a * d;
        if d == 0.0 {
            d = TINY;
        }
        d = 1.0 / d;
        c = x + a / c;
        if c == 0.0 {
            c = TINY;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / PI.sqrt() / f
}

pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return x;
    }
    let a = x.abs();
    if a < SERIES_LIMIT {
        erf_series(x)
    } else {
        (1.0 - erfc_cf(a)).copysign(x)
    }
}

pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return x;
    }
    if x < SERIES_LIMIT {
        1.0 - erf(x)
    } else {
        erfc_cf(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, ToPrimitive};

    /// Alternating Maclaurin series summed in exact rationals.
    fn erf_rational_oracle(x: &BigRational, terms: usize) -> f64 {
        let x2 = x * x;
        let mut pow = x.clone();
        let mut fact = BigInt::one();
        let mut sum = BigRational::from_integer(0.into());
        for n in 0..terms {
            if n > 0 {
                pow = -(pow * &x2);
                fact *= n;
            }
            sum += &pow / BigRational::from_integer(&fact * (2 * n + 1));
        }
        2.0 / PI.sqrt() * sum.to_f64().unwrap()
    }

    #[test]
    fn erf_one_matches_rational_series() {
        let oracle = erf_rational_oracle(&BigRational::one(), 30);
        assert!((erf(1.0) - oracle).abs() < 1e-15);
        assert!((erf(1.0) - 0.842_700_792_949_715).abs() < 1e-15);
    }

    #[test]
    fn odd_and_limits() {
        assert_eq!(erf(0.0), 0.0);
        assert_eq!(erf(-0.3), -erf(0.3));
        assert_eq!(erf(30.0), 1.0);
        assert!((erfc(-30.0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn complement_sums_to_one() {
        for i in -600..=600 {
            let x = f64::from(i) / 100.0;
            assert!((erf(x) + erfc(x) - 1.0).abs() <= 1e-15, "x = {x}");
        }
    }

    #[test]
    fn erfc_tail_reference() {
        // erfc(5) and erfc(1.2) to high precision.
        assert!((erfc(5.0) / 1.537_459_794_428_034_8e-12 - 1.0).abs() < 1e-14);
        assert!((erfc(1.2) / 0.089_686_021_770_364_62 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn monotone_on_grid() {
        let mut prev = erf(-6.0);
        for i in -599..=600 {
            let v = erf(f64::from(i) / 100.0);
            assert!(v >= prev);
            prev = v;
        }
    }
}
