//! Physicists' Hermite polynomials in overflow-safe form.

use std::f64::consts::LN_2;

use super::ScaledReal;

const RESCALE_BITS: i32 = 500;
const RESCALE_UP: f64 = 3.273_390_607_896_141_9e150; // 2^500

/// Three-term recurrence `H_{n+1} = 2x H_n - 2n H_{n-1}` carried with a
/// shared binary exponent.
#[derive(Debug, Clone)]
pub struct HermiteRecurrence {
    x: f64,
    n: u64,
    prev: f64,
    cur: f64,
    exp2: i64,
}

impl HermiteRecurrence {
    pub fn new(x: f64) -> Self {
        HermiteRecurrence { x, n: 0, prev: 0.0, cur: 1.0, exp2: 0 }
    }

    /// Degree of the polynomial returned by [`Self::value`].
    pub fn degree(&self) -> u64 {
        self.n
    }

    pub fn value(&self) -> ScaledReal {
        ScaledReal::from_f64(self.cur).mul_exp(self.exp2 as f64 * LN_2)
    }

    /// `H_{n-1}` relative to the current degree `n` (zero at `n = 0`).
    pub fn previous(&self) -> ScaledReal {
        ScaledReal::from_f64(self.prev).mul_exp(self.exp2 as f64 * LN_2)
    }

    pub fn step(&mut self) {
        let next = 2.0 * self.x * self.cur - 2.0 * self.n as f64 * self.prev;
        self.prev = self.cur;
        self.cur = next;
        self.n += 1;
        if self.cur.abs() > RESCALE_UP {
            self.cur /= RESCALE_UP;
            self.prev /= RESCALE_UP;
            self.exp2 += i64::from(RESCALE_BITS);
        }
    }
}

/// `H_k(x)` as a `ScaledReal`.
pub fn hermite_scaled(k: u64, x: f64) -> ScaledReal {
    let mut r = HermiteRecurrence::new(x);
    for _ in 0..k {
        r.step();
    }
    r.value()
}

/// `H_0(x), ..., H_kmax(x)`.
pub fn hermite_scaled_all(kmax: u64, x: f64) -> Vec<ScaledReal> {
    let mut r = HermiteRecurrence::new(x);
    let mut out = Vec::with_capacity(kmax as usize + 1);
    out.push(r.value());
    for _ in 0..kmax {
        r.step();
        out.push(r.value());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::rgamma;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::ToPrimitive;

    fn rational_hermite(k: usize, x: &BigRational) -> BigRational {
        let two = BigRational::from_integer(BigInt::from(2));
        let mut h0 = BigRational::from_integer(BigInt::from(1));
        if k == 0 {
            return h0;
        }
        let mut h1 = &two * x;
        for n in 1..k {
            let h2 = &two * x * &h1 - &two * BigRational::from_integer(BigInt::from(n)) * &h0;
            h0 = h1;
            h1 = h2;
        }
        h1
    }

    #[test]
    fn low_degrees() {
        assert_eq!(hermite_scaled(0, 0.7).to_f64(), 1.0);
        assert!((hermite_scaled(1, 0.7).to_f64() - 1.4).abs() < 1e-15);
        assert_eq!(hermite_scaled(2, 0.0).to_f64(), -2.0);
    }

    #[test]
    fn hermite_numbers() {
        for k in 0..60u64 {
            let h = hermite_scaled(k, 0.0);
            if k % 2 == 1 {
                assert!(h.is_zero());
                continue;
            }
            let want = ScaledReal::from_log(0.5 * std::f64::consts::PI.ln() + k as f64 * LN_2)
                * rgamma((1.0 - k as f64) / 2.0);
            assert_eq!(h.sign(), want.sign());
            assert!((h.log_mag() - want.log_mag()).abs() < 1e-13 * want.log_mag().abs().max(1.0));
        }
    }

    #[test]
    fn rational_oracle() {
        let x = BigRational::new(5.into(), 4.into());
        let want = rational_hermite(6, &x).to_f64().unwrap();
        let got = hermite_scaled(6, 1.25).to_f64();
        assert!(((got - want) / want).abs() < 1e-12);
        let x = BigRational::new(37.into(), 10.into());
        let want = rational_hermite(40, &x);
        let got = hermite_scaled(40, 3.7);
        let w = want.to_f64().unwrap();
        assert!(((got.to_f64() - w) / w).abs() < 1e-12);
    }

    #[test]
    fn no_overflow_at_large_degree() {
        let h = hermite_scaled(100_000, 1000.0);
        assert!(h.log_mag().is_finite());
        assert!(h.sign() != 0);
        assert!(!hermite_scaled(3000, 50.0).log_mag().is_nan());
    }

    #[test]
    fn parity_is_exact() {
        for k in [0u64, 1, 2, 7, 50, 511, 2048] {
            for x in [0.3, 2.5, 17.0] {
                let p = hermite_scaled(k, x);
                let m = hermite_scaled(k, -x);
                let s = if k % 2 == 0 { 1 } else { -1 };
                assert_eq!(m.sign(), s * p.sign());
                assert!((m.log_mag() - p.log_mag()).abs() <= 1e-13 * p.log_mag().abs().max(1.0));
            }
        }
    }

    #[test]
    fn derivative_rule() {
        let h = 1e-5;
        for k in 1..=50u64 {
            for x in [-1.3, 0.4, 2.2] {
                let d = (hermite_scaled(k, x + h).to_f64() - hermite_scaled(k, x - h).to_f64()) / (2.0 * h);
                let want = 2.0 * k as f64 * hermite_scaled(k - 1, x).to_f64();
                // size of the terms in H_k' = 2x H_k - H_{k+1}
                let scale = (2.0 * x * hermite_scaled(k, x).to_f64()).abs() + hermite_scaled(k + 1, x).to_f64().abs();
                assert!((d - want).abs() <= 1e-6 * scale, "k = {k}, x = {x}");
            }
        }
    }
}
