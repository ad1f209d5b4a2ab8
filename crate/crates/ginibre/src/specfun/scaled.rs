//! Sign and log-magnitude representation of reals.

use std::cmp::Ordering;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A real number stored as `sign * exp(log_mag)`.
///
/// `log_mag` is ignored when `sign == 0`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ScaledReal {
    sign: i8,
    log_mag: f64,
}

impl ScaledReal {
    pub const ZERO: ScaledReal = ScaledReal { sign: 0, log_mag: f64::NEG_INFINITY };
    pub const ONE: ScaledReal = ScaledReal { sign: 1, log_mag: 0.0 };

    pub fn new(sign: i8, log_mag: f64) -> Self {
        if sign == 0 || log_mag == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            ScaledReal { sign: sign.signum(), log_mag }
        }
    }

    /// `exp(l)` as a positive value.
    pub fn from_log(l: f64) -> Self {
        Self::new(1, l)
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            ScaledReal { sign: if x > 0.0 { 1 } else { -1 }, log_mag: x.abs().ln() }
        }
    }

    pub fn to_f64(self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => f64::from(s) * self.log_mag.exp(),
        }
    }

    pub fn sign(self) -> i8 {
        self.sign
    }

    pub fn log_mag(self) -> f64 {
        self.log_mag
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    pub fn abs(self) -> Self {
        ScaledReal { sign: self.sign.abs(), ..self }
    }

    pub fn recip(self) -> Self {
        assert!(self.sign != 0, "reciprocal of zero");
        ScaledReal { sign: self.sign, log_mag: -self.log_mag }
    }

    pub fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Self::ONE;
        }
        if self.sign == 0 {
            return Self::ZERO;
        }
        let sign = if self.sign < 0 && n % 2 != 0 { -1 } else { 1 };
        ScaledReal { sign, log_mag: self.log_mag * f64::from(n) }
    }

    pub fn sqrt(self) -> Self {
        assert!(self.sign >= 0, "square root of a negative value");
        if self.sign == 0 {
            return Self::ZERO;
        }
        ScaledReal { sign: 1, log_mag: 0.5 * self.log_mag }
    }

    /// Multiply by `exp(l)`.
    pub fn mul_exp(self, l: f64) -> Self {
        if self.sign == 0 {
            self
        } else {
            ScaledReal { sign: self.sign, log_mag: self.log_mag + l }
        }
    }
}

impl PartialEq for ScaledReal {
    fn eq(&self, other: &Self) -> bool {
        self.sign == other.sign && (self.sign == 0 || self.log_mag == other.log_mag)
    }
}

impl PartialOrd for ScaledReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                0 => Some(Ordering::Equal),
                1 => self.log_mag.partial_cmp(&other.log_mag),
                _ => other.log_mag.partial_cmp(&self.log_mag),
            },
            o => Some(o),
        }
    }
}

impl Mul for ScaledReal {
    type Output = ScaledReal;
    fn mul(self, rhs: ScaledReal) -> ScaledReal {
        if self.sign == 0 || rhs.sign == 0 {
            return Self::ZERO;
        }
        ScaledReal { sign: self.sign * rhs.sign, log_mag: self.log_mag + rhs.log_mag }
    }
}

impl Div for ScaledReal {
    type Output = ScaledReal;
    fn div(self, rhs: ScaledReal) -> ScaledReal {
        self * rhs.recip()
    }
}

impl Neg for ScaledReal {
    type Output = ScaledReal;
    fn neg(self) -> ScaledReal {
        ScaledReal { sign: -self.sign, ..self }
    }
}

impl Add for ScaledReal {
    type Output = ScaledReal;
    fn add(self, rhs: ScaledReal) -> ScaledReal {
        if self.sign == 0 {
            return rhs;
        }
        if rhs.sign == 0 {
            return self;
        }
        let (big, small) = if self.log_mag >= rhs.log_mag { (self, rhs) } else { (rhs, self) };
        let r = (small.log_mag - big.log_mag).exp();
        if big.sign == small.sign {
            ScaledReal { sign: big.sign, log_mag: big.log_mag + r.ln_1p() }
        } else if r == 1.0 {
            Self::ZERO
        } else {
            ScaledReal { sign: big.sign, log_mag: big.log_mag + (-r).ln_1p() }
        }
    }
}

impl Sub for ScaledReal {
    type Output = ScaledReal;
    fn sub(self, rhs: ScaledReal) -> ScaledReal {
        self + (-rhs)
    }
}

impl Sum for ScaledReal {
    fn sum<I: Iterator<Item = ScaledReal>>(iter: I) -> ScaledReal {
        let mut acc = ScaledSum::new();
        for x in iter {
            acc.push(x);
        }
        acc.value()
    }
}

/// Running sum of `ScaledReal` terms with a rescaled plain accumulator.
///
/// The accumulator is kept relative to the largest magnitude seen so far,
/// so long sums cost one `exp` per term instead of one `ln_1p` and `exp`.
#[derive(Debug, Clone, Copy)]
pub struct ScaledSum {
    scale: f64,
    acc: f64,
}

impl Default for ScaledSum {
    fn default() -> Self {
        Self::new()
    }
}

impl ScaledSum {
    pub fn new() -> Self {
        ScaledSum { scale: f64::NEG_INFINITY, acc: 0.0 }
    }

    pub fn push(&mut self, x: ScaledReal) {
        if x.sign == 0 {
            return;
        }
        if x.log_mag > self.scale {
            if self.scale > f64::NEG_INFINITY {
                self.acc *= (self.scale - x.log_mag).exp();
            }
            self.scale = x.log_mag;
        }
        self.acc += f64::from(x.sign) * (x.log_mag - self.scale).exp();
    }

    pub fn value(&self) -> ScaledReal {
        ScaledReal::from_f64(self.acc).mul_exp(if self.acc == 0.0 { 0.0 } else { self.scale })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_matches_plain() {
        let a = ScaledReal::from_f64(3.5);
        let b = ScaledReal::from_f64(-1.25);
        assert!(((a * b).to_f64() + 4.375).abs() < 1e-14);
        assert!(((a + b).to_f64() - 2.25).abs() < 1e-14);
        assert!(((a - b).to_f64() - 4.75).abs() < 1e-14);
        assert!(((b - b).to_f64()).abs() == 0.0);
        assert!(((a / b).to_f64() + 2.8).abs() < 1e-14);
    }

    #[test]
    fn survives_overflow() {
        let big = ScaledReal::from_log(2000.0);
        let x = big * big.recip() * ScaledReal::from_f64(2.0);
        assert!((x.to_f64() - 2.0).abs() < 1e-12);
        let s: ScaledReal = vec![big, big, -big].into_iter().sum();
        assert!((s.log_mag() - 2000.0).abs() < 1e-12);
    }

    #[test]
    fn sum_matches_pairwise() {
        let xs = [1e-3, -2.0, 7.5, 1e5, -1e5, 0.25];
        let s: ScaledReal = xs.iter().map(|&x| ScaledReal::from_f64(x)).sum();
        let p = xs.iter().fold(ScaledReal::ZERO, |a, &x| a + ScaledReal::from_f64(x));
        let exact: f64 = 1e-3 - 2.0 + 7.5 + 0.25;
        assert!((s.to_f64() - exact).abs() < 1e-10);
        assert!((p.to_f64() - exact).abs() < 1e-10);
    }
}
