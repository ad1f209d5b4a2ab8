//! Exact integer and rational helpers: factorials, double factorials, binomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Result;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn rat_int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Exact rational value of a finite double.
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| crate::error::out_of_range("x", x, "finite"))
}

/// Nearest double (correctly rounded for reasonable sizes).
pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `1/n!`, zero for negative `n`.
pub fn inv_factorial(n: i64) -> BigRational {
    if n < 0 {
        BigRational::zero()
    } else {
        BigRational::new(BigInt::one(), factorial(n as u64))
    }
}

/// `n!!` for odd `n`, extended to negative odd `n` by `(-2j-1)!! = (-1)^j/(2j-1)!!`.
///
/// Even `n >= 0` gives the usual even double factorial.
pub fn double_factorial(n: i64) -> BigRational {
    if n >= -1 {
        let mut r = BigInt::one();
        let mut m = n;
        while m > 1 {
            r *= m;
            m -= 2;
        }
        return rat_int(r);
    }
    assert!(n % 2 != 0, "double factorial of a negative even integer");
    let j = (-n - 1) / 2;
    let d = double_factorial(2 * j - 1);
    let r = BigRational::one() / d;
    if j % 2 == 0 {
        r
    } else {
        -r
    }
}

/// Generalized binomial `a (a-1) ... (a-j+1) / j!` for integer `a`; zero for `j < 0`.
pub fn binomial(a: i64, j: i64) -> BigInt {
    if j < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    for i in 0..j {
        num *= a - i;
    }
    num / factorial(j as u64)
}

/// `(-1)^n` as a rational.
pub fn sign_pow(n: i64) -> BigRational {
    if n.rem_euclid(2) == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// Fixed-point real carried as `mant / 2^bits`, used where exact rational
/// sums would be too large but double precision cancels.
#[derive(Debug, Clone, PartialEq)]
pub struct Fixed {
    mant: BigInt,
    bits: u64,
}

impl Fixed {
    pub fn zero(bits: u64) -> Self {
        Fixed { mant: BigInt::zero(), bits }
    }

    pub fn from_mant(mant: BigInt, bits: u64) -> Self {
        Fixed { mant, bits }
    }

    pub fn from_rational(x: &BigRational, bits: u64) -> Self {
        Fixed { mant: (x.numer() << bits) / x.denom(), bits }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn mul_rational(&self, x: &BigRational) -> Self {
        Fixed { mant: &self.mant * x.numer() / x.denom(), bits: self.bits }
    }

    pub fn add(&self, other: &Fixed) -> Self {
        debug_assert_eq!(self.bits, other.bits);
        Fixed { mant: &self.mant + &other.mant, bits: self.bits }
    }

    pub fn sub(&self, other: &Fixed) -> Self {
        debug_assert_eq!(self.bits, other.bits);
        Fixed { mant: &self.mant - &other.mant, bits: self.bits }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    /// `log2 |self|`, or `-inf` at zero.
    pub fn log2_abs(&self) -> f64 {
        if self.mant.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.mant.abs().bits() as f64 - self.bits as f64
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&BigRational::new(self.mant.clone(), BigInt::one() << self.bits))
    }
}
