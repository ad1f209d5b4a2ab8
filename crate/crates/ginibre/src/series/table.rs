//! Named coefficient tables with exact and floating views.

use std::str::FromStr;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{a_k_n_limit, gen_p, gen_p_hat, gen_q};
use crate::error::{out_of_range, Result};
use crate::expected::{a_l_exact, c_l_alpha, d_coeff, MAX_L};
use crate::series::exact::rational_from_f64;
use crate::variance::{a_coefficients, MAX_A_K};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoeffKind {
    /// `q_{k,s}`, `s = 0..=max`.
    Q,
    /// `p̂_{k,l}`, `l = 0..=max`.
    PHat,
    /// `p_{k,s}`, `s = 0..=max`.
    P,
    /// `c_0(α), c_1(α), …`; real.
    CL,
    /// `a_0(τ), a_1(τ), …` at the rational value of `τ`.
    AL,
    /// `d_s(α)`; real.
    DS,
    /// `a_k = a_k^0 + 2 Σ a_k^n`.
    AK,
    /// `a_k^n`, `n = 0..=max`.
    AKN,
}

impl FromStr for CoeffKind {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| out_of_range("kind", s, "q|p_hat|p|c_l|a_l|d_s|a_k|a_k_n"))
    }
}

/// Exact rationals serialize as `"p/q"` strings, reals as numbers.
#[derive(Debug, Clone, PartialEq)]
pub enum CoeffValue {
    Exact(BigRational),
    Real(f64),
}

impl CoeffValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            CoeffValue::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            CoeffValue::Real(x) => *x,
        }
    }
}

impl Serialize for CoeffValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CoeffValue::Exact(r) => s.serialize_str(&r.to_string()),
            CoeffValue::Real(x) => s.serialize_f64(*x),
        }
    }
}

impl<'de> Deserialize<'de> for CoeffValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Number(f64),
        }
        match Raw::deserialize(d)? {
            Raw::Text(t) => BigRational::from_str(&t).map(CoeffValue::Exact).map_err(serde::de::Error::custom),
            Raw::Number(x) => Ok(CoeffValue::Real(x)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientTable {
    pub kind: CoeffKind,
    /// First index for `q`, `p̂`, `p` and `a_k^n`; unused otherwise.
    pub k: usize,
    /// `α` for `c_l` and `d_s`, `τ` for `a_l`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<f64>,
    pub values: Vec<CoeffValue>,
}

fn exact(v: Vec<BigRational>) -> Vec<CoeffValue> {
    v.into_iter().map(CoeffValue::Exact).collect()
}

fn need(param: Option<f64>, name: &'static str) -> Result<f64> {
    param.ok_or_else(|| out_of_range(name, "missing", "a value for this table kind"))
}

impl CoefficientTable {
    /// Entries `0..=max` of `kind`.
    pub fn generate(kind: CoeffKind, k: usize, max: usize, param: Option<f64>) -> Result<Self> {
        let values = match kind {
            CoeffKind::Q => exact(gen_q(k as u64, max)?),
            CoeffKind::PHat => exact(gen_p_hat(k as u64, max)?),
            CoeffKind::P => exact(gen_p(k as u64, max)?),
            CoeffKind::CL => {
                if max > MAX_L {
                    return Err(out_of_range("max", max, "0..=8"));
                }
                let alpha = need(param, "alpha")?;
                (0..=max).map(|l| c_l_alpha(l, alpha).map(CoeffValue::Real)).collect::<Result<_>>()?
            }
            CoeffKind::AL => {
                let tau = rational_from_f64(param.unwrap_or(0.0))?;
                let mut v = vec![CoeffValue::Exact(BigRational::from_integer(1.into()))];
                for l in 1..=max {
                    v.push(CoeffValue::Exact(a_l_exact(l, &tau)?));
                }
                v
            }
            CoeffKind::DS => {
                let alpha = need(param, "alpha")?;
                (0..=max).map(|s| d_coeff(s, alpha).map(CoeffValue::Real)).collect::<Result<_>>()?
            }
            CoeffKind::AK => {
                if max > MAX_A_K {
                    return Err(out_of_range("max", max, "0..=40"));
                }
                exact(a_coefficients(max)?)
            }
            CoeffKind::AKN => exact((0..=max).map(|n| a_k_n_limit(k, n)).collect()),
        };
        Ok(CoefficientTable { kind, k, param, values })
    }

    /// Regenerates the table and compares: exact entries by equality, real
    /// entries to `1e-12` relative.
    pub fn reproduces(&self) -> Result<bool> {
        if self.values.is_empty() {
            return Ok(true);
        }
        let fresh = Self::generate(self.kind, self.k, self.values.len() - 1, self.param)?;
        Ok(self.values.iter().zip(&fresh.values).all(|(a, b)| match (a, b) {
            (CoeffValue::Exact(x), CoeffValue::Exact(y)) => x == y,
            (CoeffValue::Real(x), CoeffValue::Real(y)) => (x - y).abs() <= 1e-12 * y.abs().max(1e-300),
            _ => false,
        }))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(CoeffValue::to_f64).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::exact::rat;

    #[test]
    fn json_round_trip() {
        let t = CoefficientTable::generate(CoeffKind::Q, 2, 4, None).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.starts_with(r#"{"kind":"q","k":2,"values":["1","3/2""#), "{s}");
        let back: CoefficientTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        assert!(back.reproduces().unwrap());
    }

    #[test]
    fn a_l_at_zero() {
        let t = CoefficientTable::generate(CoeffKind::AL, 0, 4, Some(0.0)).unwrap();
        let want = [rat(1, 1), rat(-3, 8), rat(-3, 128), rat(27, 1024), rat(499, 32768)];
        for (v, w) in t.values.iter().zip(want) {
            assert_eq!(*v, CoeffValue::Exact(w));
        }
    }

    #[test]
    fn real_tables_reproduce() {
        let t = CoefficientTable::generate(CoeffKind::CL, 0, 3, Some(1.0)).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        let back: CoefficientTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        assert!(back.reproduces().unwrap());
        assert!(CoefficientTable::generate(CoeffKind::DS, 0, 2, None).is_err());
        assert_eq!("a_k_n".parse::<CoeffKind>().unwrap(), CoeffKind::AKN);
    }
}
