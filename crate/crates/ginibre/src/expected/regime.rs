use serde::{Deserialize, Serialize};

use crate::error::{out_of_range, Result};

/// Non-Hermiticity parameter, either fixed `τ` or the almost-Hermitian
/// scaling `τ_N = 1 - α²/N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum RegimeParam {
    Tau { tau: f64 },
    Alpha { alpha: f64 },
}

impl RegimeParam {
    pub fn tau(tau: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&tau) {
            return Err(out_of_range("tau", tau, "[0, 1]"));
        }
        Ok(RegimeParam::Tau { tau })
    }

    pub fn alpha(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(out_of_range("alpha", alpha, "alpha > 0"));
        }
        Ok(RegimeParam::Alpha { alpha })
    }

    /// `τ` at matrix size `n`; alpha mode needs `α² < n`.
    pub fn tau_at(&self, n: usize) -> Result<f64> {
        match *self {
            RegimeParam::Tau { tau } => Ok(tau),
            RegimeParam::Alpha { alpha } => {
                let a2 = alpha * alpha;
                if a2 >= n as f64 {
                    return Err(out_of_range("alpha", alpha, "alpha^2 < N"));
                }
                Ok(1.0 - a2 / n as f64)
            }
        }
    }

    /// `α = sqrt(N (1 - τ))` at matrix size `n`.
    pub fn alpha_at(&self, n: usize) -> f64 {
        match *self {
            RegimeParam::Tau { tau } => (n as f64 * (1.0 - tau)).sqrt(),
            RegimeParam::Alpha { alpha } => alpha,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions() {
        let r = RegimeParam::alpha(1.0).unwrap();
        assert_eq!(r.tau_at(64).unwrap(), 1.0 - 1.0 / 64.0);
        assert!(r.tau_at(1).is_err());
        let t = RegimeParam::tau(0.5).unwrap();
        assert!((t.alpha_at(8) - 2.0).abs() < 1e-15);
        assert!(RegimeParam::tau(1.5).is_err());
        assert!(RegimeParam::alpha(0.0).is_err());
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, r#"{"mode":"alpha","alpha":1.0}"#);
    }
}
