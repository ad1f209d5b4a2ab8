//! Limiting and reference densities, and the Christoffel–Darboux check.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{check_even_n, out_of_range, Error, Result};
use crate::expected::c_alpha;
use crate::specfun::{erf, ln_factorial, HermiteRecurrence, ScaledReal, ScaledSum};

/// Limiting density in the almost-Hermitian regime,
/// `1_{[-2,2]}(x) erf(α/2 sqrt(4-x²)) / (2α√π c(α))`.
pub fn density_limit_ah(alpha: f64, x: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(out_of_range("alpha", alpha, "(0, 50]"));
    }
    if x.abs() >= 2.0 {
        return Ok(0.0);
    }
    let c = c_alpha(alpha);
    Ok(erf(alpha / 2.0 * (4.0 - x * x).sqrt()) / (2.0 * alpha * PI.sqrt() * c))
}

/// Semicircle density on `[-2, 2]`.
pub fn density_semicircle(x: f64) -> f64 {
    if x.abs() >= 2.0 {
        0.0
    } else {
        (4.0 - x * x).sqrt() / (2.0 * PI)
    }
}

/// Uniform density on `[-1-τ, 1+τ]`.
pub fn density_uniform_elliptic(tau: f64, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(out_of_range("tau", tau, "[0, 1]"));
    }
    Ok(if x.abs() <= 1.0 + tau { 1.0 / (2.0 * (1.0 + tau)) } else { 0.0 })
}

/// Both sides of `F_N'(x) = 4τx/(1+τ) F_N(x) - 4(τ/2)^{N-1}/(1+τ) H_{N-2}(x) H_{N-1}(x)/(N-2)!`
/// with `F_N(x) = Σ_{k≤N-2} (τ/2)^k/k! H_k(x)²`, the left side by central difference.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CdResidual {
    pub lhs: ScaledReal,
    pub rhs: ScaledReal,
    /// `|LHS - RHS|`.
    pub residual: ScaledReal,
    /// `|LHS - RHS| / |RHS|`.
    pub relative: f64,
}

fn f_n(n: usize, tau: f64, x: f64) -> ScaledReal {
    let ln_half_tau = (tau / 2.0).ln();
    let mut rec = HermiteRecurrence::new(x);
    let mut sum = ScaledSum::new();
    for k in 0..=n - 2 {
        if k > 0 {
            rec.step();
        }
        let h = rec.value();
        if !h.is_zero() {
            sum.push(ScaledReal::from_log(2.0 * h.log_mag() + k as f64 * ln_half_tau - ln_factorial(k as u64)));
        }
    }
    sum.value()
}

/// Finite-difference residual of the Christoffel–Darboux derivative identity.
pub fn cd_residual(n: usize, tau: f64, x: f64) -> Result<CdResidual> {
    check_even_n(n, 2)?;
    if n > 512 {
        return Err(Error::InvalidN { n, reason: "N above 512 for the Christoffel-Darboux check" });
    }
    if !(tau > 0.0 && tau <= 1.0) {
        return Err(out_of_range("tau", tau, "(0, 1]"));
    }
    let h = 1e-6 * x.abs().max(1.0);
    let lhs = (f_n(n, tau, x + h) - f_n(n, tau, x - h)).mul_exp(-(2.0 * h).ln());
    let mut rec = HermiteRecurrence::new(x);
    for _ in 0..n - 1 {
        rec.step();
    }
    let first = f_n(n, tau, x) * ScaledReal::from_f64(4.0 * tau * x / (1.0 + tau));
    let second = (rec.value() * rec.previous()).mul_exp(
        (n as f64 - 1.0) * (tau / 2.0).ln() + (4.0 / (1.0 + tau)).ln() - ln_factorial(n as u64 - 2),
    );
    let rhs = first - second;
    let residual = (lhs - rhs).abs();
    let relative = if rhs.is_zero() { residual.to_f64() } else { (residual / rhs.abs()).to_f64() };
    Ok(CdResidual { lhs, rhs, residual, relative })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate, AdaptiveOptions};

    #[test]
    fn limit_density_values() {
        for alpha in [0.5, 1.0, 2.0, 4.0] {
            let at0 = density_limit_ah(alpha, 0.0).unwrap();
            let want = erf(alpha) / (c_alpha(alpha) * 2.0 * alpha * PI.sqrt());
            assert!((at0 - want).abs() < 1e-15);
            assert_eq!(density_limit_ah(alpha, 2.0).unwrap(), 0.0);
            let opts = AdaptiveOptions { abs_tol: 1e-13, rel_tol: 0.0, ..Default::default() };
            let mass = integrate(|x| density_limit_ah(alpha, x).unwrap(), -2.0, 2.0, &opts).value;
            assert!((mass - 1.0).abs() < 1e-10, "alpha={alpha}: {mass}");
        }
    }

    #[test]
    fn limit_interpolates() {
        let sup = (0..=38)
            .map(|i| -1.9 + 0.1 * i as f64)
            .map(|x| (density_limit_ah(0.05, x).unwrap() - density_semicircle(x)).abs())
            .fold(0.0, f64::max);
        assert!(sup <= 0.01, "{sup}");
        assert!((density_limit_ah(8.0, 0.0).unwrap() - 0.25).abs() < 0.02);
    }

    #[test]
    fn reference_densities() {
        assert!((density_semicircle(0.0) - 1.0 / PI).abs() < 1e-16);
        assert_eq!(density_uniform_elliptic(0.5, 1.4).unwrap() * 3.0, 1.0);
        assert_eq!(density_uniform_elliptic(0.5, 1.6).unwrap(), 0.0);
    }

    #[test]
    fn christoffel_darboux() {
        // both sides vanish identically at N = 2
        let r = cd_residual(2, 0.4, 0.7).unwrap();
        assert!(r.residual.to_f64() < 1e-8);
        let r = cd_residual(16, 0.7, 0.3).unwrap();
        assert!(r.relative < 1e-4);
        for n in [64, 256, 512] {
            let xmax = (2.0 * n as f64).sqrt() * 0.9;
            for i in 0..=8 {
                let x = xmax * i as f64 / 8.0;
                let r = cd_residual(n, 0.6, x).unwrap();
                assert!(r.relative <= 1e-4, "N={n} x={x}: {}", r.relative);
                let m = cd_residual(n, 0.6, -x).unwrap();
                assert!((r.relative - m.relative).abs() < 1e-10);
            }
        }
    }
}
