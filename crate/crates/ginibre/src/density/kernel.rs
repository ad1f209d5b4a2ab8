//! Finite-`N` density of real eigenvalues from the Hermite kernel.
//!
//! `ρ_N = (R¹ + R²)/E_N` with, for `s = sqrt(N/(2τ))`,
//! `R¹(x) = sqrt(N/2π) e^{-N x²/(1+τ)} Σ_{k≤N-2} (τ/2)^k/k! H_k(s x)²` and
//! `R²(x) = (τ/2)^{N-3/2}/(sqrt(2π)(1+τ)) N/(N-2)! e^{-N x²/(2(1+τ))} H_{N-1}(s x)
//!          ∫_0^x e^{-N u²/(2(1+τ))} H_{N-2}(s u) du`.
//! Every Hermite product is carried as a [`ScaledReal`].

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{check_even_n, out_of_range, Error, Result};
use crate::expected::expected_exact;
use crate::quad::{integrate, AdaptiveOptions, GaussLegendre};
use crate::specfun::{hyp2f1, ln_factorial, log_gamma, HermiteRecurrence, Hyp2F1Args, ScaledReal, ScaledSum};

/// Largest `N` for the exact density.
pub const MAX_N: usize = 2048;
/// Largest `|x|` for the exact density.
pub const MAX_ABS_X: f64 = 4.0;
/// Absolute tolerance of the inner `R²` integral, in units of the largest
/// integrand value on the panel.
pub const INNER_ABS_TOL: f64 = 1e-10;
/// Points used to locate the integrand's envelope on each panel.
const ENVELOPE_SAMPLES: usize = 64;

/// Density value with its two parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityPoint {
    pub x: f64,
    pub rho1: f64,
    pub rho2: f64,
    pub rho: f64,
}

/// Precomputed constants for one `(N, τ)`.
#[derive(Debug, Clone)]
pub struct DensityKernel {
    n: usize,
    tau: f64,
    scale: f64,
    expected: f64,
    /// `ln[(τ/2)^{N-3/2} N / ((N-2)! sqrt(2π) (1+τ))]`
    ln_c2: f64,
}

fn hermite_at(k: usize, x: f64) -> HermiteRecurrence {
    let mut r = HermiteRecurrence::new(x);
    for _ in 0..k {
        r.step();
    }
    r
}

impl DensityKernel {
    pub fn new(n: usize, tau: f64) -> Result<Self> {
        check_even_n(n, 2)?;
        if n > MAX_N {
            return Err(Error::InvalidN { n, reason: "N above 2048 for the exact density" });
        }
        if !(tau > 0.0 && tau < 1.0) {
            return Err(out_of_range("tau", tau, "(0, 1)"));
        }
        let nf = n as f64;
        let ln_c2 = (nf - 1.5) * (tau / 2.0).ln() + nf.ln()
            - ln_factorial(n as u64 - 2)
            - 0.5 * (2.0 * PI).ln()
            - (1.0 + tau).ln();
        Ok(DensityKernel { n, tau, scale: (nf / (2.0 * tau)).sqrt(), expected: expected_exact(n, tau)?, ln_c2 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// `E_{N,τ}` used for normalization.
    pub fn expected(&self) -> f64 {
        self.expected
    }

    fn check_x(x: f64) -> Result<()> {
        if !(x.abs() <= MAX_ABS_X) {
            return Err(out_of_range("x", x, "|x| <= 4"));
        }
        Ok(())
    }

    /// `R¹(x)`.
    pub fn r1(&self, x: f64) -> ScaledReal {
        let nf = self.n as f64;
        let y = self.scale * x.abs();
        let ln_half_tau = (self.tau / 2.0).ln();
        let mut rec = HermiteRecurrence::new(y);
        let mut sum = ScaledSum::new();
        let mut ln_fact = 0.0;
        for k in 0..=self.n - 2 {
            if k > 0 {
                rec.step();
                ln_fact += (k as f64).ln();
            }
            let h = rec.value();
            if !h.is_zero() {
                sum.push(ScaledReal::from_log(2.0 * h.log_mag() + k as f64 * ln_half_tau - ln_fact));
            }
        }
        sum.value().mul_exp(0.5 * (nf / (2.0 * PI)).ln() - nf * x * x / (1.0 + self.tau))
    }

    /// `ln |e^{-N u²/(2(1+τ))} H_{N-2}(s u)|` and its sign.
    fn inner_log(&self, u: f64) -> ScaledReal {
        let h = hermite_at(self.n - 2, self.scale * u).value();
        h.mul_exp(-(self.n as f64) * u * u / (2.0 * (1.0 + self.tau)))
    }

    /// `∫_a^b e^{-N u²/(2(1+τ))} H_{N-2}(s u) du`.
    pub fn inner_integral(&self, a: f64, b: f64) -> Result<ScaledReal> {
        if a == b {
            return Ok(ScaledReal::ZERO);
        }
        scaled_integral(|u| self.inner_log(u), a, b)
    }

    /// `R²(x)` given the inner integral from 0 to `|x|`.
    pub fn r2_from_integral(&self, x: f64, integral: ScaledReal) -> ScaledReal {
        let y = x.abs();
        let h = hermite_at(self.n - 1, self.scale * y).value();
        (h * integral).mul_exp(self.ln_c2 - self.n as f64 * y * y / (2.0 * (1.0 + self.tau)))
    }

    /// `ρ_N(x)`, with values above `-1e-12` clipped at zero.
    pub fn density(&self, x: f64) -> Result<DensityPoint> {
        Self::check_x(x)?;
        let integral = self.inner_integral(0.0, x.abs())?;
        Ok(self.point(x, integral))
    }

    fn point(&self, x: f64, integral: ScaledReal) -> DensityPoint {
        let rho1 = self.r1(x).to_f64() / self.expected;
        let rho2 = self.r2_from_integral(x, integral).to_f64() / self.expected;
        let mut rho = rho1 + rho2;
        if rho < 0.0 && rho > -1e-12 {
            rho = 0.0;
        }
        DensityPoint { x, rho1, rho2, rho }
    }

    /// `ρ_N` on many points, sharing the inner integral between neighbours.
    pub fn density_many(&self, xs: &[f64]) -> Result<Vec<DensityPoint>> {
        for &x in xs {
            Self::check_x(x)?;
        }
        let mut order: Vec<usize> = (0..xs.len()).collect();
        order.sort_by(|&i, &j| xs[i].abs().total_cmp(&xs[j].abs()));
        let mut out = vec![None; xs.len()];
        let mut last = 0.0;
        let mut acc = ScaledReal::ZERO;
        for i in order {
            let y = xs[i].abs();
            acc = acc + self.inner_integral(last, y)?;
            last = y;
            out[i] = Some(self.point(xs[i], acc));
        }
        Ok(out.into_iter().map(|p| p.expect("every point visited")).collect())
    }

    /// `∫_{-4}^{4} ρ_N` by composite Gauss–Legendre on panels shorter than
    /// the local oscillation length.
    pub fn total_mass(&self) -> Result<f64> {
        let panels = ((MAX_ABS_X * self.n as f64 / 4.0).ceil() as usize).max(16);
        let edges: Vec<f64> = (0..=panels).map(|i| MAX_ABS_X * i as f64 / panels as f64).collect();
        let (nodes, weights) = GaussLegendre::<f64>::new(16).composite(&edges);
        let pts = self.density_many(&nodes)?;
        Ok(2.0 * pts.iter().zip(&weights).map(|(p, w)| p.rho * w).sum::<f64>())
    }

    /// `ρ¹_N(x)` through `ρ¹_N(0)` minus the integral of its derivative.
    pub fn rho1_integral_form(&self, x: f64) -> Result<f64> {
        Self::check_x(x)?;
        let n = self.n;
        let g = self.n as f64 / (1.0 + self.tau);
        let integral = scaled_integral(
            |u| {
                let r = hermite_at(n - 1, self.scale * u);
                (r.value() * r.previous()).mul_exp(-g * u * u)
            },
            0.0,
            x,
        )?;
        let c = ScaledReal::from_log(self.ln_c2 + 0.5 * (2.0 * PI).ln() + (2.0 / PI).sqrt().ln());
        let rho0 = self.r1(0.0).to_f64() / self.expected;
        Ok(rho0 - (c * integral).to_f64() / self.expected)
    }
}

/// `∫_a^b f` where `f` is given in scaled form; the integrand is divided by
/// its largest sampled magnitude before adaptive quadrature.
pub(crate) fn scaled_integral(f: impl Fn(f64) -> ScaledReal, a: f64, b: f64) -> Result<ScaledReal> {
    let mut peak = f64::NEG_INFINITY;
    for i in 0..=ENVELOPE_SAMPLES {
        let u = a + (b - a) * i as f64 / ENVELOPE_SAMPLES as f64;
        let v = f(u);
        if !v.is_zero() {
            peak = peak.max(v.log_mag());
        }
    }
    if peak == f64::NEG_INFINITY {
        return Ok(ScaledReal::ZERO);
    }
    let opts = AdaptiveOptions::abs(INNER_ABS_TOL);
    let res = integrate(|u| f(u).mul_exp(-peak).to_f64(), a, b, &opts);
    Ok(ScaledReal::from_f64(res.require(INNER_ABS_TOL)?).mul_exp(peak))
}

/// `ρ_N(x)` for a single point.
pub fn density_exact(n: usize, tau: f64, x: f64) -> Result<f64> {
    Ok(DensityKernel::new(n, tau)?.density(x)?.rho)
}

/// `ρ_N(0)` from the hypergeometric closed form, rewritten with the `1 - z`
/// connection formula so that no cancellation occurs:
/// `ρ_N(0) = (1/E) sqrt(N/2π) (2/√π) τ^N Γ((N+1)/2)/Γ(N/2) 2F1(1, (N+1)/2; 3/2; 1-τ²)`.
pub fn density_at_zero_closed(n: usize, tau: f64) -> Result<f64> {
    check_even_n(n, 2)?;
    if !(tau > 0.0 && tau < 1.0) {
        return Err(out_of_range("tau", tau, "(0, 1)"));
    }
    let nf = n as f64;
    let e = expected_exact(n, tau)?;
    let f = hyp2f1(Hyp2F1Args::new(1.0, (nf + 1.0) / 2.0, 1.5, 1.0 - tau * tau))?;
    let ratio = log_gamma((nf + 1.0) / 2.0)? / log_gamma(nf / 2.0)?;
    let mag = ScaledReal::from_f64(f) * ratio.mul_exp(nf * tau.ln());
    Ok((nf / (2.0 * PI)).sqrt() * 2.0 / PI.sqrt() * mag.to_f64() / e)
}

/// `ρ_N(0)` from the uncancelled difference
/// `(1/E) sqrt(N/2π) [(1-τ²)^{-1/2} - τ^N Γ((N+1)/2)/√π 2F1reg(1, (N+1)/2; N/2+1; τ²)]`;
/// only well conditioned for small `N` and moderate `τ`.
pub fn density_at_zero_difference(n: usize, tau: f64) -> Result<f64> {
    check_even_n(n, 2)?;
    let nf = n as f64;
    let e = expected_exact(n, tau)?;
    let f = crate::specfun::hyp2f1_regularized(Hyp2F1Args::new(1.0, (nf + 1.0) / 2.0, nf / 2.0 + 1.0, tau * tau))?;
    let second = (f * log_gamma((nf + 1.0) / 2.0)?).mul_exp(nf * tau.ln()).to_f64() / PI.sqrt();
    Ok((nf / (2.0 * PI)).sqrt() * ((1.0 - tau * tau).powf(-0.5) - second) / e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_at_zero() {
        for (n, tau) in [(16, 0.5), (32, 0.3), (64, 0.9), (128, 1.0 - 1.0 / 128.0), (128, 1.0 - 4.0 / 128.0)] {
            let k = DensityKernel::new(n, tau).unwrap();
            let direct = k.density(0.0).unwrap().rho;
            let closed = density_at_zero_closed(n, tau).unwrap();
            assert!((direct - closed).abs() < 1e-10, "N={n} tau={tau}: {direct} vs {closed}");
        }
        let a = density_at_zero_difference(16, 0.5).unwrap();
        let b = density_at_zero_closed(16, 0.5).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn even_in_x() {
        let k = DensityKernel::new(32, 0.7).unwrap();
        for x in [0.1, 0.77, 1.3, 2.2] {
            let p = k.density(x).unwrap();
            let m = k.density(-x).unwrap();
            assert_eq!(p.rho, m.rho);
        }
    }

    #[test]
    fn many_matches_single() {
        let k = DensityKernel::new(48, 0.8).unwrap();
        let xs = [1.1, -0.4, 0.0, 2.5, 0.4];
        let many = k.density_many(&xs).unwrap();
        for (x, p) in xs.iter().zip(&many) {
            let single = k.density(*x).unwrap();
            assert!((single.rho - p.rho).abs() < 1e-10, "x={x}");
        }
    }

    #[test]
    fn normalized() {
        let k = DensityKernel::new(64, 0.5).unwrap();
        assert!((k.total_mass().unwrap() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn integral_representation_of_rho1() {
        let k = DensityKernel::new(64, 1.0 - 1.0 / 64.0).unwrap();
        for x in [0.0, 0.3, 0.9, 1.5] {
            let direct = k.r1(x).to_f64() / k.expected();
            let rep = k.rho1_integral_form(x).unwrap();
            assert!((direct - rep).abs() < 1e-8, "x={x}: {direct} vs {rep}");
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(DensityKernel::new(63, 0.5).is_err());
        assert!(DensityKernel::new(64, 1.0).is_err());
        let k = DensityKernel::new(8, 0.5).unwrap();
        assert!(k.density(4.5).is_err());
    }
}
