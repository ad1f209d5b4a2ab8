//! The kernel `S_N` and the variance double integral.
//!
//! `S¹(x,y) = Σ_{k≤N-2} φ_k(x) φ_k(y)` with
//! `φ_k(x) = (2π)^{-1/4} sqrt((τ/2)^k/k!) e^{-x²/(2(1+τ))} H_k(x/sqrt(2τ))`, and
//! `S²(x,y) = C₂ g(y) G(x)` with `g(y) = e^{-y²/(2(1+τ))} H_{N-1}(y/sqrt(2τ))`,
//! `G(x) = ∫_0^x e^{-u²/(2(1+τ))} H_{N-2}(u/sqrt(2τ)) du`.
//! Both pieces are separable, so `∫∫ S(x,y) S(y,x)` reduces to one-dimensional
//! Gauss–Legendre sums on `0 ≤ x ≤ 2√N + 6`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::density::scaled_integral;
use crate::error::{check_even_n, out_of_range, Error, Result};
use crate::expected::expected_exact;
use crate::quad::GaussLegendre;
use crate::specfun::{ln_factorial, HermiteRecurrence, ScaledReal, ScaledSum};

/// Largest `N` for the quadrature route.
pub const MAX_N: usize = 256;
/// Accepted gap between the quadrature trace `∫ S(x,x)` and the exact `E_N`.
pub const TRACE_TOL: f64 = 1e-7;
const GL_ORDER: usize = 20;
const INNER_GL_ORDER: usize = 40;

/// Evaluator of `S¹`, `S²` and `S` for one `(N, τ)`.
#[derive(Debug, Clone)]
pub struct KernelEval {
    n: usize,
    tau: f64,
    /// `ln C₂ = ln[(τ/2)^{N-3/2} / (sqrt(2π)(1+τ)(N-2)!)]`
    ln_c2: f64,
}

impl KernelEval {
    pub fn new(n: usize, tau: f64) -> Result<Self> {
        check_even_n(n, 2)?;
        if !(tau > 0.0 && tau < 1.0) {
            return Err(out_of_range("tau", tau, "(0, 1)"));
        }
        let ln_c2 = (n as f64 - 1.5) * (tau / 2.0).ln()
            - 0.5 * (2.0 * PI).ln()
            - (1.0 + tau).ln()
            - ln_factorial(n as u64 - 2);
        Ok(KernelEval { n, tau, ln_c2 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    fn gauss(&self, x: f64) -> f64 {
        -x * x / (2.0 * (1.0 + self.tau))
    }

    fn hermite_arg(&self, x: f64) -> f64 {
        x / (2.0 * self.tau).sqrt()
    }

    /// `φ_0(x), …, φ_{N-2}(x)`.
    pub fn phi(&self, x: f64) -> Vec<ScaledReal> {
        let ln_half_tau = (self.tau / 2.0).ln();
        let base = self.gauss(x) - 0.25 * (2.0 * PI).ln();
        let mut rec = HermiteRecurrence::new(self.hermite_arg(x));
        let mut out = Vec::with_capacity(self.n - 1);
        let mut ln_fact = 0.0;
        for k in 0..=self.n - 2 {
            if k > 0 {
                rec.step();
                ln_fact += (k as f64).ln();
            }
            out.push(rec.value().mul_exp(base + 0.5 * (k as f64 * ln_half_tau - ln_fact)));
        }
        out
    }

    pub fn s1(&self, x: f64, y: f64) -> ScaledReal {
        let mut sum = ScaledSum::new();
        for (a, b) in self.phi(x).into_iter().zip(self.phi(y)) {
            sum.push(a * b);
        }
        sum.value()
    }

    /// `g(y)`.
    fn g(&self, y: f64) -> ScaledReal {
        let mut rec = HermiteRecurrence::new(self.hermite_arg(y));
        for _ in 0..self.n - 1 {
            rec.step();
        }
        rec.value().mul_exp(self.gauss(y))
    }

    /// Integrand of `G`.
    fn g_inner(&self, u: f64) -> ScaledReal {
        let mut rec = HermiteRecurrence::new(self.hermite_arg(u));
        for _ in 0..self.n - 2 {
            rec.step();
        }
        rec.value().mul_exp(self.gauss(u))
    }

    pub fn s2(&self, x: f64, y: f64) -> Result<ScaledReal> {
        let big_g = scaled_integral(|u| self.g_inner(u), 0.0, x)?;
        Ok((self.g(y) * big_g).mul_exp(self.ln_c2))
    }

    pub fn s(&self, x: f64, y: f64) -> Result<ScaledReal> {
        Ok(self.s1(x, y) + self.s2(x, y)?)
    }
}

/// Pieces of `V_N = 2E_N - 2∫∫ S(x,y)S(y,x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VarianceResult {
    pub n: usize,
    pub tau: f64,
    pub alpha: f64,
    pub v: f64,
    pub e: f64,
    pub ratio: f64,
    /// `∫∫ S¹(x,y)²`.
    pub s1_term: f64,
    /// `2∫∫ S¹(x,y) S²(y,x)`.
    pub cross_term: f64,
    /// `∫∫ S²(x,y) S²(y,x)`.
    pub s2_term: f64,
    /// `|∫ S(x,x) dx - E_N|` on the same nodes.
    pub trace_error: f64,
}

/// Nodes and weights on `[0, 2√N + 6]`, panels of width at most `3/√N`.
fn half_line_rule(n: usize) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let sn = (n as f64).sqrt();
    let len = 2.0 * sn + 6.0;
    let panels = (len / (3.0 / sn)).ceil().max(8.0) as usize;
    let edges: Vec<f64> = (0..=panels).map(|i| len * i as f64 / panels as f64).collect();
    let (x, w) = GaussLegendre::<f64>::new(GL_ORDER).composite(&edges);
    (edges, x, w)
}

/// `V_{N,τ}` by separable quadrature.
pub fn variance_exact(n: usize, tau: f64) -> Result<VarianceResult> {
    if n > MAX_N {
        return Err(Error::InvalidN { n, reason: "N above 256 for the variance quadrature" });
    }
    let ker = KernelEval::new(n, tau)?;
    let e = expected_exact(n, tau)?;
    let (edges, xs, ws) = half_line_rule(n);
    let m = n - 1;

    // φ_k at the nodes; every factor is O(1) on the support.
    let phi: Vec<Vec<f64>> = xs.iter().map(|&x| ker.phi(x).into_iter().map(ScaledReal::to_f64).collect()).collect();

    // Gram matrix over ℝ: twice the half-line sum when j + k is even, zero otherwise.
    let mut gram = vec![0.0; m * m];
    for (row, &w) in phi.iter().zip(&ws) {
        for j in 0..m {
            let wj = 2.0 * w * row[j];
            for k in (j % 2..m).step_by(2) {
                gram[j * m + k] += wj * row[k];
            }
        }
    }
    let s1_term: f64 = gram.iter().map(|v| v * v).sum();
    let trace1: f64 = (0..m).map(|k| gram[k * m + k]).sum();

    // g and G at the nodes, each divided by its largest magnitude.
    let g_vals: Vec<ScaledReal> = xs.iter().map(|&x| ker.g(x)).collect();
    let inner = GaussLegendre::<f64>::new(INNER_GL_ORDER);
    let mut big_g_vals = Vec::with_capacity(xs.len());
    let mut cum = ScaledReal::ZERO;
    let per_panel = GL_ORDER;
    for (p, e2) in edges.windows(2).enumerate() {
        for &x in &xs[p * per_panel..(p + 1) * per_panel] {
            let mut s = ScaledSum::new();
            for (u, w) in inner.mapped(e2[0], x) {
                s.push(ker.g_inner(u) * ScaledReal::from_f64(w));
            }
            big_g_vals.push(cum + s.value());
        }
        let mut s = ScaledSum::new();
        for (u, w) in inner.mapped(e2[0], e2[1]) {
            s.push(ker.g_inner(u) * ScaledReal::from_f64(w));
        }
        cum = cum + s.value();
    }
    let peak = |v: &[ScaledReal]| v.iter().filter(|s| !s.is_zero()).map(|s| s.log_mag()).fold(f64::NEG_INFINITY, f64::max);
    let (lg, lbig) = (peak(&g_vals), peak(&big_g_vals));
    let g: Vec<f64> = g_vals.iter().map(|v| v.mul_exp(-lg).to_f64()).collect();
    let big_g: Vec<f64> = big_g_vals.iter().map(|v| v.mul_exp(-lbig).to_f64()).collect();
    let scale = ScaledReal::from_log(ker.ln_c2 + lg + lbig);

    // g and G are odd, so only odd φ_k pair with them.
    let mut cross = 0.0;
    for k in (1..m).step_by(2) {
        let (mut a, mut b) = (0.0, 0.0);
        for i in 0..xs.len() {
            a += 2.0 * ws[i] * phi[i][k] * g[i];
            b += 2.0 * ws[i] * phi[i][k] * big_g[i];
        }
        cross += a * b;
    }
    let gg: f64 = (0..xs.len()).map(|i| 2.0 * ws[i] * g[i] * big_g[i]).sum();
    let cross_term = (scale * ScaledReal::from_f64(2.0 * cross)).to_f64();
    let s2_term = (scale * scale * ScaledReal::from_f64(gg * gg)).to_f64();
    let trace = trace1 + (scale * ScaledReal::from_f64(gg)).to_f64();
    let trace_error = (trace - e).abs();
    if !(trace_error <= TRACE_TOL) {
        return Err(Error::Quadrature { achieved: trace_error, requested: TRACE_TOL });
    }
    let v = 2.0 * e - 2.0 * (s1_term + cross_term + s2_term);
    Ok(VarianceResult {
        n,
        tau,
        alpha: (n as f64 * (1.0 - tau)).sqrt(),
        v,
        e,
        ratio: v / e,
        s1_term,
        cross_term,
        s2_term,
        trace_error,
    })
}

/// `∫∫ S¹(x,y)²` alone, by the same rule.
pub fn s1_square_integral(n: usize, tau: f64) -> Result<f64> {
    let ker = KernelEval::new(n, tau)?;
    let (_, xs, ws) = half_line_rule(n);
    let m = n - 1;
    let mut gram = vec![0.0; m * m];
    for (&x, &w) in xs.iter().zip(&ws) {
        let row: Vec<f64> = ker.phi(x).into_iter().map(ScaledReal::to_f64).collect();
        for j in 0..m {
            for k in (j % 2..m).step_by(2) {
                gram[j * m + k] += 2.0 * w * row[j] * row[k];
            }
        }
    }
    Ok(gram.iter().map(|v| v * v).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::DensityKernel;

    #[test]
    fn s1_symmetric() {
        let k = KernelEval::new(16, 0.8).unwrap();
        for (x, y) in [(0.3, -1.2), (2.5, 0.7), (-4.0, 3.3)] {
            let a = k.s1(x, y).to_f64();
            let b = k.s1(y, x).to_f64();
            assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-300));
        }
    }

    #[test]
    fn diagonal_is_scaled_density() {
        let (n, tau) = (32, 0.9);
        let k = KernelEval::new(n, tau).unwrap();
        let d = DensityKernel::new(n, tau).unwrap();
        let sn = (n as f64).sqrt();
        for x in [0.0, 1.0, 3.7, -6.2, 9.0] {
            let s = k.s(x, x).unwrap().to_f64();
            let r = d.expected() / sn * d.density(x / sn).unwrap().rho;
            assert!((s - r).abs() < 1e-9, "x={x}: {s} vs {r}");
        }
    }

    #[test]
    fn small_variance() {
        let r = variance_exact(8, 1.0 - 1.0 / 8.0).unwrap();
        assert!(r.v > 0.0);
        assert!(r.trace_error < 1e-10);
    }
}
