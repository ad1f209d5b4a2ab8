use rayon::prelude::*;
use serde::Serialize;

use super::sample::{sample_matrix, EnsembleSpec};
use super::schur::{spectrum, SpectrumSample};
use crate::error::{out_of_range, Result};
use crate::quad::GaussLegendre;

/// Fixed-width histogram; values outside the range are tallied separately.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub below: u64,
    pub above: u64,
}

impl Histogram {
    pub fn new(lo: f64, hi: f64, bins: usize) -> Result<Self> {
        if !(lo < hi) || bins == 0 {
            return Err(out_of_range("histogram", format!("{lo}:{hi}:{bins}"), "lo < hi, bins >= 1"));
        }
        let edges = (0..=bins).map(|i| lo + (hi - lo) * i as f64 / bins as f64).collect();
        Ok(Histogram { edges, counts: vec![0; bins], below: 0, above: 0 })
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn add(&mut self, x: f64) {
        let bins = self.bins();
        let (lo, hi) = (self.edges[0], self.edges[bins]);
        if x < lo {
            self.below += 1;
        } else if x >= hi {
            self.above += 1;
        } else {
            let i = ((x - lo) / (hi - lo) * bins as f64) as usize;
            self.counts[i.min(bins - 1)] += 1;
        }
    }

    fn merge(&mut self, other: &Histogram) {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.below += other.below;
        self.above += other.above;
    }

    /// Every value seen, inside or outside the range.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum::<u64>() + self.below + self.above
    }

    /// `½ Σ |p_i - q_i|` against bin masses `q_i = mass(lo_i, hi_i)`;
    /// out-of-range values count as mass the reference lacks.
    pub fn tv_distance(&self, mut mass: impl FnMut(f64, f64) -> f64) -> f64 {
        let total = self.total() as f64;
        if total == 0.0 {
            return f64::NAN;
        }
        let mut tv = (self.below + self.above) as f64 / total;
        let mut covered = 0.0;
        for (i, &c) in self.counts.iter().enumerate() {
            let q = mass(self.edges[i], self.edges[i + 1]);
            covered += q;
            tv += (c as f64 / total - q).abs();
        }
        tv += (1.0 - covered).max(0.0);
        0.5 * tv
    }

    /// [`Histogram::tv_distance`] against a density, each bin by 16-point Gauss–Legendre.
    pub fn tv_distance_to_density(&self, mut rho: impl FnMut(f64) -> f64) -> f64 {
        let gl = GaussLegendre::<f64>::new(16);
        self.tv_distance(|a, b| gl.integrate(&mut rho, a, b))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentOptions {
    pub bins: usize,
    pub hist_lo: f64,
    pub hist_hi: f64,
    /// Complex eigenvalues kept for scatter output, taken from the first samples.
    pub scatter_limit: usize,
}

impl Default for ExperimentOptions {
    fn default() -> Self {
        ExperimentOptions { bins: 20, hist_lo: -2.2, hist_hi: 2.2, scatter_limit: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentStats {
    pub spec: EnsembleSpec,
    pub n_samples: u64,
    pub count_mean: f64,
    /// Unbiased sample variance of the real-eigenvalue count.
    pub count_variance: f64,
    /// Standard error of `count_mean`.
    pub count_stderr: f64,
    pub parity_violations: u64,
    pub real_eig_histogram: Histogram,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complex_scatter: Option<Vec<(f64, f64)>>,
}

struct SampleSummary {
    real_count: usize,
    hist: Histogram,
    scatter: Vec<(f64, f64)>,
}

/// Spectrum of sample `index`.
pub fn sample_spectrum(spec: &EnsembleSpec, index: u64) -> Result<SpectrumSample> {
    spectrum(&sample_matrix(spec, index)?)
}

/// Runs `n_samples` independent samples; sample `i` uses stream `i` of the
/// seed, and results are reduced in index order.
pub fn run_experiment(spec: &EnsembleSpec, n_samples: u64, opts: &ExperimentOptions) -> Result<ExperimentStats> {
    if n_samples == 0 {
        return Err(out_of_range("samples", n_samples, ">= 1"));
    }
    let empty = Histogram::new(opts.hist_lo, opts.hist_hi, opts.bins)?;
    let summaries: Vec<Result<SampleSummary>> = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let s = sample_spectrum(spec, i)?;
            let mut hist = empty.clone();
            for &x in &s.real_eigs {
                hist.add(x);
            }
            let scatter = if (i as usize) < opts.scatter_limit { s.complex_pairs.clone() } else { Vec::new() };
            Ok(SampleSummary { real_count: s.real_count, hist, scatter })
        })
        .collect();
    let mut hist = empty;
    let mut scatter = Vec::new();
    let (mut sum, mut sum2) = (0.0, 0.0);
    let mut parity_violations = 0;
    for s in summaries {
        let s = s?;
        let c = s.real_count as f64;
        sum += c;
        sum2 += c * c;
        if s.real_count % 2 != spec.n % 2 {
            parity_violations += 1;
        }
        hist.merge(&s.hist);
        for (a, b) in s.scatter {
            if scatter.len() + 2 > 2 * opts.scatter_limit.max(1) * spec.n {
                break;
            }
            scatter.push((a, b));
            scatter.push((a, -b));
        }
    }
    let k = n_samples as f64;
    let mean = sum / k;
    let variance = if n_samples > 1 { (sum2 - k * mean * mean) / (k - 1.0) } else { 0.0 };
    Ok(ExperimentStats {
        spec: *spec,
        n_samples,
        count_mean: mean,
        count_variance: variance,
        count_stderr: (variance / k).sqrt(),
        parity_violations,
        real_eig_histogram: hist,
        complex_scatter: (opts.scatter_limit > 0).then_some(scatter),
    })
}

/// Fraction of complex eigenvalues inside `(x/(1+τ))² + (y/(1-τ))² ≤ s²`.
pub fn ellipse_fraction(pairs: &[(f64, f64)], tau: f64, inflate: f64) -> f64 {
    if pairs.is_empty() {
        return 1.0;
    }
    let (a, b) = ((1.0 + tau) * inflate, (1.0 - tau) * inflate);
    let inside = pairs.iter().filter(|(x, y)| (x / a).powi(2) + (y / b).powi(2) <= 1.0).count();
    inside as f64 / pairs.len() as f64
}
