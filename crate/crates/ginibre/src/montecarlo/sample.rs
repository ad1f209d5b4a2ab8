//! Random real elliptic matrices.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::schur::Matrix;
use crate::error::{out_of_range, Result};
use crate::expected::RegimeParam;
use crate::specfun::erfc;

/// Entry distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dist {
    Gaussian,
    Uniform,
    Rademacher,
}

impl std::str::FromStr for Dist {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(Dist::Gaussian),
            "uniform" => Ok(Dist::Uniform),
            "rademacher" => Ok(Dist::Rademacher),
            other => Err(out_of_range("dist", other, "gaussian|uniform|rademacher")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub n: usize,
    pub regime: RegimeParam,
    pub dist: Dist,
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn new(n: usize, regime: RegimeParam, dist: Dist, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(out_of_range("n", n, "N >= 1"));
        }
        regime.tau_at(n)?;
        Ok(EnsembleSpec { n, regime, dist, seed })
    }

    pub fn tau(&self) -> Result<f64> {
        self.regime.tau_at(self.n)
    }

    /// Generator for sample `index`: the seed fixes the key, the index the stream.
    pub fn rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

/// Standard normals by the polar method, one spare cached.
#[derive(Debug)]
pub struct PolarNormal<R> {
    rng: R,
    spare: Option<f64>,
}

impl<R: Rng> PolarNormal<R> {
    pub fn new(rng: R) -> Self {
        PolarNormal { rng, spare: None }
    }

    pub fn sample(&mut self) -> f64 {
        if let Some(s) = self.spare.take() {
            return s;
        }
        loop {
            let u: f64 = 2.0 * self.rng.gen::<f64>() - 1.0;
            let v: f64 = 2.0 * self.rng.gen::<f64>() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let f = (-2.0 * s.ln() / s).sqrt();
                self.spare = Some(v * f);
                return u * f;
            }
        }
    }

    pub fn rng(&mut self) -> &mut R {
        &mut self.rng
    }
}

/// Normal correlation whose Gaussian copula gives uniform marginals with
/// linear correlation `tau`: the uniform correlation is `(6/π) asin(ρ/2)`.
pub fn copula_correlation(tau: f64) -> f64 {
    2.0 * (PI * tau / 6.0).sin()
}

fn phi(z: f64) -> f64 {
    0.5 * erfc(-z * FRAC_1_SQRT_2)
}

/// Uniform on `[-√3, √3]` from a uniform on `[0, 1]`.
fn centered_uniform(u: f64) -> f64 {
    3f64.sqrt() * (2.0 * u - 1.0)
}

/// Matrix for sample `index` of `spec`, entries scaled by `1/√N`.
///
/// Gaussian entries follow `X = sqrt((1+τ)/2) S + sqrt((1-τ)/2) A` with `S`
/// from the GOE (diagonal variance `2/N`) and `A` antisymmetric; the other
/// families use unit-variance diagonals and correlated off-diagonal pairs.
pub fn sample_matrix(spec: &EnsembleSpec, index: u64) -> Result<Matrix> {
    let n = spec.n;
    let tau = spec.tau()?;
    let scale = 1.0 / (n as f64).sqrt();
    let mut g = PolarNormal::new(spec.rng(index));
    let mut m = Matrix::zeros(n);
    let (cs, ca) = (((1.0 + tau) / 2.0).sqrt(), ((1.0 - tau) / 2.0).sqrt());
    let rho = copula_correlation(tau);
    let rho_c = (1.0 - rho * rho).max(0.0).sqrt();
    for j in 0..n {
        let d = match spec.dist {
            Dist::Gaussian => (1.0 + tau).sqrt() * g.sample(),
            Dist::Uniform => centered_uniform(g.rng().gen()),
            Dist::Rademacher => {
                if g.rng().gen::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
        };
        m.set(j, j, d * scale);
    }
    for j in 0..n {
        for k in j + 1..n {
            let (a, b) = match spec.dist {
                Dist::Gaussian => {
                    let s = g.sample();
                    let t = g.sample();
                    (cs * s + ca * t, cs * s - ca * t)
                }
                Dist::Uniform => {
                    let z1 = g.sample();
                    let z2 = rho * z1 + rho_c * g.sample();
                    (centered_uniform(phi(z1)), centered_uniform(phi(z2)))
                }
                Dist::Rademacher => {
                    let x: f64 = if g.rng().gen::<bool>() { 1.0 } else { -1.0 };
                    let same = g.rng().gen::<f64>() < (1.0 + tau) / 2.0;
                    (x, if same { x } else { -x })
                }
            };
            m.set(j, k, a * scale);
            m.set(k, j, b * scale);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair_corr(m: &Matrix) -> (f64, f64) {
        let n = m.n();
        let (mut c, mut v, mut cnt) = (0.0, 0.0, 0.0);
        for j in 0..n {
            for k in j + 1..n {
                c += m.get(j, k) * m.get(k, j);
                v += m.get(j, k).powi(2);
                cnt += 1.0;
            }
        }
        (n as f64 * c / cnt, n as f64 * v / cnt)
    }

    #[test]
    fn pair_correlation() {
        for dist in [Dist::Gaussian, Dist::Uniform, Dist::Rademacher] {
            for tau in [0.0, 0.5] {
                let spec = EnsembleSpec::new(512, RegimeParam::tau(tau).unwrap(), dist, 42).unwrap();
                let (c, v) = pair_corr(&sample_matrix(&spec, 0).unwrap());
                assert!((c - tau).abs() < 0.05, "{dist:?} tau={tau}: {c}");
                assert!((v - 1.0).abs() < 0.05, "{dist:?}: variance {v}");
            }
        }
    }

    #[test]
    fn tau_one_gaussian_is_symmetric() {
        let spec = EnsembleSpec::new(20, RegimeParam::tau(1.0).unwrap(), Dist::Gaussian, 1).unwrap();
        assert!(sample_matrix(&spec, 3).unwrap().is_symmetric());
    }

    #[test]
    fn deterministic_streams() {
        let spec = EnsembleSpec::new(10, RegimeParam::alpha(1.0).unwrap(), Dist::Uniform, 9).unwrap();
        assert_eq!(sample_matrix(&spec, 5).unwrap(), sample_matrix(&spec, 5).unwrap());
        assert_ne!(sample_matrix(&spec, 5).unwrap(), sample_matrix(&spec, 6).unwrap());
    }

    #[test]
    fn copula_inverts() {
        for tau in [0.0, 0.2, 0.5, 0.9, 1.0] {
            let rho = copula_correlation(tau);
            assert!(((6.0 / PI) * (rho / 2.0).asin() - tau).abs() < 1e-15);
        }
    }
}
