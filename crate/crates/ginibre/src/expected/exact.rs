//! Exact finite-`N` expected number of real eigenvalues.

use std::f64::consts::PI;

use crate::error::{check_even_n, out_of_range, Error, Result};
use crate::series::{exact::rational_from_f64, residue_g, GResidue};
use crate::specfun::{hyp2f1, log_gamma, Hyp2F1Args};

/// Largest `N` for the hypergeometric route.
pub const MAX_N_HYPERGEOMETRIC: usize = 10_000;
/// Largest `N` for the exact-rational residue route.
pub const MAX_N_RESIDUE: usize = 2048;

fn check_tau(tau: f64) -> Result<()> {
    if !(0.0..1.0).contains(&tau) {
        return Err(out_of_range("tau", tau, "[0, 1)"));
    }
    Ok(())
}

fn check_n(n: usize, max: usize) -> Result<()> {
    check_even_n(n, 2)?;
    if n > max {
        return Err(Error::InvalidN { n, reason: "N above the route's cap" });
    }
    Ok(())
}

/// `E_{N,τ}` by the finite hypergeometric sum
/// `sqrt(2/π (1+τ)/(1-τ)) Σ_{k<N/2} Γ(2k+1/2)/(2k)! 2F1(1/2, 1/2; 1/2-2k; -τ/(1-τ))`.
pub fn expected_exact(n: usize, tau: f64) -> Result<f64> {
    check_n(n, MAX_N_HYPERGEOMETRIC)?;
    check_tau(tau)?;
    let z = -tau / (1.0 - tau);
    let mut sum = 0.0;
    for k in 0..n / 2 {
        let kk = 2.0 * k as f64;
        let weight = (log_gamma(kk + 0.5)? / log_gamma(kk + 1.0)?).to_f64();
        sum += weight * hyp2f1(Hyp2F1Args::new(0.5, 0.5, 0.5 - kk, z))?;
    }
    Ok((2.0 / PI * (1.0 + tau) / (1.0 - tau)).sqrt() * sum)
}

/// Residue `g_N(x)` at `x = -τ/(1-τ)`, with `τ` taken as the exact rational
/// value of the double.
pub fn residue_at_tau(n: usize, tau: f64) -> Result<GResidue> {
    check_n(n, MAX_N_RESIDUE)?;
    check_tau(tau)?;
    let t = rational_from_f64(tau)?;
    let x = -&t / (num_rational::BigRational::from_integer(1.into()) - &t);
    residue_g(n, &x)
}

/// `E_{N,τ} = sqrt(2/π (1+τ)/(1-τ)) g_N(-τ/(1-τ))`, with the residue in
/// exact rational arithmetic.
pub fn expected_residue(n: usize, tau: f64) -> Result<f64> {
    let g = residue_at_tau(n, tau)?;
    Ok((2.0 / PI * (1.0 + tau) / (1.0 - tau)).sqrt() * g.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    #[test]
    fn anchors() {
        assert!((expected_exact(2, 0.0).unwrap() - SQRT_2).abs() < 1e-14);
        assert!((expected_exact(4, 0.0).unwrap() - 11.0 * SQRT_2 / 8.0).abs() < 1e-14);
        for tau in [0.25f64, 0.5, 0.75] {
            let want = (2.0 * (1.0 + tau)).sqrt();
            assert!((expected_exact(2, tau).unwrap() - want).abs() < 1e-14);
            assert!((expected_residue(2, tau).unwrap() - want).abs() < 1e-14);
        }
    }

    #[test]
    fn routes_agree_small() {
        for n in [4, 10, 20, 64] {
            for tau in [0.0, 0.3, 0.5, 0.9] {
                let a = expected_exact(n, tau).unwrap();
                let b = expected_residue(n, tau).unwrap();
                assert!(((a - b) / b).abs() < 1e-12, "N={n} tau={tau}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(expected_exact(3, 0.1).is_err());
        assert!(expected_exact(4, 1.0).is_err());
        assert!(expected_residue(4096, 0.1).is_err());
    }
}
