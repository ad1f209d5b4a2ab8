//! Gauss hypergeometric function on real arguments.
//!
//! Evaluation picks one of: the Gauss series at `z`, Pfaff's transform
//! `(1-z)^{-a} 2F1(a, c-b; c; z/(z-1))`, or Euler's transform
//! `(1-z)^{c-a-b} 2F1(c-a, c-b; c; z)`. Transforms that make the series
//! terminate are preferred.

use serde::{Deserialize, Serialize};

use super::{log_gamma, ScaledReal};
use crate::error::{Error, Result};

/// Term cap for non-terminating series.
pub const MAX_TERMS: usize = 10_000;

/// Largest `|z|` at which the Gauss series is used untransformed.
pub const DIRECT_RADIUS: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hyp2F1Args {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub z: f64,
}

impl Hyp2F1Args {
    pub fn new(a: f64, b: f64, c: f64, z: f64) -> Self {
        Hyp2F1Args { a, b, c, z }
    }

    fn no_path(&self) -> Error {
        Error::NoConvergentPath { a: self.a, b: self.b, c: self.c, z: self.z }
    }
}

/// `Some(n)` when `x = -n` for an integer `n >= 0`.
fn nonpositive_integer(x: f64) -> Option<u64> {
    (x <= 0.0 && x == x.round() && x > -1e15).then(|| (-x) as u64)
}

/// Degree of the polynomial when `a` or `b` is a non-positive integer.
fn termination_degree(a: f64, b: f64) -> Option<u64> {
    match (nonpositive_integer(a), nonpositive_integer(b)) {
        (Some(m), Some(n)) => Some(m.min(n)),
        (m, n) => m.or(n),
    }
}

/// Route actually taken by [`hyp2f1`]; exposed for diagnostics and tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Path {
    Trivial,
    Direct,
    Pfaff,
    Euler,
}

fn gauss_series(args: &Hyp2F1Args) -> Result<f64> {
    let Hyp2F1Args { a, b, c, z } = *args;
    let degree = termination_degree(a, b);
    if let Some(m) = nonpositive_integer(c) {
        if degree.map_or(true, |d| d > m) {
            return Err(Error::Pole(format!("2F1 with c = {c}")));
        }
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    let limit = degree.unwrap_or(MAX_TERMS as u64);
    for s in 0..limit {
        let sf = s as f64;
        let ratio = (a + sf) * (b + sf) / ((c + sf) * (sf + 1.0)) * z;
        term *= ratio;
        sum += term;
        if degree.is_none() && ratio.abs() < 1.0 && term.abs() <= 1e-16 * sum.abs() {
            return Ok(sum);
        }
    }
    if degree.is_some() {
        Ok(sum)
    } else {
        Err(args.no_path())
    }
}

/// Choose the evaluation route for `args`.
pub fn path(args: &Hyp2F1Args) -> Result<Path> {
    let Hyp2F1Args { a, b, c, z } = *args;
    if z == 0.0 {
        return Ok(Path::Trivial);
    }
    let direct_degree = termination_degree(a, b);
    // Negative z goes through Pfaff unless only the direct series terminates
    // and is short-range.
    if z < 0.0 {
        let pfaff_a = termination_degree(a, c - b);
        let pfaff_b = termination_degree(b, c - a);
        if pfaff_a.is_some() || pfaff_b.is_some() || direct_degree.is_none() || z < -DIRECT_RADIUS {
            return Ok(Path::Pfaff);
        }
        return Ok(Path::Direct);
    }
    if z.abs() <= DIRECT_RADIUS || direct_degree.is_some() {
        return Ok(Path::Direct);
    }
    if z < 1.0 {
        if termination_degree(c - a, c - b).is_some() {
            return Ok(Path::Euler);
        }
        return Ok(Path::Direct);
    }
    Err(args.no_path())
}

/// `2F1(a, b; c; z)` for real arguments on the supported paths.
pub fn hyp2f1(args: Hyp2F1Args) -> Result<f64> {
    let Hyp2F1Args { a, b, c, z } = args;
    match path(&args)? {
        Path::Trivial => Ok(1.0),
        Path::Direct => gauss_series(&args),
        Path::Euler => {
            let inner = gauss_series(&Hyp2F1Args::new(c - a, c - b, c, z))?;
            Ok((1.0 - z).powf(c - a - b) * inner)
        }
        Path::Pfaff => {
            let w = z / (z - 1.0);
            // Pfaff on the parameter that leaves a terminating series, if any.
            let pa = termination_degree(a, c - b);
            let pb = termination_degree(b, c - a);
            let use_b = match (pa, pb) {
                (Some(x), Some(y)) => y < x,
                (None, Some(_)) => true,
                _ => false,
            };
            let (p, q) = if use_b { (b, a) } else { (a, b) };
            let inner = gauss_series(&Hyp2F1Args::new(p, c - q, c, w))
                .map_err(|e| if matches!(e, Error::NoConvergentPath { .. }) { args.no_path() } else { e })?;
            Ok((1.0 - z).powf(-p) * inner)
        }
    }
}

/// Regularized `2F1(a, b; c; z) / Gamma(c)` as a `ScaledReal`.
pub fn hyp2f1_regularized(args: Hyp2F1Args) -> Result<ScaledReal> {
    let g = log_gamma(args.c)?;
    Ok(ScaledReal::from_f64(hyp2f1(args)?) / g)
}
