use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole at {0}")]
    Pole(String),
    #[error("no convergent path for 2F1({a}, {b}; {c}; {z})")]
    NoConvergentPath { a: f64, b: f64, c: f64, z: f64 },
    #[error("invalid N = {n}: {reason}")]
    InvalidN { n: usize, reason: &'static str },
    #[error("{name} = {value} out of range, accepted {range}")]
    OutOfRange {
        name: &'static str,
        value: String,
        range: &'static str,
    },
    #[error("quadrature did not converge: achieved {achieved:e}, requested {requested:e}")]
    Quadrature { achieved: f64, requested: f64 },
    #[error("QR iteration did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("series: {0}")]
    Series(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range<T: std::fmt::Display>(
    name: &'static str,
    value: T,
    range: &'static str,
) -> Error {
    Error::OutOfRange {
        name,
        value: value.to_string(),
        range,
    }
}

pub(crate) fn check_even_n(n: usize, min: usize) -> Result<()> {
    if n % 2 != 0 {
        return Err(Error::InvalidN { n, reason: "N must be even" });
    }
    if n < min {
        return Err(Error::InvalidN { n, reason: "N below minimum" });
    }
    Ok(())
}
