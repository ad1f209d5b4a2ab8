//! Real eigenvalues of real elliptic Ginibre matrices.

pub mod density;
pub mod error;
pub mod expected;
pub mod montecarlo;
pub mod quad;
pub mod series;
pub mod specfun;
pub mod variance;

pub use error::{Error, Result};
pub use specfun::ScaledReal;

/// Truncated power series with exact rational coefficients.
pub type RationalSeries = series::PowerSeries<num_rational::BigRational>;
/// Truncated power series in double precision.
pub type FloatSeries = series::PowerSeries<f64>;
