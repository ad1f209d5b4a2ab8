use serde::Serialize;

use super::kernel::DensityKernel;
use super::reference::{density_limit_ah, density_semicircle};
use crate::error::{out_of_range, Result};
use crate::expected::RegimeParam;

/// Which formula produced a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityRoute {
    Exact,
    Limit,
}

impl DensityRoute {
    pub fn label(self) -> &'static str {
        match self {
            DensityRoute::Exact => "exact",
            DensityRoute::Limit => "limit",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityCurve {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub n: Option<usize>,
    pub tau: Option<f64>,
    pub alpha: Option<f64>,
    pub route: DensityRoute,
}

impl DensityCurve {
    /// Trapezoid rule on the grid.
    pub fn trapezoid(&self) -> f64 {
        self.grid
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
            .sum()
    }
}

/// `count` uniform points on `[lo, hi]`, with `±2` inserted when inside.
pub fn default_grid(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if !(lo < hi) || count < 2 {
        return Err(out_of_range("grid", format!("{lo}:{hi}:{count}"), "lo < hi, at least 2 points"));
    }
    let mut g: Vec<f64> = (0..count).map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64).collect();
    for edge in [-2.0, 2.0] {
        if edge > lo && edge < hi && !g.contains(&edge) {
            g.push(edge);
        }
    }
    g.sort_by(f64::total_cmp);
    Ok(g)
}

/// Density curve on `grid`. The exact route needs `N`; at `τ = 1` it returns
/// the semicircle labelled as the limit route.
pub fn density_curve(n: Option<usize>, param: RegimeParam, route: DensityRoute, grid: Vec<f64>) -> Result<DensityCurve> {
    let alpha = n.map(|n| param.alpha_at(n)).or(match param {
        RegimeParam::Alpha { alpha } => Some(alpha),
        RegimeParam::Tau { .. } => None,
    });
    let tau = match (param, n) {
        (RegimeParam::Tau { tau }, _) => Some(tau),
        (p, Some(n)) => Some(p.tau_at(n)?),
        _ => None,
    };
    let values = match (route, n, tau) {
        (DensityRoute::Exact, Some(_), Some(t)) if t == 1.0 => {
            return Ok(DensityCurve {
                values: grid.iter().map(|&x| density_semicircle(x)).collect(),
                grid,
                n,
                tau,
                alpha,
                route: DensityRoute::Limit,
            });
        }
        (DensityRoute::Exact, Some(n), Some(t)) => {
            DensityKernel::new(n, t)?.density_many(&grid)?.into_iter().map(|p| p.rho.max(0.0)).collect()
        }
        (DensityRoute::Exact, None, _) => return Err(out_of_range("n", "missing", "an even N for the exact route")),
        (DensityRoute::Limit, _, _) => {
            let a = alpha.ok_or_else(|| out_of_range("alpha", "missing", "alpha or (N, tau) for the limit route"))?;
            if a == 0.0 {
                grid.iter().map(|&x| density_semicircle(x)).collect()
            } else {
                grid.iter().map(|&x| density_limit_ah(a, x)).collect::<Result<_>>()?
            }
        }
        _ => unreachable!(),
    };
    Ok(DensityCurve { grid, values, n, tau, alpha, route })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_has_support_edges() {
        let g = default_grid(-2.5, 2.5, 401).unwrap();
        assert_eq!(g.len(), 401);
        assert!(g.contains(&2.0) && g.contains(&-2.0));
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn limit_curve_integrates() {
        let g = default_grid(-2.5, 2.5, 401).unwrap();
        let c = density_curve(None, RegimeParam::alpha(1.0).unwrap(), DensityRoute::Limit, g).unwrap();
        assert!((c.trapezoid() - 1.0).abs() < 1e-3);
    }

    #[test]
    fn tau_one_is_semicircle() {
        let g = default_grid(-2.5, 2.5, 11).unwrap();
        let c = density_curve(Some(8), RegimeParam::tau(1.0).unwrap(), DensityRoute::Exact, g).unwrap();
        assert_eq!(c.route, DensityRoute::Limit);
    }
}
