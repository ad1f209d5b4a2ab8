use std::f64::consts::PI;
use std::path::Path;

use ginibre::density::{default_grid, density_curve, density_limit_ah, density_uniform_elliptic, DensityRoute};
use ginibre::expected::{
    c_alpha, expected_asymptotic_ah, expected_asymptotic_elliptic, expected_exact, expected_residue, RegimeParam,
};
use ginibre::montecarlo::{run_experiment, Dist, EnsembleSpec, ExperimentOptions, ExperimentStats};
use ginibre::series::{CoeffKind, CoefficientTable};
use ginibre::variance::{kernel_double_sum, r_alpha, variance_exact, MAX_ALPHA};
use serde::Serialize;

use crate::args::*;
use crate::output::{csv, digits17, emit, json};
use crate::verify::{run_suite, Suite};
use crate::{CliError, EXIT_FAILURE};

type Outcome = Result<i32, CliError>;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

pub fn dispatch(cli: &Cli) -> Outcome {
    let dir = cli.out_dir.as_deref();
    match &cli.command {
        Command::Expected(a) => expected(a, dir),
        Command::Density(a) => density(a, dir),
        Command::Variance(a) => variance(a, dir),
        Command::Sample(a) => sample(a, dir),
        Command::Verify(a) => verify(a, dir),
        Command::Coeffs(a) => coeffs(a, dir),
    }
}

fn regime(tau: Option<f64>, alpha: Option<f64>) -> Result<RegimeParam, CliError> {
    match (tau, alpha) {
        (Some(t), None) => Ok(RegimeParam::tau(t)?),
        (None, Some(a)) => Ok(RegimeParam::alpha(a)?),
        (None, None) => Err(invalid("one of --tau or --alpha is required")),
        (Some(_), Some(_)) => Err(invalid("--tau and --alpha are mutually exclusive")),
    }
}

/// `τ` at size `n`, as a double in `[0, 1)`.
fn tau_below_one(param: RegimeParam, n: usize) -> Result<f64, CliError> {
    let tau = param.tau_at(n)?;
    if !(0.0..1.0).contains(&tau) {
        return Err(invalid(format!("invalid --tau: {tau} (accepted: [0, 1))")));
    }
    Ok(tau)
}

#[derive(Serialize)]
struct Term {
    label: String,
    value: f64,
}

#[derive(Serialize)]
struct ExpectedReport {
    n: usize,
    tau: f64,
    alpha: f64,
    route: &'static str,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<usize>,
    terms: Vec<Term>,
    #[serde(skip_serializing_if = "Option::is_none")]
    warning: Option<String>,
}

fn expected(a: &ExpectedArgs, dir: Option<&Path>) -> Outcome {
    let param = regime(a.regime.tau, a.regime.alpha)?;
    let tau = tau_below_one(param, a.n)?;
    let alpha = param.alpha_at(a.n);
    let mut report = ExpectedReport { n: a.n, tau, alpha, route: "exact", value: 0.0, order: None, terms: Vec::new(), warning: None };
    match a.route {
        ExpectedRoute::Exact => report.value = expected_exact(a.n, tau)?,
        ExpectedRoute::Residue => {
            report.route = "residue";
            report.value = expected_residue(a.n, tau)?;
        }
        ExpectedRoute::Asymptotic => {
            let r = match param {
                RegimeParam::Alpha { .. } => {
                    report.route = "asymptotic_alpha";
                    expected_asymptotic_ah(a.n, param, a.order)?
                }
                RegimeParam::Tau { tau } => {
                    report.route = "asymptotic_tau";
                    expected_asymptotic_elliptic(a.n, tau, a.order)?
                }
            };
            report.value = r.value;
            report.order = Some(r.order);
            report.terms = r.terms.into_iter().map(|(label, value)| Term { label, value }).collect();
            report.warning = r.warning;
        }
    }
    emit(dir, a.out.as_deref(), &json(&report)?)?;
    Ok(0)
}

fn parse_grid(s: &str) -> Result<Vec<f64>, CliError> {
    let bad = || invalid(format!("invalid --grid: {s} (accepted: lo:hi:count with lo < hi, count >= 2)"));
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, count] = parts.as_slice() else { return Err(bad()) };
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    let count: usize = count.trim().parse().map_err(|_| bad())?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi && count >= 2) {
        return Err(bad());
    }
    Ok(default_grid(lo, hi, count)?)
}

fn density(a: &DensityArgs, dir: Option<&Path>) -> Outcome {
    let param = regime(a.regime.tau, a.regime.alpha)?;
    let grid = parse_grid(&a.grid)?;
    let route = match a.route {
        DensityRouteArg::Exact => {
            if a.n.is_none() {
                return Err(invalid("--n is required for --route exact"));
            }
            DensityRoute::Exact
        }
        DensityRouteArg::Limit => DensityRoute::Limit,
    };
    let curve = density_curve(a.n, param, route, grid)?;
    let text = match a.format {
        Format::Json => json(&curve)?,
        Format::Csv => {
            let label = curve.route.label();
            csv(
                &["x", "rho", "route"],
                curve.grid.iter().zip(&curve.values).map(|(x, r)| vec![digits17(*x), digits17(*r), label.to_string()]),
            )
        }
    };
    emit(dir, a.file.as_deref(), &text)?;
    Ok(0)
}

#[derive(Serialize)]
struct VarianceReport {
    n: usize,
    tau: f64,
    alpha: f64,
    route: &'static str,
    v: f64,
    e: f64,
    ratio: f64,
    r_alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s1_term: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cross_term: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s2_term: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace_error: Option<f64>,
}

fn variance(a: &VarianceArgs, dir: Option<&Path>) -> Outcome {
    let param = regime(a.regime.tau, a.regime.alpha)?;
    let tau = tau_below_one(param, a.n)?;
    let alpha = param.alpha_at(a.n);
    let r = if alpha > 0.0 && alpha <= MAX_ALPHA { Some(r_alpha(alpha)?) } else { None };
    let report = match a.route {
        VarianceRoute::Quadrature | VarianceRoute::Sum => {
            let q = variance_exact(a.n, tau)?;
            let (route, s1) = if a.route == VarianceRoute::Sum {
                let (one, two) = kernel_double_sum(a.n, alpha)?;
                ("sum", a.n as f64 * (one + two))
            } else {
                ("quadrature", q.s1_term)
            };
            let v = 2.0 * q.e - 2.0 * (s1 + q.cross_term + q.s2_term);
            VarianceReport {
                n: a.n,
                tau,
                alpha,
                route,
                v,
                e: q.e,
                ratio: v / q.e,
                r_alpha: r,
                s1_term: Some(s1),
                cross_term: Some(q.cross_term),
                s2_term: Some(q.s2_term),
                trace_error: Some(q.trace_error),
            }
        }
        VarianceRoute::Limit => {
            let ratio = r.ok_or_else(|| invalid(format!("invalid --alpha: {alpha} (accepted: (0, 50] for --route limit)")))?;
            let e = expected_exact(a.n, tau)?;
            VarianceReport {
                n: a.n,
                tau,
                alpha,
                route: "limit",
                v: ratio * e,
                e,
                ratio,
                r_alpha: r,
                s1_term: None,
                cross_term: None,
                s2_term: None,
                trace_error: None,
            }
        }
    };
    emit(dir, a.out.as_deref(), &json(&report)?)?;
    Ok(0)
}

/// Parameters a preset fixes; explicit flags take precedence.
#[derive(Debug, Default, Clone, Copy)]
struct Preset {
    n: Option<usize>,
    tau: Option<f64>,
    alpha: Option<f64>,
    samples: Option<u64>,
}

fn parse_preset(s: &str) -> Result<Preset, CliError> {
    let bad = || invalid(format!("invalid --preset: {s} (accepted: fig1, fig2a, fig2b, fig3:alpha=K)"));
    Ok(match s {
        "fig1" => Preset { n: Some(4096), tau: Some(0.5), alpha: None, samples: Some(1) },
        "fig2a" => Preset { n: Some(256), samples: Some(256), ..Preset::default() },
        "fig2b" => Preset { n: Some(64), samples: Some(100_000), ..Preset::default() },
        _ => {
            let k = s.strip_prefix("fig3:alpha=").ok_or_else(bad)?;
            let alpha: f64 = k.parse().map_err(|_| bad())?;
            Preset { n: Some(256), alpha: Some(alpha), samples: Some(256), ..Preset::default() }
        }
    })
}

#[derive(Serialize)]
struct Reference {
    /// `c(α)`, the limit of `count_mean/N`.
    c_alpha: Option<f64>,
    /// `r(α)`, the limit of `count_variance/count_mean`.
    r_alpha: Option<f64>,
    /// Fixed-`τ` mean `sqrt(2N/π (1+τ)/(1-τ))`.
    mean_fixed_tau: Option<f64>,
    mean_over_n: f64,
    variance_over_mean: Option<f64>,
    /// `(count_mean/N - c(α)) / (count_stderr/N)`.
    z_score: Option<f64>,
    /// Total variation of the normalized histogram from the limiting density.
    histogram_tv: Option<f64>,
}

#[derive(Serialize)]
struct SampleReport {
    tau: f64,
    alpha: f64,
    #[serde(flatten)]
    stats: ExperimentStats,
    reference: Reference,
}

fn sample(a: &SampleArgs, dir: Option<&Path>) -> Outcome {
    let preset = a.preset.as_deref().map(parse_preset).transpose()?.unwrap_or_default();
    let n = a.n.or(preset.n).ok_or_else(|| invalid("--n is required without --preset"))?;
    let (tau, alpha) = match (a.regime.tau, a.regime.alpha) {
        (None, None) => (preset.tau, preset.alpha),
        explicit => explicit,
    };
    let param = regime(tau, alpha)?;
    let samples = a.samples.or(preset.samples).unwrap_or(1);
    let dist = match a.dist {
        DistArg::Gaussian => Dist::Gaussian,
        DistArg::Uniform => Dist::Uniform,
        DistArg::Rademacher => Dist::Rademacher,
    };
    if a.bins == 0 {
        return Err(invalid("invalid --bins: 0 (accepted: >= 1)"));
    }
    let spec = EnsembleSpec::new(n, param, dist, a.seed)?;
    let tau = spec.tau()?;
    let alpha = param.alpha_at(n);
    let opts = ExperimentOptions {
        bins: a.bins,
        scatter_limit: if a.scatter.is_some() { a.scatter_samples.max(1) } else { 0 },
        ..ExperimentOptions::default()
    };
    let mut stats = run_experiment(&spec, samples, &opts)?;

    let nf = n as f64;
    let ah = matches!(param, RegimeParam::Alpha { .. });
    let c = ah.then(|| c_alpha(alpha));
    let r = if ah && alpha <= MAX_ALPHA { Some(r_alpha(alpha)?) } else { None };
    let histogram_tv = if ah {
        let mut err = None;
        let tv = stats.real_eig_histogram.tv_distance_to_density(|x| {
            density_limit_ah(alpha, x).unwrap_or_else(|e| {
                err = Some(e);
                f64::NAN
            })
        });
        err.map_or(Ok(Some(tv)), Err)?
    } else if tau < 1.0 {
        Some(stats.real_eig_histogram.tv_distance_to_density(|x| density_uniform_elliptic(tau, x).unwrap_or(f64::NAN)))
    } else {
        None
    };
    let reference = Reference {
        c_alpha: c,
        r_alpha: r,
        mean_fixed_tau: (!ah && tau < 1.0).then(|| (2.0 * nf / PI * (1.0 + tau) / (1.0 - tau)).sqrt()),
        mean_over_n: stats.count_mean / nf,
        variance_over_mean: (samples > 1 && stats.count_mean > 0.0).then(|| stats.count_variance / stats.count_mean),
        z_score: c.filter(|_| stats.count_stderr > 0.0).map(|c| (stats.count_mean / nf - c) / (stats.count_stderr / nf)),
        histogram_tv,
    };

    if let Some(path) = &a.hist {
        let h = &stats.real_eig_histogram;
        let rows = h.counts.iter().enumerate().map(|(i, c)| vec![digits17(h.edges[i]), digits17(h.edges[i + 1]), c.to_string()]);
        emit(dir, Some(path), &csv(&["bin_lo", "bin_hi", "count"], rows))?;
    }
    if let Some(path) = &a.scatter {
        let pts = stats.complex_scatter.take().unwrap_or_default();
        let rows = pts.iter().map(|(re, im)| vec![digits17(*re), digits17(*im)]);
        emit(dir, Some(path), &csv(&["re", "im"], rows))?;
    }
    stats.complex_scatter = None;
    let report = SampleReport { tau, alpha, stats, reference };
    emit(dir, a.out.as_deref(), &json(&report)?)?;
    if report.stats.parity_violations > 0 {
        eprintln!("error: parity violated in {} samples", report.stats.parity_violations);
        return Ok(EXIT_FAILURE);
    }
    Ok(0)
}

fn verify(a: &VerifyArgs, dir: Option<&Path>) -> Outcome {
    let suite = match a.suite {
        SuiteArg::Identities => Suite::Identities,
        SuiteArg::Anchors => Suite::Anchors,
        SuiteArg::All => Suite::All,
    };
    let report = run_suite(suite);
    emit(dir, a.out.as_deref(), &json(&report)?)?;
    for c in &report.checks {
        eprintln!("{}: {}", c.name, c.status);
    }
    Ok(if report.passed { 0 } else { EXIT_FAILURE })
}

fn coeffs(a: &CoeffsArgs, dir: Option<&Path>) -> Outcome {
    let kind: CoeffKind = a
        .kind
        .parse()
        .map_err(|_| invalid(format!("invalid --kind: {} (accepted: q, p_hat, p, c_l, a_l, d_s, a_k, a_k_n)", a.kind)))?;
    let param = match kind {
        CoeffKind::CL | CoeffKind::DS => {
            Some(a.alpha.ok_or_else(|| invalid(format!("--alpha is required for --kind {}", a.kind)))?)
        }
        CoeffKind::AL => Some(a.tau.unwrap_or(0.0)),
        _ => None,
    };
    let table = CoefficientTable::generate(kind, a.k, a.max, param)?;
    let text = match a.format {
        Format::Json => json(&table)?,
        Format::Csv => {
            let rows = table.values.iter().enumerate().map(|(i, v)| {
                let cell = match v {
                    ginibre::series::CoeffValue::Exact(r) => r.to_string(),
                    ginibre::series::CoeffValue::Real(x) => digits17(*x),
                };
                vec![i.to_string(), cell]
            });
            csv(&["index", "value"], rows)
        }
    };
    emit(dir, a.out.as_deref(), &text)?;
    Ok(0)
}
