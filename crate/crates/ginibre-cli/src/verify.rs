//! Self-checking identity and anchor suites.

use std::f64::consts::{PI, SQRT_2};

use ginibre::expected::{a_l_exact, c_alpha, c_alpha_integral, expected_exact, expected_residue};
use ginibre::series::exact::rat;
use ginibre::series::{gen_q, residue_a, residue_a_closed, residue_a_n, residue_a_n_closed};
use ginibre::variance::{a_coefficients_match, comb_identity, comb_identity_counting, r_alpha, r_alpha_c_ratio, MAX_A_K, MAX_COMB_K};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Anchors,
    All,
}

/// One identity or anchor with its outcome.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// `exact` for rational equality, `pass` for a met tolerance, `fail` otherwise.
    pub status: String,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

fn exact_check(name: &str, cases: impl IntoIterator<Item = (String, ginibre::Result<bool>)>) -> CheckResult {
    let mut count = 0;
    let mut failure = None;
    for (label, ok) in cases {
        count += 1;
        match ok {
            Ok(true) => {}
            Ok(false) => failure = failure.or(Some(format!("mismatch at {label}"))),
            Err(e) => failure = failure.or(Some(format!("{label}: {e}"))),
        }
    }
    CheckResult {
        name: name.to_string(),
        status: if failure.is_none() { "exact" } else { "fail" }.to_string(),
        cases: count,
        detail: failure,
    }
}

fn tol_check(name: &str, cases: Vec<(String, ginibre::Result<f64>)>, tol: f64) -> CheckResult {
    let mut worst: f64 = 0.0;
    let mut failure = None;
    for (label, err) in &cases {
        match err {
            Ok(e) if *e <= tol => worst = worst.max(*e),
            Ok(e) => failure = failure.or(Some(format!("{label}: error {e:e} above {tol:e}"))),
            Err(e) => failure = failure.or(Some(format!("{label}: {e}"))),
        }
    }
    CheckResult {
        name: name.to_string(),
        status: if failure.is_none() { "pass" } else { "fail" }.to_string(),
        cases: cases.len(),
        detail: failure.or(Some(format!("max error {worst:e}, tolerance {tol:e}"))),
    }
}

fn pow2(e: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(1) << e)
}

fn identity_checks() -> Vec<CheckResult> {
    let mut out = Vec::new();

    let q_cases = (0..=30u64).map(|k| {
        let ok = gen_q(k, k as usize + 1).map(|q| {
            q[0] == rat(1, 1) && q[1] == rat(k as i64 + 1, 2) && q[k as usize + 1] == pow2(k as u32 + 1).recip()
        });
        (format!("k={k}"), ok)
    });
    out.push(exact_check("q_anchors: q_{k,0}=1, q_{k,1}=(k+1)/2, q_{k,k+1}=2^{-k-1}, k<=30", q_cases));

    let a_cases = [4usize, 8, 12, 16].into_iter().flat_map(|n| {
        (0..=n - 2).map(move |k| {
            let ok = residue_a(n, k).and_then(|a| Ok(a == residue_a_closed(n, k)?));
            (format!("N={n} k={k}"), ok)
        })
    });
    out.push(exact_check("residue_a: contour residue = closed sum, N in {4,8,12,16}, k<=N-2", a_cases));

    let an_cases = [8usize, 12, 16].into_iter().flat_map(|n| {
        (0..=6usize.min(n - 2)).flat_map(move |k| {
            (0..=3usize).map(move |nn| {
                let ok = residue_a_n(n, k, nn).and_then(|a| Ok(a == residue_a_n_closed(n, k, nn)?));
                (format!("N={n} k={k} n={nn}"), ok)
            })
        })
    });
    out.push(exact_check("residue_a_n: double residue = single sum, N in {8,12,16}, k<=6, n<=3", an_cases));

    let anchor = [8usize, 16, 32, 64].into_iter().map(|n| {
        (format!("N={n}"), residue_a_n(n, 0, 0).map(|a| a == rat(1, 1)))
    });
    out.push(exact_check("residue_a_n anchor: a_{N,0}^0 = 1", anchor));

    let comb = (0..=MAX_COMB_K).map(|k| (format!("k={k}"), comb_identity(k)));
    out.push(exact_check("comb_identity: binomial double sum, k<=200", comb));

    let counting = (0..=MAX_COMB_K).map(|k| (format!("k={k}"), Ok(comb_identity_counting(k))));
    out.push(exact_check("comb_identity_counting: 2^k binom(2k,k) decomposition, k<=200", counting));

    out.push(exact_check(
        "a_coefficients: recombined a_k equal closed form, k<=40",
        [(format!("k<={MAX_A_K}"), a_coefficients_match(MAX_A_K))],
    ));

    let want = [rat(-3, 8), rat(-3, 128), rat(27, 1024), rat(499, 32768)];
    let al = want
        .into_iter()
        .enumerate()
        .map(|(i, w)| (format!("l={}", i + 1), a_l_exact(i + 1, &BigRational::zero()).map(|a| a == w)));
    out.push(exact_check("a_l anchors at tau=0: -3/8, -3/128, 27/1024, 499/32768", al));
    out
}

fn anchor_checks() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut e = vec![
        ("E_2(0) = sqrt 2".to_string(), expected_exact(2, 0.0).map(|v| (v - SQRT_2).abs())),
        ("E_4(0) = 11 sqrt2/8".to_string(), expected_exact(4, 0.0).map(|v| (v - 11.0 * SQRT_2 / 8.0).abs())),
    ];
    for tau in [0.25, 0.5, 0.75] {
        e.push((format!("E_2({tau}) = sqrt(2(1+tau))"), expected_exact(2, tau).map(|v| (v - (2.0 * (1.0 + tau)).sqrt()).abs())));
    }
    out.push(tol_check("expected-count anchors", e, 1e-12));

    let mut routes = Vec::new();
    for n in [4usize, 16, 64] {
        for tau in [0.0, 0.5, 0.9] {
            let err = expected_exact(n, tau).and_then(|a| Ok(((a - expected_residue(n, tau)?) / a).abs()));
            routes.push((format!("N={n} tau={tau}"), err));
        }
    }
    out.push(tol_check("hypergeometric vs residue route (relative)", routes, 1e-9));

    let c = [0.5, 1.0, 2.0, 5.0]
        .into_iter()
        .map(|a| (format!("alpha={a}"), c_alpha_integral(a).map(|v| (v - c_alpha(a)).abs())))
        .collect();
    out.push(tol_check("c(alpha): Bessel form vs erf integral", c, 1e-10));

    let r = [0.5, 1.0, 2.0, 5.0]
        .into_iter()
        .map(|a| (format!("alpha={a}"), r_alpha(a).and_then(|v| Ok((v - r_alpha_c_ratio(a)?).abs()))))
        .collect();
    out.push(tol_check("r(alpha): Bessel form vs c-ratio form", r, 1e-12));

    let limits = vec![
        ("alpha sqrt(pi) c(alpha)/2 at alpha=50".to_string(), Ok((50.0 * PI.sqrt() * c_alpha(50.0) / 2.0 - 1.0).abs())),
        ("r(50) vs 2 - sqrt 2".to_string(), r_alpha(50.0).map(|v| (v - (2.0 - SQRT_2)).abs())),
        ("c(1e-6) vs 1".to_string(), Ok((c_alpha(1e-6) - 1.0).abs())),
        ("r(1e-3) vs 0".to_string(), r_alpha(1e-3).map(f64::abs)),
    ];
    out.push(tol_check("limits of c and r", limits, 1e-3));
    out
}

/// Runs `suite`; `passed` is false when any check fails.
pub fn run_suite(suite: Suite) -> SuiteReport {
    let checks = match suite {
        Suite::Identities => identity_checks(),
        Suite::Anchors => anchor_checks(),
        Suite::All => identity_checks().into_iter().chain(anchor_checks()).collect(),
    };
    let name = match suite {
        Suite::Identities => "identities",
        Suite::Anchors => "anchors",
        Suite::All => "all",
    };
    SuiteReport { suite: name.to_string(), passed: checks.iter().all(|c| c.status != "fail"), checks }
}
