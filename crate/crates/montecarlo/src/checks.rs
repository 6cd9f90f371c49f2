//! Evaluation of pass/fail criteria on a replication summary.

use hullforge_analytics::{coordmin_exact_card, coordmin_expected_card};
use serde::{Deserialize, Serialize};

use crate::config::{CheckSpec, ExperimentConfig};
use crate::error::McError;
use crate::replicate::{run_replications, ReplicationSummary, TSummary};
use crate::stats::Interval;

/// Outcome of one check at one grid intensity (or over the grid, `t = None`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub check: String,
    pub t: Option<f64>,
    pub pass: bool,
    /// The statistic under test.
    pub value: f64,
    /// What it is compared with.
    pub reference: f64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub summary: ReplicationSummary,
    pub checks: Vec<CheckOutcome>,
    pub pass: bool,
}

fn outcome(check: &CheckSpec, t: Option<f64>, pass: bool, value: f64, reference: f64, detail: String) -> CheckOutcome {
    CheckOutcome { check: check.name().to_string(), t, pass, value, reference, detail }
}

fn missing(check: &CheckSpec, row: &TSummary, what: &str) -> CheckOutcome {
    outcome(check, Some(row.t), false, f64::NAN, f64::NAN, format!("{what} unavailable"))
}

fn within_z(check: &CheckSpec, t: f64, mean: f64, se: f64, reference: f64, z: f64) -> CheckOutcome {
    let dev = (mean - reference).abs();
    let pass = dev <= z * se;
    outcome(check, Some(t), pass, mean, reference, format!("|mean - ref| = {dev:.3e}, {z} SE = {:.3e}", z * se))
}

fn pairwise_overlap(named: &[(&str, Interval)]) -> (bool, String) {
    let mut pass = true;
    let mut parts = Vec::new();
    for (i, (a, ia)) in named.iter().enumerate() {
        parts.push(format!("{a} [{:.6e}, {:.6e}]", ia.lo, ia.hi));
        for (_, ib) in &named[i + 1..] {
            pass &= ia.overlaps(ib);
        }
    }
    (pass, parts.join(", "))
}

/// Evaluates every configured check against `summary`.
pub fn evaluate(cfg: &ExperimentConfig, summary: &ReplicationSummary) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for check in &cfg.checks {
        match check {
            CheckSpec::Unbiased { z } => {
                for r in &summary.rows {
                    match r.target {
                        Some(f) => out.push(within_z(check, r.t, r.estimate.mean, r.estimate.se, f, *z)),
                        None => out.push(missing(check, r, "target")),
                    }
                }
            }
            CheckSpec::KsIdentity { tol } => {
                for r in &summary.rows {
                    match r.ks_identity_max {
                        Some(m) => out.push(outcome(
                            check,
                            Some(r.t),
                            m <= *tol,
                            m,
                            *tol,
                            format!("largest relative residual {m:.3e} over {} patterns", r.estimate.n),
                        )),
                        None => out.push(missing(check, r, "target")),
                    }
                }
            }
            CheckSpec::Efron => {
                for r in &summary.rows {
                    let Some(c) = r.complement_mass else {
                        out.push(missing(check, r, "complement mass"));
                        continue;
                    };
                    let b = r.boundary_count.mean_ci();
                    let (pass, detail) = pairwise_overlap(&[("complement mass", c.mean_ci()), ("boundary count", b)]);
                    out.push(outcome(check, Some(r.t), pass, c.mean, r.boundary_count.mean, detail));
                }
            }
            CheckSpec::CoordminCard { z } => {
                for r in &summary.rows {
                    let m = r.boundary_count;
                    match (coordmin_expected_card(r.t), coordmin_exact_card(r.t)) {
                        (Ok(e), Ok(exact)) => {
                            let mut o = within_z(check, r.t, m.mean, m.se, e, *z);
                            o.detail = format!(
                                "{}; exact Poisson value {exact:.6} is {:.2} SE from the mean",
                                o.detail,
                                (m.mean - exact).abs() / m.se
                            );
                            out.push(o);
                        }
                        (Err(e), _) | (_, Err(e)) => {
                            out.push(outcome(check, Some(r.t), false, m.mean, f64::NAN, e.to_string()))
                        }
                    }
                }
            }
            CheckSpec::HigherMoments { orders, z } => {
                for r in &summary.rows {
                    for k in orders {
                        let Some(h) = r.higher.iter().find(|h| h.k == *k) else {
                            out.push(missing(check, r, "moment order"));
                            continue;
                        };
                        match h.target {
                            Some(f) => {
                                let mut o = within_z(check, r.t, h.moments.mean, h.moments.se, f, *z);
                                o.detail = format!("k = {k}: {}", o.detail);
                                out.push(o);
                            }
                            None => out.push(missing(check, r, "target")),
                        }
                    }
                }
            }
            CheckSpec::VarianceIdentity => {
                for r in &summary.rows {
                    let Some(n) = &r.nested else {
                        out.push(missing(check, r, "nested estimate"));
                        continue;
                    };
                    let (pass, detail) = pairwise_overlap(&[
                        ("empirical variance", r.variance_ci),
                        ("mean variance estimate", r.vhat.mean_ci()),
                        ("nested integral", n.variance.ci99()),
                    ]);
                    out.push(outcome(check, Some(r.t), pass, r.estimate.variance, n.variance.value, detail));
                }
            }
            CheckSpec::CovarianceIdentity => {
                for r in &summary.rows {
                    let (Some(n), Some(c)) = (&r.nested, &r.covariance) else {
                        out.push(missing(check, r, "covariance"));
                        continue;
                    };
                    let Some(nc) = n.covariance else {
                        out.push(missing(check, r, "nested covariance"));
                        continue;
                    };
                    let (pass, detail) = pairwise_overlap(&[
                        ("empirical covariance", Interval::ci99(c.covariance, c.se)),
                        ("nested integral", nc.ci99()),
                    ]);
                    out.push(outcome(check, Some(r.t), pass, c.covariance, nc.value, detail));
                }
            }
            CheckSpec::VarianceRate { expected, tolerance } => match &summary.variance_fit {
                Some(f) => out.push(outcome(
                    check,
                    None,
                    (f.slope - expected).abs() <= *tolerance,
                    f.slope,
                    *expected,
                    format!("slope {:.4} (SE {:.4}), allowed {expected} +/- {tolerance}", f.slope, f.stderr),
                )),
                None => out.push(outcome(check, None, false, f64::NAN, *expected, "no fit".into())),
            },
            CheckSpec::VarianceBracket => {
                for r in &summary.rows {
                    let Some(a) = &r.analytic else {
                        out.push(missing(check, r, "analytic bounds"));
                        continue;
                    };
                    let ci = r.variance_ci;
                    let pass = ci.hi >= a.variance_lower && ci.lo <= a.variance_upper;
                    out.push(outcome(
                        check,
                        Some(r.t),
                        pass,
                        r.estimate.variance,
                        a.variance_lower,
                        format!(
                            "99% interval [{:.6e}, {:.6e}] against bounds [{:.6e}, {:.6e}]",
                            ci.lo, ci.hi, a.variance_lower, a.variance_upper
                        ),
                    ));
                }
            }
            CheckSpec::CltRate { expected, tolerance } => match &summary.w1_fit {
                Some(f) => out.push(outcome(
                    check,
                    None,
                    (f.slope - expected).abs() <= *tolerance,
                    f.slope,
                    *expected,
                    format!("slope {:.4} (SE {:.4}), allowed {expected} +/- {tolerance}", f.slope, f.stderr),
                )),
                None => out.push(outcome(check, None, false, f64::NAN, *expected, "no fit".into())),
            },
            CheckSpec::CltBound => {
                let Some(r) = summary.rows.last() else { continue };
                match (r.w1, r.analytic.and_then(|a| a.clt)) {
                    (Some(w), Some(b)) => out.push(outcome(
                        check,
                        Some(r.t),
                        w <= b.sum(),
                        w,
                        b.sum(),
                        format!(
                            "empirical W1 {w:.4e} against upper bound {:.4e} (T1 {:.3e}, T3 {:.3e}, T4 {:.3e}, T5 {:.3e})",
                            b.sum(),
                            b.t1,
                            b.t3,
                            b.t4,
                            b.t5
                        ),
                    )),
                    _ => out.push(missing(check, r, "W1 or upper bound")),
                }
            }
        }
    }
    out
}

/// Runs the replications of `cfg` and evaluates its checks.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport, McError> {
    let summary = run_replications(cfg)?;
    let checks = evaluate(cfg, &summary);
    let pass = checks.iter().all(|c| c.pass);
    Ok(ExperimentReport { summary, checks, pass })
}
