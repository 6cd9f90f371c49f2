//! The replication harness.

use hullforge_analytics::{clt_bound_terms, hoelder_variance_bounds, CltBoundTerms};
use hullforge_core::PointPattern;
use hullforge_estimators::{hull_estimate, hull_estimate_k, ks_error};
use hullforge_generators::hull_mass;
use hullforge_sampling::{mix64, sample_poisson};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{CheckSpec, ExperimentConfig};
use crate::error::McError;
use crate::nested::{nested_h_integral, NestedEstimate};
use crate::scenario::{replication_stream, Scenario};
use crate::stats::{covariance, normality_diagnostics, rate_fit, Interval, Moments, RateFit};

/// Per-replication quantities.
#[derive(Clone, Debug, Default)]
struct Replication {
    value: f64,
    vhat: f64,
    boundary: f64,
    complement: Option<f64>,
    ks_residual: Option<f64>,
    higher: Vec<f64>,
    second: Option<(f64, f64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HigherMoment {
    pub k: usize,
    pub moments: Moments,
    pub target: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CovarianceSummary {
    pub covariance: f64,
    pub se: f64,
    /// Moments of `int f g d(boundary eta)`.
    pub estimator: Moments,
}

/// Analytic companions of a Hoelder scenario.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyticBounds {
    pub variance_lower: f64,
    pub variance_upper: f64,
    /// Upper bound on the Wasserstein distance.
    pub clt: Option<CltBoundTerms>,
}

/// Aggregates at one grid intensity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TSummary {
    pub t: f64,
    pub target: Option<f64>,
    pub estimate: Moments,
    pub ci: Interval,
    pub variance_ci: Interval,
    /// Moments of the variance estimate `int f^2 d(boundary eta)`.
    pub vhat: Moments,
    pub boundary_count: Moments,
    /// Moments of `lambda([eta]^c)`, when an Efron check asks for them.
    pub complement_mass: Option<Moments>,
    pub w1: Option<f64>,
    pub ks: Option<f64>,
    /// Largest `|hat F - F - ks_error| / (1 + |F|)` over the replications.
    pub ks_identity_max: Option<f64>,
    pub higher: Vec<HigherMoment>,
    pub covariance: Option<CovarianceSummary>,
    pub nested: Option<NestedEstimate>,
    pub analytic: Option<AnalyticBounds>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReplicationSummary {
    pub experiment: String,
    pub scenario: String,
    pub seed: u64,
    pub replications: usize,
    pub rows: Vec<TSummary>,
    /// Slope of `log Var hat F_t` against `log t`.
    pub variance_fit: Option<RateFit>,
    /// Slope of `log W1` against `log t`.
    pub w1_fit: Option<RateFit>,
}

fn wants(cfg: &ExperimentConfig, pred: impl Fn(&CheckSpec) -> bool) -> bool {
    cfg.checks.iter().any(pred)
}

fn orders(cfg: &ExperimentConfig) -> Vec<usize> {
    let mut ks: Vec<usize> = cfg
        .checks
        .iter()
        .filter_map(|c| match c {
            CheckSpec::HigherMoments { orders, .. } => Some(orders.clone()),
            _ => None,
        })
        .flatten()
        .collect();
    ks.sort_unstable();
    ks.dedup();
    ks
}

fn replicate(
    sc: &Scenario,
    model: &hullforge_sampling::IntensityModel,
    mu: &PointPattern,
    target: Option<f64>,
    check_ks: bool,
    want_complement: bool,
    orders: &[usize],
) -> Result<Replication, McError> {
    let gen = sc.gen.as_ref();
    let e = hull_estimate(gen, model, &sc.f, mu)?;
    let complement = if want_complement {
        let hull = match sc.f.as_constant() {
            Some(c) if c != 0.0 => e.hull_term / c,
            _ => hull_mass(gen, mu, model)?,
        };
        Some(model.total_mass() - hull)
    } else {
        None
    };
    let ks_residual = match (check_ks, target) {
        (true, Some(f_true)) => {
            let ks = ks_error(gen, model, &sc.f, mu, f_true)?;
            Some((e.value - f_true - ks).abs() / (1.0 + f_true.abs()))
        }
        _ => None,
    };
    let higher = orders
        .iter()
        .map(|&k| if k == 1 { Ok(e.value) } else { hull_estimate_k(gen, model, &sc.f, k, mu) })
        .collect::<Result<Vec<_>, _>>()?;
    let second = match &sc.g {
        Some(g) => {
            let e2 = hull_estimate(gen, model, g, mu)?;
            let cross: f64 =
                gen.boundary(mu).entries().iter().map(|(x, m)| f64::from(*m) * sc.f.eval(x) * g.eval(x)).sum();
            Some((e2.value, cross))
        }
        None => None,
    };
    Ok(Replication {
        value: e.value,
        vhat: e.variance_estimate,
        boundary: e.boundary_count as f64,
        complement,
        ks_residual,
        higher,
        second,
    })
}

/// Runs `cfg.replications` independent replications at every grid
/// intensity and aggregates them. Replication `r` at grid index `i` uses
/// [`replication_stream`]`(seed, i, r)`, and aggregation runs in replication
/// order, so the result does not depend on the number of threads.
pub fn run_replications(cfg: &ExperimentConfig) -> Result<ReplicationSummary, McError> {
    let sc = Scenario::resolve(cfg)?;
    let check_ks = wants(cfg, |c| matches!(c, CheckSpec::KsIdentity { .. }));
    let nested = wants(cfg, |c| matches!(c, CheckSpec::VarianceIdentity | CheckSpec::CovarianceIdentity));
    let want_bounds = wants(cfg, |c| matches!(c, CheckSpec::VarianceBracket | CheckSpec::CltBound));
    let want_clt = wants(cfg, |c| matches!(c, CheckSpec::CltBound));
    let want_complement = wants(cfg, |c| matches!(c, CheckSpec::Efron));
    let ks_orders = orders(cfg);
    let mut rows = Vec::with_capacity(sc.grid.len());
    for (i, &t) in sc.grid.iter().enumerate() {
        let model = sc.model_at(t);
        let target = sc.target_at(t)?;
        let reps: Vec<Replication> = (0..cfg.replications)
            .into_par_iter()
            .map(|r| {
                let mu = sample_poisson(&model, &replication_stream(cfg.seed, i, r))?;
                replicate(&sc, &model, &mu, target, check_ks, want_complement, &ks_orders)
            })
            .collect::<Result<_, _>>()?;
        let col = |f: &dyn Fn(&Replication) -> f64| reps.iter().map(f).collect::<Vec<f64>>();
        let values = col(&|r| r.value);
        let estimate = Moments::of(&values);
        let (w1, ks) = match normality_diagnostics(&values) {
            Ok((w, k)) => (Some(w), Some(k)),
            Err(_) => (None, None),
        };
        let higher = ks_orders
            .iter()
            .enumerate()
            .map(|(j, &k)| HigherMoment {
                k,
                moments: Moments::of(&col(&|r| r.higher[j])),
                target: target.map(|f| f.powi(k as i32)),
            })
            .collect();
        let covariance = sc.g.as_ref().map(|_| {
            let v2 = col(&|r| r.second.expect("second estimate").0);
            let (c, se) = covariance(&values, &v2);
            CovarianceSummary { covariance: c, se, estimator: Moments::of(&col(&|r| r.second.expect("second").1)) }
        });
        let nested = match (&cfg.nested, nested) {
            (Some(n), true) => Some(nested_h_integral(
                sc.gen.as_ref(),
                &model,
                &sc.f,
                sc.g.as_ref(),
                n,
                mix64(cfg.seed ^ (i as u64 + 1)),
            )?),
            _ => None,
        };
        let analytic = if want_bounds {
            match sc.hoelder_params(cfg, t)? {
                Some(p) => {
                    let (lo, hi) = hoelder_variance_bounds(&p)?;
                    let clt = if want_clt { Some(clt_bound_terms(&p)?) } else { None };
                    Some(AnalyticBounds { variance_lower: lo, variance_upper: hi, clt })
                }
                None => None,
            }
        } else {
            None
        };
        rows.push(TSummary {
            t,
            target,
            ci: estimate.mean_ci(),
            variance_ci: estimate.variance_ci(),
            estimate,
            vhat: Moments::of(&col(&|r| r.vhat)),
            boundary_count: Moments::of(&col(&|r| r.boundary)),
            complement_mass: want_complement.then(|| Moments::of(&col(&|r| r.complement.unwrap_or(f64::NAN)))),
            w1,
            ks,
            ks_identity_max: if check_ks && target.is_some() {
                Some(reps.iter().filter_map(|r| r.ks_residual).fold(0.0, f64::max))
            } else {
                None
            },
            higher,
            covariance,
            nested,
            analytic,
        });
    }
    let fit = |metric: &dyn Fn(&TSummary) -> Option<f64>| -> Option<RateFit> {
        if rows.len() < 4 {
            return None;
        }
        let pairs: Option<Vec<(f64, f64)>> = rows.iter().map(|r| metric(r).map(|m| (r.t, m))).collect();
        pairs.and_then(|p| rate_fit(&p).ok())
    };
    let variance_fit = fit(&|r| Some(r.estimate.variance));
    let w1_fit = fit(&|r| r.w1);
    Ok(ReplicationSummary {
        experiment: cfg.experiment.clone(),
        scenario: cfg.scenario.clone(),
        seed: cfg.seed,
        replications: cfg.replications,
        rows,
        variance_fit,
        w1_fit,
    })
}
