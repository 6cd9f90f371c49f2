//! Two-sample test of the strong Markov property.
//!
//! Arm (a) evaluates `h(boundary eta, eta_[eta])` on one sample. Arm (b)
//! evaluates the same statistics on `(boundary eta_b, eta'_[eta_b])`, where
//! `eta_b` is an independent sample and `eta'` a fresh sample trimmed to
//! `[eta_b]`; the statistic vector is (count on the hull, sum of `f` over it,
//! hull mass). If the hull is a stopping set the two arms have the same law.

use hullforge_core::{Integrand, PointPattern};
use hullforge_generators::{hull_mass, HullIntegral};
use hullforge_sampling::{sample_poisson, trimmed_resample, IntensityModel, RngStream};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, MarkovConfig};
use crate::error::McError;
use crate::scenario::Scenario;
use crate::stats::{ks_two_sample, pairwise_sum};

/// How arm (b) is produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MarkovMode {
    /// Fresh sample trimmed to the hull.
    Trimmed,
    /// Fresh sample left untrimmed (negative control).
    Untrimmed,
    /// Both arms on the same stream (degenerate smoke test).
    SharedStream,
}

pub const COORDINATES: [&str; 3] = ["hull_count", "hull_sum", "hull_mass"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarkovRow {
    pub coordinate: String,
    pub statistic: f64,
    pub p_value: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarkovReport {
    pub experiment: String,
    pub scenario: String,
    pub seed: u64,
    pub t: f64,
    pub pairs: usize,
    pub mode: MarkovMode,
    pub alpha: f64,
    pub rows: Vec<MarkovRow>,
    /// Every coordinate has `p > alpha`.
    pub pass: bool,
    /// For the negative control: the count coordinate has `p < control_alpha`.
    pub control_detected: Option<bool>,
}

fn statistics(
    gen: &dyn HullIntegral,
    model: &IntensityModel,
    f: &Integrand,
    observed: &PointPattern,
    inside: &PointPattern,
) -> Result<[f64; 3], McError> {
    let sum: Vec<f64> = inside.atoms().map(|x| f.eval(x)).collect();
    Ok([inside.mass() as f64, pairwise_sum(&sum), hull_mass(gen, observed, model)?])
}

/// The pair of statistic vectors for pair index `i`.
fn pair(
    sc: &Scenario,
    model: &IntensityModel,
    mode: MarkovMode,
    seed: u64,
    i: usize,
) -> Result<([f64; 3], [f64; 3]), McError> {
    let gen = sc.gen.as_ref();
    let stream = RngStream::new(seed, i as u64);
    let eta = sample_poisson(model, &stream.substream(0))?;
    let own = eta.restrict(|x| gen.hull_contains(&eta, x));
    let a = statistics(gen, model, &sc.f, &eta, &own)?;
    let b = match mode {
        MarkovMode::SharedStream => statistics(gen, model, &sc.f, &eta, &own)?,
        MarkovMode::Trimmed => {
            let eta_b = sample_poisson(model, &stream.substream(1))?;
            let fresh = trimmed_resample(model, gen, &eta_b, &stream.substream(2))?;
            statistics(gen, model, &sc.f, &eta_b, &fresh)?
        }
        MarkovMode::Untrimmed => {
            let eta_b = sample_poisson(model, &stream.substream(1))?;
            let fresh = sample_poisson(model, &stream.substream(2))?;
            statistics(gen, model, &sc.f, &eta_b, &fresh)?
        }
    };
    Ok((a, b))
}

/// Runs the two-sample test with the mode chosen by the configuration's
/// `negative_control` flag, at the first grid intensity.
pub fn markov_two_sample(cfg: &ExperimentConfig) -> Result<MarkovReport, McError> {
    let mode = match cfg.markov {
        Some(MarkovConfig { negative_control: true, .. }) => MarkovMode::Untrimmed,
        _ => MarkovMode::Trimmed,
    };
    markov_two_sample_with(cfg, mode)
}

/// [`markov_two_sample`] with an explicit arm (b) mode.
pub fn markov_two_sample_with(cfg: &ExperimentConfig, mode: MarkovMode) -> Result<MarkovReport, McError> {
    let Some(mc) = cfg.markov else {
        return Err(McError::Config("the two-sample test needs a `markov` section".into()));
    };
    let sc = Scenario::resolve(cfg)?;
    let t = sc.grid[0];
    let model = sc.model_at(t);
    let pairs: Vec<([f64; 3], [f64; 3])> =
        (0..mc.pairs).into_par_iter().map(|i| pair(&sc, &model, mode, cfg.seed, i)).collect::<Result<_, _>>()?;
    let mut rows = Vec::with_capacity(COORDINATES.len());
    for (k, name) in COORDINATES.iter().enumerate() {
        let a: Vec<f64> = pairs.iter().map(|p| p.0[k]).collect();
        let b: Vec<f64> = pairs.iter().map(|p| p.1[k]).collect();
        let test = ks_two_sample(&a, &b)?;
        rows.push(MarkovRow {
            coordinate: (*name).to_string(),
            statistic: test.statistic,
            p_value: test.p_value,
            pass: test.p_value > mc.alpha,
        });
    }
    let pass = rows.iter().all(|r| r.pass);
    let control_detected = (mode == MarkovMode::Untrimmed).then(|| rows[0].p_value < mc.control_alpha);
    Ok(MarkovReport {
        experiment: cfg.experiment.clone(),
        scenario: cfg.scenario.clone(),
        seed: cfg.seed,
        t,
        pairs: mc.pairs,
        mode,
        alpha: mc.alpha,
        rows,
        pass,
        control_detected,
    })
}
