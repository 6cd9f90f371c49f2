//! Resolution of a configuration into simulation objects.

use hullforge_analytics::{DepthProfiles, HoelderScenarioParams};
use hullforge_core::{Integrand, PointPattern};
use hullforge_estimators::hull_estimate;
use hullforge_generators::{GeneratorSpec, HullIntegral};
use hullforge_sampling::{mix64, sample_iid, IntensityModel, RngStream};

use crate::config::{ExperimentConfig, TargetKeyword, TargetSpec};
use crate::error::McError;

/// A resolved scenario: generator, base model and integrands.
pub struct Scenario {
    pub gen: Box<dyn HullIntegral>,
    pub base: IntensityModel,
    pub f: Integrand,
    pub g: Option<Integrand>,
    pub grid: Vec<f64>,
    target: TargetSpec,
}

impl Scenario {
    /// Validates `cfg` and checks the generator, model and integrands on a
    /// few points before any simulation.
    pub fn resolve(cfg: &ExperimentConfig) -> Result<Self, McError> {
        cfg.validate()?;
        let gen = cfg.generator.build()?;
        if gen.space() != cfg.intensity.space() {
            return Err(McError::Config(format!(
                "generator {} lives on {}, the intensity on {}",
                gen.name(),
                gen.space(),
                cfg.intensity.space()
            )));
        }
        let f = cfg.integrand.resolve()?;
        let g = cfg.second_integrand.as_ref().map(|s| s.resolve()).transpose()?;
        let sc = Self { gen, base: cfg.intensity.clone(), f, g, grid: cfg.grid(), target: cfg.target.clone() };
        let model = sc.model_at(sc.grid[0]);
        let mut rng = RngStream::new(mix64(cfg.seed), u64::MAX).rng();
        let probe = sample_iid(&model, 3, &mut rng)?;
        for mu in [PointPattern::empty(model.space()), probe] {
            hull_estimate(sc.gen.as_ref(), &model, &sc.f, &mu)?;
            if let Some(g) = &sc.g {
                hull_estimate(sc.gen.as_ref(), &model, g, &mu)?;
            }
        }
        for t in &sc.grid {
            sc.target_at(*t)?;
        }
        Ok(sc)
    }

    pub fn model_at(&self, t: f64) -> IntensityModel {
        self.base.with_rate(t)
    }

    /// The true value of `int f d(lambda_t)`, if known.
    pub fn target_at(&self, t: f64) -> Result<Option<f64>, McError> {
        match self.target {
            TargetSpec::Value(v) => Ok(Some(v)),
            TargetSpec::Keyword(TargetKeyword::None) => Ok(None),
            TargetSpec::Keyword(TargetKeyword::Auto) => Ok(Some(self.model_at(t).integrate(&self.f)?)),
        }
    }

    /// Parameters of the analytic Hoelder bounds at intensity `t`, when the
    /// scenario is an envelope on a functional band.
    pub fn hoelder_params(&self, cfg: &ExperimentConfig, t: f64) -> Result<Option<HoelderScenarioParams>, McError> {
        let (GeneratorSpec::Envelope { d, r, beta, .. }, IntensityModel::HoelderBand { r_prime, .. }) =
            (&cfg.generator, &self.base)
        else {
            return Ok(None);
        };
        let profiles = DepthProfiles::from_band(&self.base, &self.f, 2049)?;
        let p = HoelderScenarioParams { d: *d, beta: *beta, r: *r, r_prime: *r_prime, gamma: cfg.gamma, t, profiles };
        p.validate()?;
        Ok(Some(p))
    }
}

/// Stream of replication `rep` at grid index `t_index`.
pub fn replication_stream(seed: u64, t_index: usize, rep: usize) -> RngStream {
    RngStream::new(seed, rep as u64).substream(t_index as u64)
}
