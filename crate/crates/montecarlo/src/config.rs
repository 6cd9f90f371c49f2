//! Experiment configurations.

use hullforge_core::{Integrand, SpacePoint};
use hullforge_generators::GeneratorSpec;
use hullforge_sampling::IntensityModel;
use serde::{Deserialize, Serialize};

use crate::error::McError;

/// The configuration schema understood by this version.
pub const SCHEMA_VERSION: u32 = 1;

/// Serializable integrand description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum IntegrandSpec {
    Constant {
        value: f64,
    },
    PowerTail {
        p: f64,
    },
    Indicator,
    PowerDepth {
        p: f64,
    },
    RadialPower {
        beta: f64,
        w: f64,
    },
    Scaled {
        factor: f64,
        of: Box<IntegrandSpec>,
    },
    /// A registered function: `coord_product` (`prod x_i` on Euclidean
    /// points) or `norm_squared` (`|x|^2`).
    Custom {
        tag: String,
    },
}

fn euclid(x: &SpacePoint) -> &[f64] {
    x.coords().unwrap_or(&[])
}

impl IntegrandSpec {
    pub fn resolve(&self) -> Result<Integrand, McError> {
        Ok(match self {
            IntegrandSpec::Constant { value } => Integrand::Constant(*value),
            IntegrandSpec::PowerTail { p } => {
                if p.is_nan() || *p <= 1.0 {
                    return Err(McError::Config(format!("power tail exponent {p} must exceed 1")));
                }
                Integrand::PowerTail(*p)
            }
            IntegrandSpec::Indicator => Integrand::Indicator,
            IntegrandSpec::PowerDepth { p } => {
                if p.is_nan() || *p < 1.0 {
                    return Err(McError::Config(format!("power depth exponent {p} must be at least 1")));
                }
                Integrand::PowerDepth(*p)
            }
            IntegrandSpec::RadialPower { beta, w } => Integrand::RadialPower { beta: *beta, w: *w },
            IntegrandSpec::Scaled { factor, of } => Integrand::Scaled(*factor, Box::new(of.resolve()?)),
            IntegrandSpec::Custom { tag } => match tag.as_str() {
                "coord_product" => Integrand::custom(tag, |x| euclid(x).iter().product()),
                "norm_squared" => Integrand::custom(tag, |x| euclid(x).iter().map(|c| c * c).sum()),
                other => return Err(McError::Config(format!("unknown custom integrand tag `{other}`"))),
            },
        })
    }
}

/// The true value of `F`: computed from the model, given, or absent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TargetSpec {
    Value(f64),
    Keyword(TargetKeyword),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetKeyword {
    /// `int f d(lambda)` evaluated analytically at every grid intensity.
    Auto,
    None,
}

impl Default for TargetSpec {
    fn default() -> Self {
        TargetSpec::Keyword(TargetKeyword::Auto)
    }
}

/// Depth of the nested simulation estimating `E H_x(eta)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NestedConfig {
    #[serde(default = "default_probes")]
    pub probes: usize,
    #[serde(default = "default_replicas")]
    pub replicas: usize,
}

fn default_probes() -> usize {
    512
}

fn default_replicas() -> usize {
    200
}

impl Default for NestedConfig {
    fn default() -> Self {
        Self { probes: default_probes(), replicas: default_replicas() }
    }
}

fn default_z() -> f64 {
    4.0
}

fn default_ks_tol() -> f64 {
    1e-10
}

fn default_gamma() -> f64 {
    1.0
}

/// A pass/fail criterion evaluated on the replication summary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case", deny_unknown_fields)]
pub enum CheckSpec {
    /// `|mean - F| <= z SE` at every grid intensity.
    Unbiased {
        #[serde(default = "default_z")]
        z: f64,
    },
    /// `|hat F - F - ks_error| <= tol (1 + |F|)` on every pattern.
    KsIdentity {
        #[serde(default = "default_ks_tol")]
        tol: f64,
    },
    /// 99% intervals of `E lambda([eta]^c)` and `E card(boundary)` overlap.
    Efron,
    /// Mean boundary count within `z SE` of the coordinate-minima closed form.
    CoordminCard {
        #[serde(default = "default_z")]
        z: f64,
    },
    /// Mean of `hat F^(k)` within `z SE` of `F^k`.
    HigherMoments {
        orders: Vec<usize>,
        #[serde(default = "default_z")]
        z: f64,
    },
    /// Empirical variance, mean variance estimate and nested integral
    /// `int f^2 E H d(lambda)` pairwise overlap at 99%.
    VarianceIdentity,
    /// Empirical covariance of the two estimators and the nested integral
    /// `int f g E H d(lambda)` overlap at 99%.
    CovarianceIdentity,
    /// Log-log slope of the empirical variance within `expected +/- tolerance`.
    VarianceRate { expected: f64, tolerance: f64 },
    /// Every 99% variance interval meets the two-sided analytic bounds.
    VarianceBracket,
    /// Log-log slope of the empirical W1 distance within `expected +/- tolerance`.
    CltRate { expected: f64, tolerance: f64 },
    /// Empirical W1 at the largest intensity below the analytic upper bound.
    CltBound,
}

impl CheckSpec {
    pub fn name(&self) -> &'static str {
        match self {
            CheckSpec::Unbiased { .. } => "unbiased",
            CheckSpec::KsIdentity { .. } => "ks_identity",
            CheckSpec::Efron => "efron",
            CheckSpec::CoordminCard { .. } => "coordmin_card",
            CheckSpec::HigherMoments { .. } => "higher_moments",
            CheckSpec::VarianceIdentity => "variance_identity",
            CheckSpec::CovarianceIdentity => "covariance_identity",
            CheckSpec::VarianceRate { .. } => "variance_rate",
            CheckSpec::VarianceBracket => "variance_bracket",
            CheckSpec::CltRate { .. } => "clt_rate",
            CheckSpec::CltBound => "clt_bound",
        }
    }
}

/// Settings of the strong Markov two-sample experiment.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkovConfig {
    pub pairs: usize,
    /// Also run the untrimmed negative control.
    #[serde(default)]
    pub negative_control: bool,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_control_alpha")]
    pub control_alpha: f64,
}

fn default_alpha() -> f64 {
    1e-3
}

fn default_control_alpha() -> f64 {
    1e-6
}

/// One simulation experiment on a scenario.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    /// Output file stem.
    pub experiment: String,
    pub scenario: String,
    pub generator: GeneratorSpec,
    /// Intensity model; its rate is replaced by each grid intensity.
    pub intensity: IntensityModel,
    pub integrand: IntegrandSpec,
    /// Second integrand for covariance checks.
    #[serde(default)]
    pub second_integrand: Option<IntegrandSpec>,
    #[serde(default)]
    pub target: TargetSpec,
    pub replications: usize,
    pub seed: u64,
    /// Intensities to simulate; empty means the model's own rate.
    #[serde(default)]
    pub t_grid: Vec<f64>,
    #[serde(default)]
    pub nested: Option<NestedConfig>,
    #[serde(default)]
    pub markov: Option<MarkovConfig>,
    /// Exponent of the depth profile at the band boundary, for the analytic
    /// Hoelder bounds.
    #[serde(default = "default_gamma")]
    pub gamma: f64,
    #[serde(default)]
    pub checks: Vec<CheckSpec>,
}

impl ExperimentConfig {
    /// Parses a JSON configuration and validates it.
    pub fn from_json(text: &str) -> Result<Self, McError> {
        let cfg: Self =
            serde_json::from_str(text).map_err(|e| McError::Config(format!("cannot parse configuration: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn grid(&self) -> Vec<f64> {
        if self.t_grid.is_empty() {
            vec![self.intensity.rate()]
        } else {
            self.t_grid.clone()
        }
    }

    pub fn validate(&self) -> Result<(), McError> {
        let bad = |m: String| Err(McError::Config(m));
        if self.schema_version != SCHEMA_VERSION {
            return bad(format!("schema version {} is not supported (expected {SCHEMA_VERSION})", self.schema_version));
        }
        if self.experiment.is_empty()
            || !self.experiment.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        {
            return bad(format!("experiment name `{}` must be non-empty [A-Za-z0-9_-]", self.experiment));
        }
        if self.replications < 2 {
            return bad(format!("need at least 2 replications, got {}", self.replications));
        }
        let grid = self.grid();
        if grid.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return bad(format!("grid intensities must be positive: {grid:?}"));
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return bad(format!("t-grid must be strictly increasing: {grid:?}"));
        }
        for t in &grid {
            self.intensity.with_rate(*t).validate()?;
        }
        self.integrand.resolve()?;
        if let Some(g) = &self.second_integrand {
            g.resolve()?;
        }
        if let Some(n) = &self.nested {
            if n.probes < 2 || n.replicas < 1 {
                return bad("nested simulation needs at least 2 probes and 1 replica".into());
            }
        }
        if let Some(m) = &self.markov {
            if m.pairs < 2 {
                return bad("the two-sample test needs at least 2 pairs".into());
            }
        }
        for c in &self.checks {
            match c {
                CheckSpec::VarianceIdentity if self.nested.is_none() => {
                    return bad("variance_identity needs a `nested` section".into())
                }
                CheckSpec::CovarianceIdentity if self.nested.is_none() || self.second_integrand.is_none() => {
                    return bad("covariance_identity needs `nested` and `second_integrand`".into())
                }
                CheckSpec::HigherMoments { orders, .. } if orders.contains(&0) => {
                    return bad("moment orders must be at least 1".into())
                }
                CheckSpec::VarianceRate { .. } | CheckSpec::CltRate { .. } if grid.len() < 4 => {
                    return bad("rate checks need a t-grid of at least 4 intensities".into())
                }
                CheckSpec::VarianceBracket | CheckSpec::CltBound
                    if !matches!(
                        (&self.generator, &self.intensity),
                        (GeneratorSpec::Envelope { .. }, IntensityModel::HoelderBand { .. })
                    ) =>
                {
                    return bad("analytic Hoelder bounds need an envelope generator on a functional band".into())
                }
                _ => {}
            }
        }
        Ok(())
    }
}
