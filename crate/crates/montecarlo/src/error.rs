use hullforge_analytics::AnalyticsError;
use hullforge_core::CoreError;
use hullforge_estimators::EstimatorError;
use hullforge_generators::GeneratorError;
use hullforge_sampling::SamplingError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum McError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Sampling(#[from] SamplingError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Estimator(#[from] EstimatorError),
    #[error(transparent)]
    Analytics(#[from] AnalyticsError),
}

impl McError {
    /// Whether the error stems from the configuration rather than from a
    /// failed computation.
    pub fn is_config(&self) -> bool {
        !matches!(self, McError::Domain(_) | McError::Analytics(AnalyticsError::Numeric { .. }))
    }
}
