use hullforge_core::CoreError;
use hullforge_generators::GeneratorError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EstimatorError {
    #[error("unsupported estimator: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Core(#[from] CoreError),
}
