use hullforge_core::CoreError;
use hullforge_sampling::SamplingError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeneratorError {
    #[error("generator {generator} cannot integrate over model {model}: {reason}")]
    Unsupported { generator: String, model: String, reason: String },
    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Sampling(#[from] SamplingError),
}

impl GeneratorError {
    pub(crate) fn unsupported(generator: String, model: &str, reason: impl Into<String>) -> Self {
        GeneratorError::Unsupported { generator, model: model.to_string(), reason: reason.into() }
    }
}
