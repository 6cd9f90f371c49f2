use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SamplingError {
    #[error("invalid intensity model: {0}")]
    InvalidModel(String),
    #[error("integrand {integrand} has no integral routine under model {model}")]
    UnsupportedIntegrand { model: String, integrand: String },
    #[error(transparent)]
    Core(#[from] hullforge_core::CoreError),
}
