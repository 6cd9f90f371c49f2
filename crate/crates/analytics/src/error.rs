use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalyticsError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("quadrature for {what} did not converge: estimate {value}, error estimate {error}")]
    Numeric { what: String, value: f64, error: f64 },
}
