//! Replication harness and statistical checks.
//!
//! A JSON [`ExperimentConfig`] names a generator, an intensity model, an
//! integrand and a grid of intensities. [`run_replications`] simulates
//! independent Poisson samples on per-replication random streams and
//! aggregates the hull estimator, its variance estimate, boundary counts,
//! normality distances and rate fits; [`run_experiment`] adds the configured
//! pass/fail checks. [`markov_two_sample`] tests the strong Markov property
//! and [`run_axiom_suite`] verifies the generator axioms.
//!
//! Results do not depend on the number of worker threads: every replication
//! owns its stream, and aggregation happens in replication order with
//! pairwise summation.

pub mod axioms;
pub mod checks;
pub mod config;
pub mod error;
pub mod markov;
pub mod nested;
pub mod replicate;
pub mod scenario;
pub mod stats;

pub use axioms::{relint_oracle, run_axiom_suite, AxiomSuiteConfig, AxiomSuiteReport, GeneratorAxioms, OracleTally};
pub use checks::{evaluate, run_experiment, CheckOutcome, ExperimentReport};
pub use config::{
    CheckSpec, ExperimentConfig, IntegrandSpec, MarkovConfig, NestedConfig, TargetKeyword, TargetSpec, SCHEMA_VERSION,
};
pub use error::McError;
pub use markov::{markov_two_sample, markov_two_sample_with, MarkovMode, MarkovReport, MarkovRow, COORDINATES};
pub use nested::{nested_h_integral, Estimate, NestedEstimate};
pub use replicate::{run_replications, AnalyticBounds, CovarianceSummary, HigherMoment, ReplicationSummary, TSummary};
pub use scenario::{replication_stream, Scenario};
pub use stats::{
    covariance, kolmogorov_sf, ks_two_sample, mean, normality_diagnostics, pairwise_sum, rate_fit, Interval, KsTest,
    Moments, RateFit, Z99,
};
