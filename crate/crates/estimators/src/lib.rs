//! Poisson hull estimators.
//!
//! Given a generator and a Poisson sample `eta` with intensity `lambda`,
//! [`hull_estimate`] evaluates `hat F = int_[eta] f d(lambda) + int f d(boundary eta)`,
//! an unbiased estimator of `F = int f d(lambda)` that only depends on the
//! boundary of `eta`, together with the unbiased variance estimator
//! `int f^2 d(boundary eta)`. [`ks_error`] evaluates the estimation error in
//! its Kabanov-Skorohod integral form, and [`hull_estimate_k`] the
//! conditional U-statistics estimating `F^k` for product integrands.

pub mod error;
pub mod estimate;
pub mod higher;

pub use error::EstimatorError;
pub use estimate::{hull_estimate, ks_error, HullEstimate};
pub use higher::{convex_moment_closed_form, hull_estimate_k};
