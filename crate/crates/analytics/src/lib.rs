//! Closed forms and theoretical bounds that simulation results are checked
//! against: the expected number of coordinate minima, the mean-width target,
//! and for the Hoelder envelope scenario the void-probability bounds, the
//! two-sided variance bounds and the terms of the Wasserstein bound for the
//! standardised estimator.

pub mod closed;
pub mod error;
pub mod hoelder;
pub mod profile;
mod quad;

pub use closed::{coordmin_exact_card, coordmin_expected_card, kappa, meanwidth_target};
pub use error::AnalyticsError;
pub use hoelder::{
    clt_bound_terms, clt_bound_terms_with, hoelder_h_bounds, hoelder_pair_bound, hoelder_variance_bounds,
    CltBoundTerms, HoelderScenarioParams,
};
pub use profile::DepthProfiles;
