//! Poisson process simulation over structured intensity models.
//!
//! An [`IntensityModel`] describes the region, density and total mass of a
//! finite intensity measure `lambda`; [`sample_poisson`] draws a Poisson
//! process from it on a reproducible [`RngStream`]. Restricting the base
//! window of a functional band is part of `lambda` itself, so estimators stay
//! exactly unbiased for the simulated measure.

pub mod body;
pub mod error;
pub mod model;
pub mod rng;
pub mod sample;

pub use body::PlanarBody;
pub use error::SamplingError;
pub use model::{BoundaryFn, IntensityModel};
pub use rng::{mix64, RngStream};
pub use sample::{sample_iid, sample_poisson, sample_poisson_with, trimmed_resample};
