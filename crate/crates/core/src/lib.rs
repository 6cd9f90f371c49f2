//! Counting measures, hull generators and the calculus of the hull indicator.
//!
//! A *generator* maps a finite counting measure `mu` to a sub-measure
//! `boundary(mu)`; its *hull* `[mu]` is the set of points whose addition
//! leaves the boundary unchanged. This crate provides the data model
//! ([`PointPattern`], [`SpacePoint`]), the [`HullGenerator`] contract, the
//! difference operators of `H_x(mu) = 1{x not in [mu]}`, and a reusable
//! axiom checker.

pub mod axioms;
pub mod error;
pub mod generator;
pub mod integrand;
pub mod pattern;
pub mod point;

pub use axioms::{check_axioms, check_axioms_with, check_prime, AxiomConfig, AxiomReport, CheckCount, PrimeReport};
pub use error::CoreError;
pub use generator::{
    cyclic_product, first_difference_closed, first_difference_h, h_bar, h_indicator, higher_difference_closed,
    higher_difference_h, hull_contains_by_definition, prime_holds_at, HullGenerator,
};
pub use integrand::{CustomFn, Integrand};
pub use pattern::PointPattern;
pub use point::{Coords, SpacePoint, SpaceTag, MAX_DIM};
