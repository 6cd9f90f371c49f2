//! Concrete hull generators.
//!
//! Each generator implements [`hullforge_core::HullGenerator`] with a direct
//! geometric membership test and [`HullIntegral`] for the exact (or
//! grid-quadrature) integral of an integrand over its hull:
//!
//! - [`ConvexHullGen`]: vertices of the convex hull in the plane or space,
//!   optionally anchored at a centred disk;
//! - [`CoordMinGen`]: the two coordinate minima of a planar pattern;
//! - [`ParetoGen`]: minimal points for the coordinatewise order;
//! - [`EnvelopeGen`]: atoms touching a Hoelder envelope;
//! - [`HalfPlaneGen`]: facet lines of a Poisson polytope;
//! - [`DropFirstGen`]: an invalid generator for negative controls.

pub mod broken;
pub mod convex;
pub mod coordmin;
pub mod corpus;
pub mod envelope;
pub mod error;
pub mod geometry;
pub mod halfplane;
pub mod integral;
pub mod pareto;
pub mod spec;

pub use broken::DropFirstGen;
pub use convex::{convex_hull_vertices, in_anchored_hull, ConvexHullGen};
pub use coordmin::CoordMinGen;
pub use corpus::{axiom_corpus, corpus_model, Corpus};
pub use envelope::EnvelopeGen;
pub use error::GeneratorError;
pub use geometry::EPS_GEOM;
pub use halfplane::{polytope_boundary, HalfPlaneGen, PolytopeSupport};
pub use integral::{hull_integral, hull_mass, HullIntegral};
pub use pareto::{dominated_volume, ParetoGen};
pub use spec::GeneratorSpec;
