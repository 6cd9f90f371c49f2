//! Serializable generator descriptions for configuration files.

use hullforge_core::SpaceTag;
use serde::{Deserialize, Serialize};

use crate::broken::DropFirstGen;
use crate::convex::ConvexHullGen;
use crate::coordmin::CoordMinGen;
use crate::envelope::EnvelopeGen;
use crate::error::GeneratorError;
use crate::halfplane::HalfPlaneGen;
use crate::integral::HullIntegral;
use crate::pareto::ParetoGen;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "generator", rename_all = "snake_case", deny_unknown_fields)]
pub enum GeneratorSpec {
    ConvexHull {
        dim: usize,
        #[serde(default)]
        anchor_radius: Option<f64>,
    },
    CoordMin,
    Pareto {
        dim: usize,
    },
    Envelope {
        d: usize,
        r: f64,
        beta: f64,
        #[serde(default)]
        grid: usize,
    },
    HalfPlane,
    DropFirst {
        space: SpaceTag,
    },
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<Box<dyn HullIntegral>, GeneratorError> {
        Ok(match self {
            GeneratorSpec::ConvexHull { dim, anchor_radius } => {
                let g = ConvexHullGen { dim: *dim, anchor_radius: *anchor_radius };
                g.validate()?;
                Box::new(g)
            }
            GeneratorSpec::CoordMin => Box::new(CoordMinGen),
            GeneratorSpec::Pareto { dim } => Box::new(ParetoGen::new(*dim)?),
            GeneratorSpec::Envelope { d, r, beta, grid } => {
                let mut g = EnvelopeGen::new(*d, *r, *beta)?;
                g.grid = *grid;
                Box::new(g)
            }
            GeneratorSpec::HalfPlane => Box::new(HalfPlaneGen),
            GeneratorSpec::DropFirst { space } => Box::new(DropFirstGen { space: *space }),
        })
    }

    /// Whether the generator has the prime property.
    pub fn is_prime(&self) -> bool {
        matches!(self, GeneratorSpec::Pareto { .. } | GeneratorSpec::Envelope { .. })
    }
}
