//! A deliberately invalid generator used as a negative control.

use hullforge_core::{HullGenerator, Integrand, PointPattern, SpaceTag};
use hullforge_sampling::IntensityModel;
use serde::{Deserialize, Serialize};

use crate::error::GeneratorError;
use crate::integral::HullIntegral;

/// `boundary(mu)` = `mu` without its lexicographically first support point.
/// Violates idempotency whenever the support has two or more points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DropFirstGen {
    pub space: SpaceTag,
}

impl HullGenerator for DropFirstGen {
    fn name(&self) -> String {
        "drop_first".into()
    }

    fn space(&self) -> SpaceTag {
        self.space
    }

    fn boundary(&self, mu: &PointPattern) -> PointPattern {
        match mu.support().next() {
            Some(first) => mu.without_all(first),
            None => mu.clone(),
        }
    }
}

impl HullIntegral for DropFirstGen {
    fn hull_integral(&self, _mu: &PointPattern, model: &IntensityModel, _f: &Integrand) -> Result<f64, GeneratorError> {
        Err(GeneratorError::unsupported(self.name(), model.name(), "negative-control generator"))
    }
}
