//! The planar coordinate-minimum generator.

use hullforge_core::{HullGenerator, Integrand, PointPattern, SpacePoint, SpaceTag};
use hullforge_sampling::IntensityModel;
use serde::{Deserialize, Serialize};

use crate::error::GeneratorError;
use crate::integral::{keep_indices, p2, HullIntegral};

/// `boundary(mu)` keeps the point with the smallest first coordinate and the
/// point with the smallest second coordinate. Ties are broken
/// lexicographically, by `(x1, x2)` and `(x2, x1)` respectively.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordMinGen;

fn key_x(p: [f64; 2]) -> (f64, f64) {
    (p[0], p[1])
}

fn key_y(p: [f64; 2]) -> (f64, f64) {
    (p[1], p[0])
}

fn less(a: (f64, f64), b: (f64, f64)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1 < b.1)
}

impl CoordMinGen {
    /// Support indices of the min-x and min-y points.
    fn minima(mu: &PointPattern) -> Option<(usize, usize)> {
        if mu.is_empty() {
            return None;
        }
        let pts: Vec<[f64; 2]> = mu.support().map(p2).collect();
        let mut ix = 0;
        let mut iy = 0;
        for (i, p) in pts.iter().enumerate() {
            if less(key_x(*p), key_x(pts[ix])) {
                ix = i;
            }
            if less(key_y(*p), key_y(pts[iy])) {
                iy = i;
            }
        }
        Some((ix, iy))
    }
}

impl HullGenerator for CoordMinGen {
    fn name(&self) -> String {
        "coord_min".into()
    }

    fn space(&self) -> SpaceTag {
        SpaceTag::Euclid { dim: 2 }
    }

    fn boundary(&self, mu: &PointPattern) -> PointPattern {
        match Self::minima(mu) {
            None => mu.clone(),
            Some((ix, iy)) if ix == iy => keep_indices(mu, &[ix]),
            Some((ix, iy)) => keep_indices(mu, &[ix.min(iy), ix.max(iy)]),
        }
    }

    fn hull_contains(&self, mu: &PointPattern, x: &SpacePoint) -> bool {
        let Some((ix, iy)) = Self::minima(mu) else {
            return false;
        };
        let px = p2(&mu.entries()[ix].0);
        let py = p2(&mu.entries()[iy].0);
        let z = p2(x);
        less(key_x(px), key_x(z)) && less(key_y(py), key_y(z))
    }
}

impl HullIntegral for CoordMinGen {
    fn hull_integral(&self, mu: &PointPattern, model: &IntensityModel, f: &Integrand) -> Result<f64, GeneratorError> {
        let unsupported = |why: &str| GeneratorError::unsupported(self.name(), model.name(), why);
        let IntensityModel::UniformBox { lo, hi, rate } = model else {
            return Err(unsupported("coordinate minima integrate over a planar box"));
        };
        let c = f.as_constant().ok_or_else(|| unsupported("constant integrands only"))?;
        let Some((ix, iy)) = Self::minima(mu) else {
            return Ok(0.0);
        };
        let x1 = p2(&mu.entries()[ix].0)[0];
        let y2 = p2(&mu.entries()[iy].0)[1];
        let w = (hi[0] - x1.max(lo[0])).max(0.0);
        let h = (hi[1] - y2.max(lo[1])).max(0.0);
        Ok(rate * c * w * h)
    }
}
