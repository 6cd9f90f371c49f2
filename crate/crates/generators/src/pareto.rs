//! The Pareto (minimal points) generator.

use hullforge_core::{HullGenerator, Integrand, PointPattern, SpacePoint, SpaceTag};
use hullforge_sampling::IntensityModel;
use serde::{Deserialize, Serialize};

use crate::error::GeneratorError;
use crate::integral::{keep_indices, HullIntegral};

/// `boundary(mu)` keeps the support points that dominate no other support
/// point, where `y` dominates `x` when `y >= x` coordinatewise and `y != x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParetoGen {
    pub dim: usize,
}

fn dominates(y: &[f64], x: &[f64]) -> bool {
    y != x && y.iter().zip(x).all(|(a, b)| a >= b)
}

impl ParetoGen {
    pub fn new(dim: usize) -> Result<Self, GeneratorError> {
        if (1..=hullforge_core::MAX_DIM).contains(&dim) {
            Ok(Self { dim })
        } else {
            Err(GeneratorError::InvalidConfig(format!("Pareto dimension {dim} outside 1..=3")))
        }
    }

    fn minimal(mu: &PointPattern) -> Vec<usize> {
        let pts: Vec<&[f64]> = mu.support().map(|p| p.coords().expect("euclidean")).collect();
        (0..pts.len()).filter(|&i| !pts.iter().any(|q| dominates(pts[i], q))).collect()
    }
}

/// Lebesgue volume of `union_i [y_i, hi] intersected with [lo, hi]`.
pub fn dominated_volume(points: &[Vec<f64>], lo: &[f64], hi: &[f64]) -> f64 {
    let d = lo.len();
    if points.is_empty() {
        return 0.0;
    }
    let clamp: Vec<Vec<f64>> = points.iter().map(|p| (0..d).map(|k| p[k].clamp(lo[k], hi[k])).collect()).collect();
    // coordinate compression: cell [c_k, c_{k+1}] per axis is covered iff some
    // point lies below its lower corner
    let axes: Vec<Vec<f64>> = (0..d)
        .map(|k| {
            let mut c: Vec<f64> = clamp.iter().map(|p| p[k]).collect();
            c.push(hi[k]);
            c.sort_by(f64::total_cmp);
            c.dedup();
            c
        })
        .collect();
    let mut vol = 0.0;
    let mut idx = vec![0usize; d];
    'outer: loop {
        if (0..d).all(|k| idx[k] + 1 < axes[k].len()) {
            let corner: Vec<f64> = (0..d).map(|k| axes[k][idx[k]]).collect();
            if clamp.iter().any(|p| (0..d).all(|k| p[k] <= corner[k])) {
                vol += (0..d).map(|k| axes[k][idx[k] + 1] - axes[k][idx[k]]).product::<f64>();
            }
        }
        for k in 0..d {
            idx[k] += 1;
            if idx[k] + 1 < axes[k].len() {
                continue 'outer;
            }
            idx[k] = 0;
        }
        break;
    }
    vol
}

impl HullGenerator for ParetoGen {
    fn name(&self) -> String {
        format!("pareto_{}d", self.dim)
    }

    fn space(&self) -> SpaceTag {
        SpaceTag::Euclid { dim: self.dim as u8 }
    }

    fn boundary(&self, mu: &PointPattern) -> PointPattern {
        keep_indices(mu, &Self::minimal(mu))
    }

    fn hull_contains(&self, mu: &PointPattern, x: &SpacePoint) -> bool {
        let z = x.coords().expect("euclidean");
        mu.support().any(|y| dominates(z, y.coords().expect("euclidean")))
    }
}

impl HullIntegral for ParetoGen {
    fn hull_integral(&self, mu: &PointPattern, model: &IntensityModel, f: &Integrand) -> Result<f64, GeneratorError> {
        let unsupported = |why: &str| GeneratorError::unsupported(self.name(), model.name(), why);
        let minimal: Vec<Vec<f64>> =
            Self::minimal(mu).into_iter().map(|i| mu.entries()[i].0.coords().expect("euclidean").to_vec()).collect();
        match model {
            IntensityModel::UniformBox { lo, hi, rate } => {
                let c = f.as_constant().ok_or_else(|| unsupported("constant integrands only"))?;
                Ok(rate * c * dominated_volume(&minimal, lo, hi))
            }
            IntensityModel::HalfLine { a, rate, .. } if self.dim == 1 => {
                let Some(z) = minimal.first().map(|p| p[0].max(*a)) else {
                    return Ok(0.0);
                };
                f.tail_integral(z)
                    .map(|v| rate * v)
                    .ok_or_else(|| unsupported("the half-line needs a closed-form tail integral"))
            }
            _ => Err(unsupported("Pareto hulls integrate over boxes and half-lines")),
        }
    }
}
