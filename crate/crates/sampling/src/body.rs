//! Planar convex bodies: disks and convex polygons.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::SamplingError;

/// A compact convex planar body.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum PlanarBody {
    Disk {
        center: [f64; 2],
        radius: f64,
    },
    /// Vertices in counter-clockwise order.
    Polygon {
        vertices: Vec<[f64; 2]>,
    },
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

impl PlanarBody {
    pub fn disk(radius: f64) -> Self {
        PlanarBody::Disk { center: [0.0, 0.0], radius }
    }

    pub fn square(lo: f64, hi: f64) -> Self {
        PlanarBody::Polygon { vertices: vec![[lo, lo], [hi, lo], [hi, hi], [lo, hi]] }
    }

    pub fn validate(&self) -> Result<(), SamplingError> {
        match self {
            PlanarBody::Disk { center, radius } => {
                if !(radius.is_finite() && *radius > 0.0 && center.iter().all(|c| c.is_finite())) {
                    return Err(SamplingError::InvalidModel(format!("bad disk radius {radius}")));
                }
            }
            PlanarBody::Polygon { vertices } => {
                let n = vertices.len();
                if n < 3 || vertices.iter().flatten().any(|c| !c.is_finite()) {
                    return Err(SamplingError::InvalidModel("polygon needs 3 finite vertices".into()));
                }
                for i in 0..n {
                    let c = cross(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
                    if c <= 0.0 {
                        return Err(SamplingError::InvalidModel(
                            "polygon must be strictly convex and counter-clockwise".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn area(&self) -> f64 {
        match self {
            PlanarBody::Disk { radius, .. } => PI * radius * radius,
            PlanarBody::Polygon { vertices } => {
                let n = vertices.len();
                0.5 * (0..n)
                    .map(|i| {
                        let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                        a[0] * b[1] - a[1] * b[0]
                    })
                    .sum::<f64>()
            }
        }
    }

    pub fn perimeter(&self) -> f64 {
        match self {
            PlanarBody::Disk { radius, .. } => TAU * radius,
            PlanarBody::Polygon { vertices } => {
                let n = vertices.len();
                (0..n)
                    .map(|i| {
                        let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                        (b[0] - a[0]).hypot(b[1] - a[1])
                    })
                    .sum()
            }
        }
    }

    /// Support function `h(theta) = max_{x in body} <x, (cos theta, sin theta)>`.
    pub fn support(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        match self {
            PlanarBody::Disk { center, radius } => center[0] * c + center[1] * s + radius,
            PlanarBody::Polygon { vertices } => {
                vertices.iter().map(|v| v[0] * c + v[1] * s).fold(f64::NEG_INFINITY, f64::max)
            }
        }
    }

    /// Angles in `[0, 2pi)` where the support function has a kink.
    pub fn support_breakpoints(&self) -> Vec<f64> {
        match self {
            PlanarBody::Disk { .. } => Vec::new(),
            PlanarBody::Polygon { vertices } => {
                let n = vertices.len();
                (0..n)
                    .map(|i| {
                        let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                        // outward normal of edge a -> b
                        (a[0] - b[0]).atan2(b[1] - a[1]).rem_euclid(TAU)
                    })
                    .collect()
            }
        }
    }

    pub fn contains(&self, x: [f64; 2]) -> bool {
        match self {
            PlanarBody::Disk { center, radius } => (x[0] - center[0]).hypot(x[1] - center[1]) <= *radius,
            PlanarBody::Polygon { vertices } => {
                let n = vertices.len();
                (0..n).all(|i| cross(vertices[i], vertices[(i + 1) % n], x) >= 0.0)
            }
        }
    }

    /// Axis-aligned bounding box `(lo, hi)`.
    pub fn bbox(&self) -> ([f64; 2], [f64; 2]) {
        match self {
            PlanarBody::Disk { center, radius } => {
                ([center[0] - radius, center[1] - radius], [center[0] + radius, center[1] + radius])
            }
            PlanarBody::Polygon { vertices } => {
                let mut lo = [f64::INFINITY; 2];
                let mut hi = [f64::NEG_INFINITY; 2];
                for v in vertices {
                    for k in 0..2 {
                        lo[k] = lo[k].min(v[k]);
                        hi[k] = hi[k].max(v[k]);
                    }
                }
                (lo, hi)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_measures() {
        let sq = PlanarBody::square(0.0, 1.0);
        sq.validate().unwrap();
        assert!((sq.area() - 1.0).abs() < 1e-15);
        assert!((sq.perimeter() - 4.0).abs() < 1e-15);
        assert!((sq.support(0.0) - 1.0).abs() < 1e-15);
        assert!((sq.support(PI) - 0.0).abs() < 1e-15);
        assert!(sq.contains([0.5, 0.5]));
        assert!(!sq.contains([1.5, 0.5]));
        let mut bps = sq.support_breakpoints();
        bps.sort_by(f64::total_cmp);
        let expect = [0.0, PI / 2.0, PI, 1.5 * PI];
        for (a, b) in bps.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12 || (a - b - TAU).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn cauchy_perimeter_formula() {
        let tri = PlanarBody::Polygon { vertices: vec![[-1.0, -0.5], [2.0, -0.2], [0.1, 1.3]] };
        tri.validate().unwrap();
        let n = 200_000;
        let h = TAU / n as f64;
        let integral: f64 = (0..n).map(|i| tri.support((i as f64 + 0.5) * h)).sum::<f64>() * h;
        assert!((integral - tri.perimeter()).abs() < 1e-8);
    }

    #[test]
    fn clockwise_polygon_is_rejected() {
        let p = PlanarBody::Polygon { vertices: vec![[0.0, 0.0], [0.0, 1.0], [1.0, 0.0]] };
        assert!(p.validate().is_err());
    }
}
