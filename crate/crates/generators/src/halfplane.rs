//! The Poisson polytope generator on planar lines.
//!
//! A line point `(theta, u)` stands for the half-plane
//! `{x : <x, (cos theta, sin theta)> <= u}`; `P_mu` is the intersection of the
//! half-planes of `mu` and the boundary keeps the lines carrying an edge of
//! `P_mu` of positive length. Intersections are computed exactly, so
//! unbounded polytopes need no clipping window.

use std::f64::consts::{PI, TAU};

use hullforge_core::{HullGenerator, Integrand, PointPattern, SpacePoint, SpaceTag};
use hullforge_sampling::IntensityModel;
use serde::{Deserialize, Serialize};

use crate::error::GeneratorError;
use crate::geometry::EPS_GEOM;
use crate::integral::{keep_indices, quad, HullIntegral};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfPlaneGen;

fn line(x: &SpacePoint) -> (f64, f64) {
    match x {
        SpacePoint::Line { theta, offset } => (*theta, *offset),
        _ => panic!("half-plane generator needs line points"),
    }
}

/// The parameter interval `[lo, hi]` of the part of line `i` inside all
/// other half-planes, along `x(tau) = u_i e_i + tau e_i^perp`; `None` when
/// the line lies outside some parallel half-plane.
fn edge_interval(lines: &[(f64, f64)], i: usize) -> Option<(f64, f64)> {
    let (ti, ui) = lines[i];
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    let scale = lines.iter().map(|l| l.1).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    for (j, &(tj, uj)) in lines.iter().enumerate() {
        if j == i {
            continue;
        }
        let (a, c) = (tj - ti).sin_cos();
        if a == 0.0 {
            if ui * c > uj + EPS_GEOM * scale {
                return None;
            }
            continue;
        }
        let bound = (uj - ui * c) / a;
        if a > 0.0 {
            hi = hi.min(bound);
        } else {
            lo = lo.max(bound);
        }
    }
    Some((lo, hi))
}

/// Support indices of the lines carrying an edge of positive length.
fn facet_indices(lines: &[(f64, f64)]) -> Vec<usize> {
    let scale = lines.iter().map(|l| l.1).fold(1.0, f64::max);
    (0..lines.len())
        .filter(|&i| matches!(edge_interval(lines, i), Some((lo, hi)) if hi - lo > EPS_GEOM * scale))
        .collect()
}

/// The lines of `mu` supporting an edge of `P_mu`.
pub fn polytope_boundary(mu: &PointPattern) -> PointPattern {
    let lines: Vec<(f64, f64)> = mu.support().map(line).collect();
    keep_indices(mu, &facet_indices(&lines))
}

/// Support function of `P_mu`, `h(theta) = sup_{x in P_mu} <x, e_theta>`.
#[derive(Clone, Debug)]
pub struct PolytopeSupport {
    normals: Vec<f64>,
    vertices: Vec<[f64; 2]>,
    edges: Vec<(f64, f64)>,
}

impl PolytopeSupport {
    pub fn new(mu: &PointPattern) -> Self {
        let lines: Vec<(f64, f64)> = mu.support().map(line).collect();
        let mut normals: Vec<f64> = lines.iter().map(|l| l.0).collect();
        normals.sort_by(f64::total_cmp);
        normals.dedup();
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for i in facet_indices(&lines) {
            let (t, u) = lines[i];
            edges.push((t, u));
            let (lo, hi) = edge_interval(&lines, i).expect("facet line");
            let (s, c) = t.sin_cos();
            for tau in [lo, hi] {
                if tau.is_finite() {
                    vertices.push([u * c - tau * s, u * s + tau * c]);
                }
            }
        }
        Self { normals, vertices, edges }
    }

    /// Whether `e_theta` lies in the cone spanned by the normals, which is
    /// where the support function is finite.
    fn in_cone(&self, theta: f64) -> bool {
        let m = self.normals.len();
        if m == 0 {
            return false;
        }
        let k = self.normals.partition_point(|&a| a <= theta);
        let (prev, next) = if k == 0 {
            (self.normals[m - 1] - TAU, self.normals[0])
        } else if k == m {
            (self.normals[m - 1], self.normals[0] + TAU)
        } else {
            (self.normals[k - 1], self.normals[k])
        };
        prev == theta || next - prev < PI
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let theta = theta.rem_euclid(TAU);
        if !self.in_cone(theta) {
            return f64::INFINITY;
        }
        let (s, c) = theta.sin_cos();
        let from_vertices = self.vertices.iter().map(|v| v[0] * c + v[1] * s).fold(f64::NEG_INFINITY, f64::max);
        if from_vertices.is_finite() {
            return from_vertices;
        }
        // strips and half-planes: finite only along the edge normals
        self.edges.iter().map(|&(t, u)| u * (theta - t).cos()).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Angles where the support function may have a kink.
    pub fn breakpoints(&self) -> &[f64] {
        &self.normals
    }
}

impl HullGenerator for HalfPlaneGen {
    fn name(&self) -> String {
        "half_plane".into()
    }

    fn space(&self) -> SpaceTag {
        SpaceTag::Line
    }

    fn boundary(&self, mu: &PointPattern) -> PointPattern {
        polytope_boundary(mu)
    }

    /// A line is in the hull iff it meets `P_mu` in a set of zero length and
    /// is not a boundary line; lines through the origin fall back to the
    /// definition.
    fn hull_contains(&self, mu: &PointPattern, x: &SpacePoint) -> bool {
        let (theta, u) = line(x);
        if mu.is_empty() {
            return false;
        }
        if u == 0.0 {
            return hullforge_core::hull_contains_by_definition(self, mu, x);
        }
        if mu.contains(x) {
            return !polytope_boundary(mu).contains(x);
        }
        let mut lines: Vec<(f64, f64)> = mu.support().map(line).collect();
        lines.push((theta, u));
        let scale = lines.iter().map(|l| l.1).fold(1.0, f64::max);
        match edge_interval(&lines, lines.len() - 1) {
            None => true,
            Some((lo, hi)) => hi - lo <= EPS_GEOM * scale,
        }
    }
}

impl HullIntegral for HalfPlaneGen {
    /// `t int (f~(theta, h_L) - f~(theta, max(h_K, h_P)))_+ dtheta`.
    fn hull_integral(&self, mu: &PointPattern, model: &IntensityModel, f: &Integrand) -> Result<f64, GeneratorError> {
        let IntensityModel::LinesBand { inner, outer, rate } = model else {
            return Err(GeneratorError::unsupported(
                self.name(),
                model.name(),
                "polytopes integrate over a lines band",
            ));
        };
        if mu.is_empty() {
            return Ok(0.0);
        }
        let hp = PolytopeSupport::new(mu);
        let mut cuts: Vec<f64> = hp.breakpoints().to_vec();
        cuts.extend(inner.support_breakpoints());
        cuts.extend(outer.support_breakpoints());
        cuts.push(0.0);
        cuts.push(TAU);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let ft = |theta: f64, v: f64| f.height_integral(&SpacePoint::Line { theta, offset: v });
        let g = |theta: f64| {
            let top = outer.support(theta);
            let low = inner.support(theta).max(hp.eval(theta));
            if low >= top {
                0.0
            } else {
                ft(theta, top) - ft(theta, low)
            }
        };
        let total: f64 = cuts.windows(2).map(|w| quad(g, w[0], w[1], 4)).sum();
        Ok(rate * total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lines(ls: &[(f64, f64)]) -> PointPattern {
        PointPattern::from_points(SpaceTag::Line, ls.iter().map(|(t, u)| SpacePoint::line(*t, *u).unwrap())).unwrap()
    }

    #[test]
    fn square_and_redundant_line() {
        let sq = [(0.0, 1.0), (PI / 2.0, 1.0), (PI, 1.0), (1.5 * PI, 1.0)];
        let mu = lines(&sq);
        assert_eq!(polytope_boundary(&mu), mu);
        let mut more = sq.to_vec();
        more.push((PI / 4.0, 3.0));
        assert_eq!(polytope_boundary(&lines(&more)), mu);
        assert!(polytope_boundary(&lines(&[])).is_empty());
        let h = PolytopeSupport::new(&mu);
        assert!((h.eval(PI / 4.0) - 2f64.sqrt()).abs() < 1e-12);
        assert!((h.eval(0.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unbounded_polytopes() {
        let half = lines(&[(0.0, 1.0)]);
        let h = PolytopeSupport::new(&half);
        assert_eq!(h.eval(0.3), f64::INFINITY);
        assert!((h.eval(0.0) - 1.0).abs() < 1e-15);
        let wedge = lines(&[(0.0, 1.0), (PI / 2.0, 1.0)]);
        let h = PolytopeSupport::new(&wedge);
        assert!((h.eval(PI / 4.0) - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(h.eval(PI), f64::INFINITY);
    }

    #[test]
    fn hull_of_square_lines() {
        let mu = lines(&[(0.0, 1.0), (PI / 2.0, 1.0), (PI, 1.0), (1.5 * PI, 1.0)]);
        let g = HalfPlaneGen;
        assert!(g.hull_contains(&mu, &SpacePoint::line(PI / 4.0, 2.0).unwrap()));
        assert!(!g.hull_contains(&mu, &SpacePoint::line(PI / 4.0, 1.0).unwrap()));
        assert!(!g.hull_contains(&mu, &SpacePoint::line(0.0, 1.0).unwrap()));
        assert!(g.hull_contains(&mu, &SpacePoint::line(0.0, 1.5).unwrap()));
    }
}
