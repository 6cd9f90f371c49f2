//! Convex-hull generators in the plane and in space, and the planar hull
//! anchored at a centred disk.

use std::f64::consts::{PI, TAU};

use hullforge_core::{HullGenerator, Integrand, PointPattern, SpacePoint, SpaceTag};
use hullforge_sampling::{IntensityModel, PlanarBody};
use serde::{Deserialize, Serialize};

use crate::error::GeneratorError;
use crate::geometry::{
    clip_box, clip_halfplane, hull2d, in_convex_polygon, polygon_area, triangle_integral, Hull3, EPS_GEOM, P2,
};
use crate::integral::{keep_indices, p2, p3, quad, HullIntegral};

/// Subdivision level of the triangle rule for non-constant integrands.
const TRIANGLE_LEVELS: usize = 16;

/// `boundary(mu)` = `mu` restricted to the vertices of `conv(supp mu)`, or of
/// `conv(L u supp mu)` for the disk `L` of radius `anchor_radius`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvexHullGen {
    pub dim: usize,
    #[serde(default)]
    pub anchor_radius: Option<f64>,
}

/// Indices of the extreme points of a point set in dimension 2 or 3, sorted.
pub fn convex_hull_vertices(points: &[Vec<f64>]) -> Vec<usize> {
    if points.is_empty() {
        return Vec::new();
    }
    match points[0].len() {
        2 => {
            let pts: Vec<P2> = points.iter().map(|p| [p[0], p[1]]).collect();
            let mut v = hull2d(&pts);
            v.sort_unstable();
            v
        }
        3 => {
            let pts: Vec<[f64; 3]> = points.iter().map(|p| [p[0], p[1], p[2]]).collect();
            Hull3::new(&pts).vertices
        }
        d => panic!("convex hulls are implemented for dimension 2 and 3, got {d}"),
    }
}

/// Whether `p` lies in `conv(L u others)`, `L` the centred disk of radius `r`.
///
/// Outside `L`, `p` is covered iff every direction `u` with `<p, u> > r` has
/// some `q` with `<q - p, u> >= 0`; the directions form an arc and each `q`
/// covers a closed half circle of directions.
pub fn in_anchored_hull<I: IntoIterator<Item = P2>>(p: P2, others: I, r: f64) -> bool {
    let rho = p[0].hypot(p[1]);
    if rho <= r * (1.0 + EPS_GEOM) {
        return true;
    }
    let alpha = (r / rho).acos();
    let width = 2.0 * alpha;
    let base = p[1].atan2(p[0]) - alpha;
    let len = PI + 2.0 * EPS_GEOM;
    let mut iv: Vec<(f64, f64)> = Vec::new();
    for q in others {
        let d = [q[0] - p[0], q[1] - p[1]];
        if d == [0.0, 0.0] {
            continue;
        }
        let a = (d[1].atan2(d[0]) - PI / 2.0 - EPS_GEOM - base).rem_euclid(TAU);
        for s in [a, a - TAU] {
            let (lo, hi) = (s.max(0.0), (s + len).min(width));
            if lo <= hi {
                iv.push((lo, hi));
            }
        }
    }
    iv.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut reach = 0.0;
    for (lo, hi) in iv {
        if lo > reach + EPS_GEOM {
            return false;
        }
        reach = f64::max(reach, hi);
    }
    reach >= width - EPS_GEOM
}

/// One piece of the boundary of `conv(L u V)`, traversed counter-clockwise.
#[derive(Clone, Copy, Debug)]
enum Piece {
    Segment(P2, P2),
    Arc(f64),
}

fn anchored_pieces(vertices: &[P2], r: f64) -> Vec<Piece> {
    let mut v: Vec<(f64, f64, P2)> = vertices
        .iter()
        .map(|p| {
            let rho = p[0].hypot(p[1]);
            (p[1].atan2(p[0]).rem_euclid(TAU), (r / rho).acos(), *p)
        })
        .collect();
    v.sort_by(|a, b| a.0.total_cmp(&b.0));
    let m = v.len();
    if m == 0 {
        return vec![Piece::Arc(TAU)];
    }
    let mut out = Vec::with_capacity(3 * m);
    for i in 0..m {
        let (fi, ai, pi) = v[i];
        let (fj, aj, pj) = v[(i + 1) % m];
        let gap = if m == 1 { TAU } else { (fj - fi).rem_euclid(TAU) };
        if m > 1 && ai + aj >= gap {
            out.push(Piece::Segment(pi, pj));
        } else {
            let ti = [r * (fi + ai).cos(), r * (fi + ai).sin()];
            let tj = [r * (fj - aj).cos(), r * (fj - aj).sin()];
            out.push(Piece::Segment(pi, ti));
            out.push(Piece::Arc(gap - ai - aj));
            out.push(Piece::Segment(tj, pj));
        }
    }
    out
}

/// `int w rho(psi)^beta dpsi` over the polar angles swept by a segment.
fn segment_radial_integral(a: P2, b: P2, beta: f64, w: f64) -> f64 {
    let cr = a[0] * b[1] - a[1] * b[0];
    if cr == 0.0 {
        return 0.0;
    }
    if beta == 2.0 {
        return w * cr;
    }
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len = dx.hypot(dy);
    // unit normal pointing away from the origin
    let (nx, ny) = (dy / len, -dx / len);
    let h = a[0] * nx + a[1] * ny;
    let psi_n = ny.atan2(nx);
    let pa = a[1].atan2(a[0]);
    let span = (b[1].atan2(b[0]) - pa).rem_euclid(TAU);
    quad(|s| w * (h / (pa + s - psi_n).cos()).powf(beta), 0.0, span, 4)
}

impl ConvexHullGen {
    pub fn new(dim: usize) -> Result<Self, GeneratorError> {
        if dim == 2 || dim == 3 {
            Ok(Self { dim, anchor_radius: None })
        } else {
            Err(GeneratorError::InvalidConfig(format!("convex hulls need dimension 2 or 3, got {dim}")))
        }
    }

    /// The planar hull of `L u supp mu` for the centred disk `L` of radius `r`.
    pub fn anchored(r: f64) -> Result<Self, GeneratorError> {
        if r.is_finite() && r > 0.0 {
            Ok(Self { dim: 2, anchor_radius: Some(r) })
        } else {
            Err(GeneratorError::InvalidConfig(format!("anchor radius {r} must be positive")))
        }
    }

    pub fn validate(&self) -> Result<(), GeneratorError> {
        match self.anchor_radius {
            None => Self::new(self.dim).map(|_| ()),
            Some(r) if self.dim == 2 => Self::anchored(r).map(|_| ()),
            Some(_) => Err(GeneratorError::InvalidConfig("anchored hulls are planar".into())),
        }
    }

    /// Support indices of the vertices.
    fn vertex_indices(&self, mu: &PointPattern) -> Vec<usize> {
        let n = mu.support_len();
        if n == 0 {
            return Vec::new();
        }
        match (self.dim, self.anchor_radius) {
            (2, None) => {
                let pts: Vec<P2> = mu.support().map(p2).collect();
                let mut v = hull2d(&pts);
                v.sort_unstable();
                v
            }
            (2, Some(r)) => {
                let pts: Vec<P2> = mu.support().map(p2).collect();
                (0..n)
                    .filter(|&i| {
                        let others = (0..n).filter(|&j| j != i).map(|j| pts[j]);
                        !in_anchored_hull(pts[i], others, r)
                    })
                    .collect()
            }
            _ => {
                let pts: Vec<[f64; 3]> = mu.support().map(p3).collect();
                Hull3::new(&pts).vertices
            }
        }
    }

    fn hull_polygon(&self, mu: &PointPattern) -> Vec<P2> {
        let pts: Vec<P2> = mu.support().map(p2).collect();
        hull2d(&pts).into_iter().map(|i| pts[i]).collect()
    }
}

impl HullGenerator for ConvexHullGen {
    fn name(&self) -> String {
        match self.anchor_radius {
            None => format!("convex_hull_{}d", self.dim),
            Some(r) => format!("anchored_convex_hull(r={r})"),
        }
    }

    fn space(&self) -> SpaceTag {
        SpaceTag::Euclid { dim: self.dim as u8 }
    }

    fn boundary(&self, mu: &PointPattern) -> PointPattern {
        keep_indices(mu, &self.vertex_indices(mu))
    }

    fn hull_contains(&self, mu: &PointPattern, x: &SpacePoint) -> bool {
        let verts = self.vertex_indices(mu);
        if verts.iter().any(|&i| mu.entries()[i].0 == *x) {
            return false;
        }
        match (self.dim, self.anchor_radius) {
            (2, None) => in_convex_polygon(&self.hull_polygon(mu), p2(x)),
            (2, Some(r)) => {
                let vs = verts.iter().map(|&i| p2(&mu.entries()[i].0));
                in_anchored_hull(p2(x), vs, r)
            }
            _ => {
                if mu.is_empty() {
                    return false;
                }
                let pts: Vec<[f64; 3]> = mu.support().map(p3).collect();
                Hull3::new(&pts).contains(p3(x))
            }
        }
    }
}

fn polygon_integral(poly: &[P2], rate: f64, f: &Integrand) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    if let Some(c) = f.as_constant() {
        return rate * c * polygon_area(poly);
    }
    let g = |p: P2| f.eval(&SpacePoint::xy(p[0], p[1]));
    let o = poly[0];
    let v: f64 = (1..poly.len() - 1).map(|k| triangle_integral(o, poly[k], poly[k + 1], TRIANGLE_LEVELS, &g)).sum();
    rate * v
}

impl HullIntegral for ConvexHullGen {
    fn hull_integral(&self, mu: &PointPattern, model: &IntensityModel, f: &Integrand) -> Result<f64, GeneratorError> {
        let unsupported = |why: &str| GeneratorError::unsupported(self.name(), model.name(), why);
        if let Some(r) = self.anchor_radius {
            let IntensityModel::UniformAnnulus { inner, outer, rate } = model else {
                return Err(unsupported("anchored hulls integrate over an annulus"));
            };
            if (inner - r).abs() > 1e-12 * r {
                return Err(unsupported("annulus inner radius must equal the anchor radius"));
            }
            let verts: Vec<P2> = self.vertex_indices(mu).iter().map(|&i| p2(&mu.entries()[i].0)).collect();
            if verts.iter().any(|p| p[0].hypot(p[1]) > outer * (1.0 + EPS_GEOM)) {
                return Err(unsupported("pattern leaves the outer disk"));
            }
            let pieces = anchored_pieces(&verts, r);
            let radial = |beta: f64, w: f64| {
                let mut acc = -TAU * w * r.powf(beta);
                for p in &pieces {
                    acc += match *p {
                        Piece::Segment(a, b) => segment_radial_integral(a, b, beta, w),
                        Piece::Arc(d) => w * r.powf(beta) * d,
                    };
                }
                acc
            };
            return integrate_radial(f, &radial).map(|v| rate * v).ok_or_else(|| unsupported("integrand"));
        }
        match (self.dim, model) {
            (2, IntensityModel::UniformBox { lo, hi, rate }) if lo.len() == 2 => {
                let poly = clip_box(&self.hull_polygon(mu), lo, hi);
                Ok(polygon_integral(&poly, *rate, f))
            }
            (2, IntensityModel::UniformConvexBody { body, rate }) => {
                let mut poly = self.hull_polygon(mu);
                match body {
                    PlanarBody::Polygon { vertices } => {
                        let n = vertices.len();
                        for i in 0..n {
                            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                            let nrm = [b[1] - a[1], a[0] - b[0]];
                            poly = clip_halfplane(&poly, nrm, nrm[0] * a[0] + nrm[1] * a[1]);
                        }
                    }
                    PlanarBody::Disk { center, radius } => {
                        let out =
                            poly.iter().any(|p| (p[0] - center[0]).hypot(p[1] - center[1]) > radius * (1.0 + EPS_GEOM));
                        if out {
                            return Err(unsupported("pattern leaves the disk"));
                        }
                    }
                }
                Ok(polygon_integral(&poly, *rate, f))
            }
            (3, IntensityModel::UniformBox { lo, hi, rate }) if lo.len() == 3 => {
                let c = f.as_constant().ok_or_else(|| unsupported("spatial hulls take constant integrands"))?;
                if mu.is_empty() {
                    return Ok(0.0);
                }
                let pts: Vec<[f64; 3]> = mu.support().map(p3).collect();
                let inside = pts.iter().all(|p| (0..3).all(|k| p[k] >= lo[k] && p[k] <= hi[k]));
                if !inside {
                    return Err(unsupported("pattern leaves the box"));
                }
                Ok(rate * c * Hull3::new(&pts).volume())
            }
            _ => Err(unsupported("no integration route")),
        }
    }
}

/// Dispatches constant and radial-power integrands to `radial(beta, w)`,
/// which integrates `w beta |x|^{beta - 2}` over the region.
fn integrate_radial<R: Fn(f64, f64) -> f64>(f: &Integrand, radial: &R) -> Option<f64> {
    match f {
        // the constant 2 * w |x|^0 with w = c / 2
        Integrand::Constant(c) => Some(radial(2.0, c / 2.0)),
        Integrand::RadialPower { beta, w } if *beta > 0.0 => Some(radial(*beta, *w)),
        Integrand::Scaled(c, inner) => integrate_radial(inner, radial).map(|v| c * v),
        _ => None,
    }
}
