//! Geometry kernels: planar and spatial convex hulls with a relative tolerance.
//!
//! Near-degenerate configurations are resolved with `EPS_GEOM`: a point within
//! a relative distance `EPS_GEOM` of a segment, edge or facet is treated as
//! lying on it, and hence is not a vertex.

use std::collections::BTreeSet;

/// Relative tolerance for collinearity, coplanarity and containment tests.
pub const EPS_GEOM: f64 = 1e-9;

pub type P2 = [f64; 2];
pub type P3 = [f64; 3];

#[inline]
pub fn cross2(o: P2, a: P2, b: P2) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

#[inline]
fn sub2(a: P2, b: P2) -> P2 {
    [a[0] - b[0], a[1] - b[1]]
}

#[inline]
fn norm2(a: P2) -> f64 {
    a[0].hypot(a[1])
}

/// `b` is not strictly left of the directed line `o -> a`, up to tolerance.
#[inline]
fn not_left(o: P2, a: P2, b: P2) -> bool {
    cross2(o, a, b) <= EPS_GEOM * norm2(sub2(a, o)) * norm2(sub2(b, o))
}

/// Indices of the extreme points of a planar point set, in counter-clockwise
/// order starting from the lexicographically smallest point. Collinear points
/// on edges are excluded; duplicate coordinates are reported once.
pub fn hull2d(points: &[P2]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&i, &j| points[i][0].total_cmp(&points[j][0]).then(points[i][1].total_cmp(&points[j][1])));
    idx.dedup_by(|a, b| points[*a] == points[*b]);
    if idx.len() <= 2 {
        return idx;
    }
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2 && not_left(points[lower[lower.len() - 2]], points[lower[lower.len() - 1]], points[i]) {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2 && not_left(points[upper[upper.len() - 2]], points[upper[upper.len() - 1]], points[i]) {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && points[lower[0]] == points[lower[1]] {
        lower.pop();
    }
    lower
}

/// Whether `x` lies in the convex polygon with counter-clockwise vertices
/// `poly` (a segment or a point for fewer than three vertices), up to tolerance.
pub fn in_convex_polygon(poly: &[P2], x: P2) -> bool {
    match poly.len() {
        0 => false,
        1 => poly[0] == x,
        2 => on_segment(poly[0], poly[1], x),
        n => (0..n).all(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            cross2(a, b, x) >= -EPS_GEOM * norm2(sub2(b, a)) * norm2(sub2(x, a))
        }),
    }
}

/// `x` on the closed segment `[a, b]` up to tolerance.
pub fn on_segment(a: P2, b: P2, x: P2) -> bool {
    let ab = sub2(b, a);
    let ax = sub2(x, a);
    let l2 = ab[0] * ab[0] + ab[1] * ab[1];
    let c = ab[0] * ax[1] - ab[1] * ax[0];
    let d = ab[0] * ax[0] + ab[1] * ax[1];
    let tol = EPS_GEOM * l2.sqrt() * norm2(ax).max(l2.sqrt());
    c.abs() <= tol && d >= -tol && d <= l2 + tol
}

/// Shoelace area of a counter-clockwise polygon.
pub fn polygon_area(poly: &[P2]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    0.5 * (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum::<f64>()
}

/// Clips a convex counter-clockwise polygon to the half-plane `<n, x> <= c`.
pub fn clip_halfplane(poly: &[P2], n: P2, c: f64) -> Vec<P2> {
    let m = poly.len();
    let mut out = Vec::with_capacity(m + 1);
    let val = |p: P2| n[0] * p[0] + n[1] * p[1] - c;
    for i in 0..m {
        let (a, b) = (poly[i], poly[(i + 1) % m]);
        let (va, vb) = (val(a), val(b));
        if va <= 0.0 {
            out.push(a);
        }
        if (va < 0.0 && vb > 0.0) || (va > 0.0 && vb < 0.0) {
            let t = va / (va - vb);
            out.push([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
        }
    }
    out
}

/// Clips a convex polygon to the box `[lo, hi]`.
pub fn clip_box(poly: &[P2], lo: &[f64], hi: &[f64]) -> Vec<P2> {
    let mut p = poly.to_vec();
    p = clip_halfplane(&p, [1.0, 0.0], hi[0]);
    p = clip_halfplane(&p, [-1.0, 0.0], -lo[0]);
    p = clip_halfplane(&p, [0.0, 1.0], hi[1]);
    clip_halfplane(&p, [0.0, -1.0], -lo[1])
}

/// `int_T g` over a triangle by the centroid rule on an `n x n` subdivision.
pub fn triangle_integral<G: Fn(P2) -> f64>(a: P2, b: P2, c: P2, n: usize, g: &G) -> f64 {
    let area = 0.5 * cross2(a, b, c).abs();
    if area == 0.0 {
        return 0.0;
    }
    let nf = n as f64;
    let at = |i: f64, j: f64| -> P2 {
        [a[0] + (b[0] - a[0]) * i / nf + (c[0] - a[0]) * j / nf, a[1] + (b[1] - a[1]) * i / nf + (c[1] - a[1]) * j / nf]
    };
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..(n - i) {
            let (fi, fj) = (i as f64, j as f64);
            // upward sub-triangle
            let p = at(fi + 1.0 / 3.0, fj + 1.0 / 3.0);
            acc += g(p);
            if i + j + 1 < n {
                let q = at(fi + 2.0 / 3.0, fj + 2.0 / 3.0);
                acc += g(q);
            }
        }
    }
    acc * area / (nf * nf)
}

#[inline]
fn sub3(a: P3, b: P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
fn dot3(a: P3, b: P3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
fn cross3(a: P3, b: P3) -> P3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

#[inline]
fn norm3(a: P3) -> f64 {
    dot3(a, a).sqrt()
}

/// A supporting plane `<normal, x> = offset` with the point set on the side
/// `<normal, x> <= offset`, and the ordered vertex cycle of its facet.
#[derive(Clone, Debug)]
struct Facet {
    normal: P3,
    offset: f64,
    cycle: Vec<usize>,
}

/// Affine dimension and extreme points of a spatial point set.
#[derive(Clone, Debug)]
pub struct Hull3 {
    points: Vec<P3>,
    scale: f64,
    /// Affine dimension of the point set (0-3).
    pub dim: usize,
    /// Sorted indices of the extreme points.
    pub vertices: Vec<usize>,
    facets: Vec<Facet>,
    /// Plane basis `(origin, e1, e2, normal)` when `dim == 2`.
    plane: Option<(P3, P3, P3, P3)>,
    /// Ordered vertex cycle inside `plane` when `dim == 2`.
    plane_cycle: Vec<usize>,
}

fn orthonormal_basis(n: P3) -> (P3, P3) {
    let nn = norm3(n);
    let n = [n[0] / nn, n[1] / nn, n[2] / nn];
    let t = if n[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let e1 = cross3(n, t);
    let l1 = norm3(e1);
    let e1 = [e1[0] / l1, e1[1] / l1, e1[2] / l1];
    let e2 = cross3(n, e1);
    (e1, e2)
}

impl Hull3 {
    /// Builds the hull by enumerating supporting planes through point triples.
    /// Cost is cubic in the number of points per plane test, intended for the
    /// small patterns of verification runs.
    pub fn new(points: &[P3]) -> Self {
        let mut distinct: Vec<usize> = (0..points.len()).collect();
        distinct.sort_by(|&i, &j| {
            let (a, b) = (points[i], points[j]);
            a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])).then(a[2].total_cmp(&b[2]))
        });
        distinct.dedup_by(|a, b| points[*a] == points[*b]);
        let scale = distinct.iter().map(|&i| norm3(sub3(points[i], points[distinct[0]]))).fold(0.0, f64::max);
        let mut hull = Hull3 {
            points: points.to_vec(),
            scale,
            dim: 0,
            vertices: Vec::new(),
            facets: Vec::new(),
            plane: None,
            plane_cycle: Vec::new(),
        };
        let n = distinct.len();
        if n <= 1 {
            hull.vertices = distinct;
            return hull;
        }
        let p = |i: usize| points[distinct[i]];

        // Collinear check: find the farthest pair direction.
        let a = p(0);
        let far = (1..n).max_by(|&i, &j| norm3(sub3(p(i), a)).total_cmp(&norm3(sub3(p(j), a)))).unwrap();
        let dir = sub3(p(far), a);
        let third = (1..n).find(|&i| norm3(cross3(dir, sub3(p(i), a))) > EPS_GEOM * norm3(dir) * norm3(sub3(p(i), a)));
        let Some(k) = third else {
            hull.dim = 1;
            let t: Vec<f64> = (0..n).map(|i| dot3(sub3(p(i), a), dir)).collect();
            let lo = (0..n).min_by(|&i, &j| t[i].total_cmp(&t[j])).unwrap();
            let hi = (0..n).max_by(|&i, &j| t[i].total_cmp(&t[j])).unwrap();
            let mut v = vec![distinct[lo], distinct[hi]];
            v.sort_unstable();
            hull.vertices = v;
            return hull;
        };
        let normal = cross3(dir, sub3(p(k), a));
        let tol_plane = EPS_GEOM * norm3(normal) * scale;
        let coplanar = (0..n).all(|i| dot3(normal, sub3(p(i), a)).abs() <= tol_plane);
        if coplanar {
            hull.dim = 2;
            let (e1, e2) = orthonormal_basis(normal);
            let proj: Vec<P2> = (0..n)
                .map(|i| {
                    let d = sub3(p(i), a);
                    [dot3(d, e1), dot3(d, e2)]
                })
                .collect();
            let cyc: Vec<usize> = hull2d(&proj).into_iter().map(|i| distinct[i]).collect();
            let mut v = cyc.clone();
            v.sort_unstable();
            hull.vertices = v;
            hull.plane = Some((a, e1, e2, normal));
            hull.plane_cycle = cyc;
            return hull;
        }
        hull.dim = 3;
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut verts: BTreeSet<usize> = BTreeSet::new();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let nrm = cross3(sub3(p(j), p(i)), sub3(p(k), p(i)));
                    let nl = norm3(nrm);
                    if nl <= EPS_GEOM * norm3(sub3(p(j), p(i))) * norm3(sub3(p(k), p(i))) {
                        continue;
                    }
                    let tol = EPS_GEOM * nl * scale;
                    let c = dot3(nrm, p(i));
                    let (mut above, mut below) = (false, false);
                    let mut on: Vec<usize> = Vec::new();
                    for m in 0..n {
                        let v = dot3(nrm, p(m)) - c;
                        if v > tol {
                            above = true;
                        } else if v < -tol {
                            below = true;
                        } else {
                            on.push(m);
                        }
                        if above && below {
                            break;
                        }
                    }
                    if above && below {
                        continue;
                    }
                    if !seen.insert(on.clone()) {
                        continue;
                    }
                    let sign = if above { -1.0 } else { 1.0 };
                    let out_n = [sign * nrm[0] / nl, sign * nrm[1] / nl, sign * nrm[2] / nl];
                    let (e1, e2) = orthonormal_basis(out_n);
                    let proj: Vec<P2> = on
                        .iter()
                        .map(|&m| {
                            let d = sub3(p(m), p(i));
                            [dot3(d, e1), dot3(d, e2)]
                        })
                        .collect();
                    let cycle: Vec<usize> = hull2d(&proj).into_iter().map(|q| distinct[on[q]]).collect();
                    verts.extend(cycle.iter().copied());
                    hull.facets.push(Facet { normal: out_n, offset: dot3(out_n, p(i)), cycle });
                }
            }
        }
        hull.vertices = verts.into_iter().collect();
        hull
    }

    /// Whether `x` lies in the closed convex hull, up to tolerance.
    pub fn contains(&self, x: P3) -> bool {
        let pts = &self.points;
        match self.dim {
            0 => self.vertices.first().is_some_and(|&i| pts[i] == x),
            1 => {
                let (a, b) = (pts[self.vertices[0]], pts[self.vertices[1]]);
                let ab = sub3(b, a);
                let ax = sub3(x, a);
                let l = norm3(ab);
                let tol = EPS_GEOM * l * norm3(ax).max(l);
                norm3(cross3(ab, ax)) <= tol && dot3(ab, ax) >= -tol && dot3(ab, ax) <= l * l + tol
            }
            2 => {
                let (o, e1, e2, n) = self.plane.expect("planar hull");
                let d = sub3(x, o);
                if dot3(n, d).abs() > EPS_GEOM * norm3(n) * self.scale.max(norm3(d)) {
                    return false;
                }
                let poly: Vec<P2> = self
                    .plane_cycle
                    .iter()
                    .map(|&i| {
                        let q = sub3(pts[i], o);
                        [dot3(q, e1), dot3(q, e2)]
                    })
                    .collect();
                in_convex_polygon(&poly, [dot3(d, e1), dot3(d, e2)])
            }
            _ => {
                let tol = EPS_GEOM * self.scale.max(norm3(x));
                self.facets.iter().all(|f| dot3(f.normal, x) - f.offset <= tol)
            }
        }
    }

    /// Volume of the hull (zero below dimension 3).
    pub fn volume(&self) -> f64 {
        if self.dim < 3 {
            return 0.0;
        }
        let pts = &self.points;
        let nv = self.vertices.len() as f64;
        let mut c = [0.0; 3];
        for &i in &self.vertices {
            for k in 0..3 {
                c[k] += pts[i][k] / nv;
            }
        }
        self.facets
            .iter()
            .map(|f| {
                let cyc = &f.cycle;
                if cyc.len() < 3 {
                    return 0.0;
                }
                let mut area_vec = [0.0; 3];
                let o = pts[cyc[0]];
                for w in 1..cyc.len() - 1 {
                    let cr = cross3(sub3(pts[cyc[w]], o), sub3(pts[cyc[w + 1]], o));
                    for k in 0..3 {
                        area_vec[k] += 0.5 * cr[k];
                    }
                }
                let area = norm3(area_vec);
                let h = f.offset - dot3(f.normal, c);
                area * h / 3.0
            })
            .sum()
    }
}
