//! Depth profiles `f_i(u) = int |f(s, phi(s) - u)|^i ds` of an integrand on
//! a functional band.

use std::fmt;
use std::sync::Arc;

use hullforge_core::{Integrand, SpacePoint};
use hullforge_sampling::IntensityModel;

use crate::error::AnalyticsError;

type ProfileFn = Arc<dyn Fn(usize, f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Kind {
    Closure(ProfileFn),
    /// Values at `u_k = k h`, linearly interpolated.
    Table {
        h: f64,
        values: [Vec<f64>; 4],
    },
}

/// The profiles `f_1, ..., f_4` over depths `0 <= u <= support`; they vanish
/// beyond `support`.
#[derive(Clone)]
pub struct DepthProfiles {
    support: f64,
    kinks: Vec<f64>,
    kind: Kind,
}

impl fmt::Debug for DepthProfiles {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.kind {
            Kind::Closure(_) => "closure".to_string(),
            Kind::Table { values, .. } => format!("table({})", values[0].len()),
        };
        f.debug_struct("DepthProfiles").field("support", &self.support).field("kind", &kind).finish()
    }
}

/// Roots of `phi(s) = u` in `[lo, hi]` found on a scan grid and refined by
/// bisection.
fn level_crossings<P: Fn(f64) -> f64>(phi: &P, u: f64, lo: f64, hi: f64) -> Vec<f64> {
    const CELLS: usize = 64;
    let mut roots = Vec::new();
    let h = (hi - lo) / CELLS as f64;
    for k in 0..CELLS {
        let (mut a, mut b) = (lo + k as f64 * h, lo + (k + 1) as f64 * h);
        let (fa, fb) = (phi(a) - u, phi(b) - u);
        if fa == 0.0 {
            roots.push(a);
        }
        if fa * fb < 0.0 {
            for _ in 0..80 {
                let m = 0.5 * (a + b);
                if (phi(m) - u) * fa > 0.0 {
                    a = m;
                } else {
                    b = m;
                }
            }
            roots.push(0.5 * (a + b));
        }
    }
    roots
}

impl DepthProfiles {
    /// Profiles given by `f(i, u)`, `i = 1..=4`; `kinks` lists depths where a
    /// profile is not smooth.
    pub fn from_fn<F>(support: f64, kinks: Vec<f64>, f: F) -> Self
    where
        F: Fn(usize, f64) -> f64 + Send + Sync + 'static,
    {
        Self { support, kinks, kind: Kind::Closure(Arc::new(f)) }
    }

    /// Identically zero profiles.
    pub fn zero() -> Self {
        Self::from_fn(0.0, Vec::new(), |_, _| 0.0)
    }

    /// Tabulates the profiles of `f` on a functional band at `nodes` equally
    /// spaced depths in `[0, max phi]`.
    pub fn from_band(model: &IntensityModel, f: &Integrand, nodes: usize) -> Result<Self, AnalyticsError> {
        let IntensityModel::HoelderBand { lo, hi, phi, .. } = model else {
            return Err(AnalyticsError::Domain(format!("depth profiles need a functional band, got {}", model.name())));
        };
        if nodes < 2 {
            return Err(AnalyticsError::Domain("at least two profile nodes are needed".into()));
        }
        let support = model.phi_max();
        let h = support / (nodes - 1) as f64;
        let mut values: [Vec<f64>; 4] = Default::default();
        for k in 0..nodes {
            let u = k as f64 * h;
            let p = profile_at(lo, hi, |s| phi.eval(s), f, u);
            for i in 0..4 {
                values[i].push(p[i]);
            }
        }
        let kinks = table_kinks(&values, h);
        Ok(Self { support, kinks, kind: Kind::Table { h, values } })
    }

    pub fn support(&self) -> f64 {
        self.support
    }

    pub fn kinks(&self) -> &[f64] {
        &self.kinks
    }

    /// `f_i(u)` for `i in 1..=4` and `u >= 0`.
    pub fn eval(&self, i: usize, u: f64) -> f64 {
        assert!((1..=4).contains(&i), "profile index {i} outside 1..=4");
        if !(0.0..=self.support).contains(&u) {
            return 0.0;
        }
        match &self.kind {
            Kind::Closure(f) => f(i, u),
            Kind::Table { h, values } => {
                let v = &values[i - 1];
                let x = u / h;
                let k = (x.floor() as usize).min(v.len() - 2);
                let w = x - k as f64;
                (1.0 - w) * v[k] + w * v[k + 1]
            }
        }
    }
}

/// Nodes where a tabulated profile bends much more sharply than its
/// surroundings, which marks a kink of the underlying profile.
fn table_kinks(values: &[Vec<f64>; 4], h: f64) -> Vec<f64> {
    let mut out = Vec::new();
    for v in values {
        let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let d2: Vec<f64> = (1..v.len().saturating_sub(1)).map(|k| (v[k + 1] - 2.0 * v[k] + v[k - 1]).abs()).collect();
        for (j, &d) in d2.iter().enumerate() {
            let far = |o: isize| d2.get((j as isize + o) as usize).copied().unwrap_or(0.0);
            if d > 1e-12 * scale && d > 16.0 * far(-3).max(far(3)) {
                out.push((j + 1) as f64 * h);
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

/// `[f_1(u), ..., f_4(u)]` for a band over the box `[lo, hi]`.
fn profile_at<P: Fn(&[f64]) -> f64>(lo: &[f64], hi: &[f64], phi: P, f: &Integrand, u: f64) -> [f64; 4] {
    let g = |s: &[f64]| -> f64 {
        let top = phi(s);
        if top < u {
            return 0.0;
        }
        let x = SpacePoint::param(s, top - u).expect("finite band point");
        f.eval(&x).abs()
    };
    let mut out = [0.0; 4];
    if lo.len() == 1 {
        let phi1 = |s: f64| phi(&[s]);
        let mut pts = vec![lo[0], hi[0]];
        pts.extend(level_crossings(&phi1, u, lo[0], hi[0]));
        pts.sort_by(f64::total_cmp);
        for w in pts.windows(2) {
            let mid = 0.5 * (w[0] + w[1]);
            if phi1(mid) < u {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                *o += quadrature::integrate(|s| g(&[s]).powi(i as i32 + 1), w[0], w[1], 1e-14).integral;
            }
        }
        return out;
    }
    let n = if lo.len() == 2 { 256 } else { 48 };
    let h: Vec<f64> = lo.iter().zip(hi).map(|(a, b)| (b - a) / n as f64).collect();
    let mut idx = vec![0usize; lo.len()];
    let mut s = vec![0.0; lo.len()];
    loop {
        for k in 0..lo.len() {
            s[k] = lo[k] + (idx[k] as f64 + 0.5) * h[k];
        }
        let v = g(&s);
        let mut p = 1.0;
        for o in out.iter_mut() {
            p *= v;
            *o += p;
        }
        let mut k = 0;
        loop {
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
            k += 1;
            if k == lo.len() {
                let cell: f64 = h.iter().product();
                return out.map(|o| o * cell);
            }
        }
    }
}
