//! Intensity measures: region, density, total mass and analytic integrals.

use std::f64::consts::{PI, TAU};

use hullforge_core::{Integrand, SpacePoint, SpaceTag};
use serde::{Deserialize, Serialize};

use crate::body::PlanarBody;
use crate::error::SamplingError;

/// Upper boundary `phi` of a functional band.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundaryFn {
    Constant {
        value: f64,
    },
    /// `phi(s) = intercept + <gradient, s>`.
    Affine {
        intercept: f64,
        gradient: Vec<f64>,
    },
    /// `phi(s) = height - slope |s - center|`.
    Tent {
        center: Vec<f64>,
        height: f64,
        slope: f64,
    },
}

impl BoundaryFn {
    pub fn eval(&self, s: &[f64]) -> f64 {
        match self {
            BoundaryFn::Constant { value } => *value,
            BoundaryFn::Affine { intercept, gradient } => {
                intercept + gradient.iter().zip(s).map(|(g, x)| g * x).sum::<f64>()
            }
            BoundaryFn::Tent { center, height, slope } => {
                let r = center.iter().zip(s).map(|(c, x)| (x - c) * (x - c)).sum::<f64>().sqrt();
                height - slope * r
            }
        }
    }

    /// Lipschitz constant of `phi`.
    pub fn lipschitz(&self) -> f64 {
        match self {
            BoundaryFn::Constant { .. } => 0.0,
            BoundaryFn::Affine { gradient, .. } => gradient.iter().map(|g| g * g).sum::<f64>().sqrt(),
            BoundaryFn::Tent { slope, .. } => slope.abs(),
        }
    }

    fn dim(&self) -> Option<usize> {
        match self {
            BoundaryFn::Constant { .. } => None,
            BoundaryFn::Affine { gradient, .. } => Some(gradient.len()),
            BoundaryFn::Tent { center, .. } => Some(center.len()),
        }
    }

    /// Coordinates (per axis) where `phi` has a kink inside the window.
    fn kinks(&self, axis: usize) -> Vec<f64> {
        match self {
            BoundaryFn::Tent { center, .. } => vec![center[axis]],
            _ => Vec::new(),
        }
    }
}

/// A Poisson intensity measure `lambda`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum IntensityModel {
    /// `rate` times Lebesgue measure on the box `[lo, hi]` in dimension 1-3.
    UniformBox { lo: Vec<f64>, hi: Vec<f64>, rate: f64 },
    /// `rate` times Lebesgue measure on a planar convex body.
    UniformConvexBody { body: PlanarBody, rate: f64 },
    /// `rate` times Lebesgue measure on `{inner <= |x| <= outer}` in the plane.
    UniformAnnulus { inner: f64, outer: f64, rate: f64 },
    /// `rate` times Lebesgue measure on `{(s, u): s in window, 0 <= u <= phi(s)}`.
    HoelderBand {
        lo: Vec<f64>,
        hi: Vec<f64>,
        phi: BoundaryFn,
        /// Hoelder constant of `phi` for the exponent `beta`.
        r_prime: f64,
        beta: f64,
        rate: f64,
    },
    /// `rate` times `d theta du` on lines with `h_K(theta) <= u <= h_L(theta)`.
    LinesBand { inner: PlanarBody, outer: PlanarBody, rate: f64 },
    /// `rate` times Lebesgue measure on `[a, inf)`; simulation is truncated at
    /// `horizon`, integrals cover the whole half-line.
    HalfLine { a: f64, rate: f64, horizon: f64 },
}

fn box_volume(lo: &[f64], hi: &[f64]) -> f64 {
    lo.iter().zip(hi).map(|(a, b)| b - a).product()
}

fn check_box(lo: &[f64], hi: &[f64]) -> Result<(), SamplingError> {
    if lo.is_empty() || lo.len() > 3 || lo.len() != hi.len() {
        return Err(SamplingError::InvalidModel("box needs matching bounds of dimension 1-3".into()));
    }
    if lo.iter().zip(hi).any(|(a, b)| !(a.is_finite() && b.is_finite() && a < b)) {
        return Err(SamplingError::InvalidModel("box bounds must satisfy lo < hi".into()));
    }
    Ok(())
}

fn check_rate(rate: f64) -> Result<(), SamplingError> {
    if rate.is_finite() && rate >= 0.0 {
        Ok(())
    } else {
        Err(SamplingError::InvalidModel(format!("rate {rate} must be finite and non-negative")))
    }
}

/// Adaptive integration over `[a, b]` split at the given interior breakpoints.
pub(crate) fn integrate_1d<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, breaks: &[f64]) -> f64 {
    let mut pts: Vec<f64> = std::iter::once(a)
        .chain(breaks.iter().copied().filter(|x| *x > a && *x < b))
        .chain(std::iter::once(b))
        .collect();
    pts.sort_by(f64::total_cmp);
    pts.windows(2).map(|w| quadrature::integrate(&f, w[0], w[1], 1e-14).integral).sum()
}

impl IntensityModel {
    pub fn space(&self) -> SpaceTag {
        match self {
            IntensityModel::UniformBox { lo, .. } => SpaceTag::Euclid { dim: lo.len() as u8 },
            IntensityModel::UniformConvexBody { .. } | IntensityModel::UniformAnnulus { .. } => {
                SpaceTag::Euclid { dim: 2 }
            }
            IntensityModel::HoelderBand { lo, .. } => SpaceTag::Param { dim: lo.len() as u8 },
            IntensityModel::LinesBand { .. } => SpaceTag::Line,
            IntensityModel::HalfLine { .. } => SpaceTag::Euclid { dim: 1 },
        }
    }

    pub fn rate(&self) -> f64 {
        match self {
            IntensityModel::UniformBox { rate, .. }
            | IntensityModel::UniformConvexBody { rate, .. }
            | IntensityModel::UniformAnnulus { rate, .. }
            | IntensityModel::HoelderBand { rate, .. }
            | IntensityModel::LinesBand { rate, .. }
            | IntensityModel::HalfLine { rate, .. } => *rate,
        }
    }

    /// The same model with a different rate `t`.
    pub fn with_rate(&self, t: f64) -> Self {
        let mut m = self.clone();
        match &mut m {
            IntensityModel::UniformBox { rate, .. }
            | IntensityModel::UniformConvexBody { rate, .. }
            | IntensityModel::UniformAnnulus { rate, .. }
            | IntensityModel::HoelderBand { rate, .. }
            | IntensityModel::LinesBand { rate, .. }
            | IntensityModel::HalfLine { rate, .. } => *rate = t,
        }
        m
    }

    pub fn validate(&self) -> Result<(), SamplingError> {
        check_rate(self.rate())?;
        match self {
            IntensityModel::UniformBox { lo, hi, .. } => check_box(lo, hi),
            IntensityModel::UniformConvexBody { body, .. } => body.validate(),
            IntensityModel::UniformAnnulus { inner, outer, .. } => {
                if *inner >= 0.0 && inner < outer && outer.is_finite() {
                    Ok(())
                } else {
                    Err(SamplingError::InvalidModel("annulus needs 0 <= inner < outer".into()))
                }
            }
            IntensityModel::HoelderBand { lo, hi, phi, r_prime, beta, .. } => {
                check_box(lo, hi)?;
                if let Some(d) = phi.dim() {
                    if d != lo.len() {
                        return Err(SamplingError::InvalidModel("boundary function dimension mismatch".into()));
                    }
                }
                if !(*beta > 0.0 && *beta <= 1.0) {
                    return Err(SamplingError::InvalidModel(format!("beta {beta} outside (0, 1]")));
                }
                // A Lipschitz function on a window of diameter D is beta-Hoelder
                // with constant L * D^{1 - beta}.
                let diam = lo.iter().zip(hi).map(|(a, b)| (b - a) * (b - a)).sum::<f64>().sqrt();
                let needed = phi.lipschitz() * diam.powf(1.0 - beta);
                if *r_prime < needed * (1.0 - 1e-12) {
                    return Err(SamplingError::InvalidModel(format!(
                        "Hoelder constant {r_prime} below the required {needed}"
                    )));
                }
                if self.corners_and_kinks().iter().any(|s| phi.eval(s) < 0.0) {
                    return Err(SamplingError::InvalidModel("boundary function negative on window".into()));
                }
                Ok(())
            }
            IntensityModel::LinesBand { inner, outer, .. } => {
                inner.validate()?;
                outer.validate()?;
                // Containment of the origin in K and K in L, checked on a fine angle grid.
                let ok = (0..720).all(|i| {
                    let th = TAU * i as f64 / 720.0;
                    let (k, l) = (inner.support(th), outer.support(th));
                    k > 0.0 && k <= l
                });
                if ok {
                    Ok(())
                } else {
                    Err(SamplingError::InvalidModel("lines band needs 0 in int K and K inside L".into()))
                }
            }
            IntensityModel::HalfLine { a, horizon, .. } => {
                if *a > 0.0 && horizon > a && horizon.is_finite() {
                    Ok(())
                } else {
                    Err(SamplingError::InvalidModel("half-line needs 0 < a < horizon".into()))
                }
            }
        }
    }

    fn corners_and_kinks(&self) -> Vec<Vec<f64>> {
        let IntensityModel::HoelderBand { lo, hi, phi, .. } = self else {
            return Vec::new();
        };
        let d = lo.len();
        let mut out = Vec::new();
        for mask in 0..(1usize << d) {
            out.push((0..d).map(|k| if mask & (1 << k) != 0 { hi[k] } else { lo[k] }).collect());
        }
        if let BoundaryFn::Tent { center, .. } = phi {
            out.push(center.clone());
        }
        out
    }

    /// Total mass `lambda(X)` of the simulated region.
    pub fn total_mass(&self) -> f64 {
        let t = self.rate();
        match self {
            IntensityModel::UniformBox { lo, hi, .. } => t * box_volume(lo, hi),
            IntensityModel::UniformConvexBody { body, .. } => t * body.area(),
            IntensityModel::UniformAnnulus { inner, outer, .. } => t * PI * (outer * outer - inner * inner),
            IntensityModel::HoelderBand { .. } => t * self.window_integral(|_, phi| phi),
            IntensityModel::LinesBand { inner, outer, .. } => t * (outer.perimeter() - inner.perimeter()),
            IntensityModel::HalfLine { a, horizon, .. } => t * (horizon - a),
        }
    }

    /// `sup phi` over the window of a functional band.
    pub fn phi_max(&self) -> f64 {
        match self {
            IntensityModel::HoelderBand { phi, .. } => {
                self.corners_and_kinks().iter().map(|s| phi.eval(s)).fold(0.0, f64::max)
            }
            _ => 0.0,
        }
    }

    /// `int_window g(s, phi(s)) ds` for a functional band (d = 1 or 2).
    pub fn window_integral<G: Fn(&[f64], f64) -> f64>(&self, g: G) -> f64 {
        let IntensityModel::HoelderBand { lo, hi, phi, .. } = self else {
            return 0.0;
        };
        match lo.len() {
            1 => integrate_1d(|s| g(&[s], phi.eval(&[s])), lo[0], hi[0], &phi.kinks(0)),
            2 => {
                let kx = phi.kinks(0);
                let ky = phi.kinks(1);
                integrate_1d(|x| integrate_1d(|y| g(&[x, y], phi.eval(&[x, y])), lo[1], hi[1], &ky), lo[0], hi[0], &kx)
            }
            _ => {
                // Midpoint rule for d = 3.
                let n = 64usize;
                let h: Vec<f64> = (0..3).map(|k| (hi[k] - lo[k]) / n as f64).collect();
                let mut acc = 0.0;
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            let s = [
                                lo[0] + (i as f64 + 0.5) * h[0],
                                lo[1] + (j as f64 + 0.5) * h[1],
                                lo[2] + (k as f64 + 0.5) * h[2],
                            ];
                            acc += g(&s, phi.eval(&s));
                        }
                    }
                }
                acc * h.iter().product::<f64>()
            }
        }
    }

    /// `F = int f d(lambda)` in closed form or by adaptive quadrature.
    pub fn integrate(&self, f: &Integrand) -> Result<f64, SamplingError> {
        let t = self.rate();
        let unsupported =
            || SamplingError::UnsupportedIntegrand { model: self.name().into(), integrand: format!("{f:?}") };
        match self {
            IntensityModel::UniformBox { .. } | IntensityModel::UniformConvexBody { .. } => {
                f.as_constant().map(|c| c * self.total_mass()).ok_or_else(unsupported)
            }
            IntensityModel::UniformAnnulus { inner, outer, .. } => {
                if let Some(c) = f.as_constant() {
                    return Ok(c * self.total_mass());
                }
                match f {
                    Integrand::RadialPower { beta, w } if *beta > 0.0 => {
                        Ok(t * TAU * w * (outer.powf(*beta) - inner.powf(*beta)))
                    }
                    Integrand::Scaled(c, inner_f) => Ok(c * self.integrate(inner_f)?),
                    _ => Err(unsupported()),
                }
            }
            IntensityModel::HoelderBand { .. } => {
                let v = self.window_integral(|s, phi| {
                    let top = SpacePoint::param(s, phi).expect("finite boundary value");
                    f.height_integral(&top)
                });
                Ok(t * v)
            }
            IntensityModel::LinesBand { inner, outer, .. } => {
                let mut breaks = inner.support_breakpoints();
                breaks.extend(outer.support_breakpoints());
                let v = integrate_1d(
                    |th| {
                        let hi = SpacePoint::line(th, outer.support(th)).expect("finite support");
                        let lo = SpacePoint::line(th, inner.support(th)).expect("finite support");
                        f.height_integral(&hi) - f.height_integral(&lo)
                    },
                    0.0,
                    TAU,
                    &breaks,
                );
                Ok(t * v)
            }
            IntensityModel::HalfLine { a, rate, .. } => f.tail_integral(*a).map(|v| rate * v).ok_or_else(unsupported),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            IntensityModel::UniformBox { .. } => "uniform_box",
            IntensityModel::UniformConvexBody { .. } => "uniform_convex_body",
            IntensityModel::UniformAnnulus { .. } => "uniform_annulus",
            IntensityModel::HoelderBand { .. } => "hoelder_band",
            IntensityModel::LinesBand { .. } => "lines_band",
            IntensityModel::HalfLine { .. } => "half_line",
        }
    }
}
