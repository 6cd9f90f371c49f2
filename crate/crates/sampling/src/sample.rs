//! Poisson samplers for every intensity model.

use std::f64::consts::TAU;

use hullforge_core::{HullGenerator, PointPattern, SpacePoint};
use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::SamplingError;
use crate::model::IntensityModel;
use crate::rng::RngStream;

fn poisson_count<R: Rng + ?Sized>(mass: f64, rng: &mut R) -> Result<usize, SamplingError> {
    if mass <= 0.0 {
        return Ok(0);
    }
    let dist = Poisson::new(mass).map_err(|e| SamplingError::InvalidModel(format!("total mass {mass}: {e}")))?;
    Ok(dist.sample(rng) as usize)
}

fn uniform_in<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

fn max_norm(body: &crate::body::PlanarBody) -> f64 {
    use crate::body::PlanarBody;
    match body {
        PlanarBody::Disk { center, radius } => center[0].hypot(center[1]) + radius,
        PlanarBody::Polygon { vertices } => vertices.iter().map(|v| v[0].hypot(v[1])).fold(0.0, f64::max),
    }
}

/// Draws one point from the normalised intensity of `model`.
fn draw_point<R: Rng + ?Sized>(model: &IntensityModel, phi_max: f64, rng: &mut R) -> SpacePoint {
    match model {
        IntensityModel::UniformBox { lo, hi, .. } => {
            let x: Vec<f64> = lo.iter().zip(hi).map(|(a, b)| uniform_in(rng, *a, *b)).collect();
            SpacePoint::euclid(&x).expect("finite box coordinates")
        }
        IntensityModel::UniformConvexBody { body, .. } => {
            let (lo, hi) = body.bbox();
            loop {
                let x = [uniform_in(rng, lo[0], hi[0]), uniform_in(rng, lo[1], hi[1])];
                if body.contains(x) {
                    return SpacePoint::xy(x[0], x[1]);
                }
            }
        }
        IntensityModel::UniformAnnulus { inner, outer, .. } => {
            let r = uniform_in(rng, inner * inner, outer * outer).sqrt();
            let a = TAU * rng.random::<f64>();
            SpacePoint::xy(r * a.cos(), r * a.sin())
        }
        IntensityModel::HoelderBand { lo, hi, phi, .. } => loop {
            let s: Vec<f64> = lo.iter().zip(hi).map(|(a, b)| uniform_in(rng, *a, *b)).collect();
            let u = phi_max * rng.random::<f64>();
            if u <= phi.eval(&s) {
                return SpacePoint::param(&s, u).expect("finite band point");
            }
        },
        IntensityModel::LinesBand { inner, outer, .. } => {
            let top = max_norm(outer);
            loop {
                let theta = TAU * rng.random::<f64>();
                let u = top * rng.random::<f64>();
                if u >= inner.support(theta) && u <= outer.support(theta) {
                    return SpacePoint::line(theta, u).expect("finite line");
                }
            }
        }
        IntensityModel::HalfLine { a, horizon, .. } => {
            SpacePoint::euclid(&[uniform_in(rng, *a, *horizon)]).expect("finite point")
        }
    }
}

/// Simulates a Poisson process with intensity `model` on the given stream.
///
/// The count is Poisson with the model's total mass; points are then drawn
/// independently from the normalised intensity. Functional bands are sampled
/// on `0 <= u <= phi(s)` only; half-lines up to the model horizon.
pub fn sample_poisson(model: &IntensityModel, stream: &RngStream) -> Result<PointPattern, SamplingError> {
    let mut rng = stream.rng();
    sample_poisson_with(model, &mut rng)
}

/// [`sample_poisson`] driven by an explicit generator.
pub fn sample_poisson_with<R: Rng + ?Sized>(
    model: &IntensityModel,
    rng: &mut R,
) -> Result<PointPattern, SamplingError> {
    model.validate()?;
    let n = poisson_count(model.total_mass(), rng)?;
    let phi_max = model.phi_max();
    let points: Vec<SpacePoint> = (0..n).map(|_| draw_point(model, phi_max, rng)).collect();
    Ok(PointPattern::from_points(model.space(), points)?)
}

/// `n` independent points from the normalised intensity of `model`.
pub fn sample_iid<R: Rng + ?Sized>(
    model: &IntensityModel,
    n: usize,
    rng: &mut R,
) -> Result<PointPattern, SamplingError> {
    model.validate()?;
    if model.total_mass() <= 0.0 && n > 0 {
        return Err(SamplingError::InvalidModel("cannot draw points from a null measure".into()));
    }
    let phi_max = model.phi_max();
    let points: Vec<SpacePoint> = (0..n).map(|_| draw_point(model, phi_max, rng)).collect();
    Ok(PointPattern::from_points(model.space(), points)?)
}

/// A fresh Poisson sample from `model` thinned to the hull `[observed]`,
/// which realises a Poisson process with intensity `lambda` restricted to
/// `[observed]`.
pub fn trimmed_resample<G: HullGenerator + ?Sized>(
    model: &IntensityModel,
    gen: &G,
    observed: &PointPattern,
    stream: &RngStream,
) -> Result<PointPattern, SamplingError> {
    let fresh = sample_poisson(model, stream)?;
    if observed.is_empty() {
        return Ok(PointPattern::empty(model.space()));
    }
    Ok(fresh.restrict(|x| gen.hull_contains(observed, x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::BoundaryFn;

    #[test]
    fn zero_rate_is_empty() {
        let m = IntensityModel::UniformBox { lo: vec![0.0, 0.0], hi: vec![1.0, 1.0], rate: 0.0 };
        assert!(sample_poisson(&m, &RngStream::new(1, 0)).unwrap().is_empty());
    }

    #[test]
    fn samples_lie_in_region() {
        let band = IntensityModel::HoelderBand {
            lo: vec![0.0],
            hi: vec![1.0],
            phi: BoundaryFn::Affine { intercept: 0.5, gradient: vec![0.5] },
            r_prime: 0.5,
            beta: 1.0,
            rate: 500.0,
        };
        let p = sample_poisson(&band, &RngStream::new(3, 1)).unwrap();
        assert!(p.mass() > 300);
        for x in p.support() {
            let SpacePoint::Param { s, u } = x else { panic!() };
            let s0 = s.as_slice()[0];
            assert!((0.0..=1.0).contains(&s0) && *u >= 0.0 && *u <= 0.5 + 0.5 * s0);
        }
        let an = IntensityModel::UniformAnnulus { inner: 0.3, outer: 1.0, rate: 200.0 };
        for x in sample_poisson(&an, &RngStream::new(3, 2)).unwrap().support() {
            let r = x.coords().unwrap()[0].hypot(x.coords().unwrap()[1]);
            assert!((0.3 - 1e-12..=1.0 + 1e-12).contains(&r));
        }
    }
}
