//! Hull integrals `int_[mu] f d(lambda)` shared by all generators.

use hullforge_core::{HullGenerator, Integrand, PointPattern, SpacePoint};
use hullforge_sampling::IntensityModel;

use crate::error::GeneratorError;

/// A generator whose hull can be integrated against an intensity model.
pub trait HullIntegral: HullGenerator {
    /// `int f d(lambda)` restricted to `[mu]`. Sets of `lambda`-measure zero,
    /// such as the excluded boundary atoms, are ignored.
    fn hull_integral(&self, mu: &PointPattern, model: &IntensityModel, f: &Integrand) -> Result<f64, GeneratorError>;
}

/// `lambda([mu])`.
pub fn hull_mass<G: HullIntegral + ?Sized>(
    gen: &G,
    mu: &PointPattern,
    model: &IntensityModel,
) -> Result<f64, GeneratorError> {
    gen.hull_integral(mu, model, &Integrand::Constant(1.0))
}

/// `int_[mu] f d(lambda)`.
pub fn hull_integral<G: HullIntegral + ?Sized>(
    gen: &G,
    mu: &PointPattern,
    model: &IntensityModel,
    f: &Integrand,
) -> Result<f64, GeneratorError> {
    if mu.space() != gen.space() || model.space() != gen.space() {
        return Err(GeneratorError::unsupported(
            gen.name(),
            model.name(),
            format!("ground spaces differ: pattern {}, model {}", mu.space(), model.space()),
        ));
    }
    gen.hull_integral(mu, model, f)
}

pub(crate) fn p2(x: &SpacePoint) -> [f64; 2] {
    let c = x.coords().expect("euclidean point");
    [c[0], c[1]]
}

pub(crate) fn p3(x: &SpacePoint) -> [f64; 3] {
    let c = x.coords().expect("euclidean point");
    [c[0], c[1], c[2]]
}

/// A pattern keeping the entries at the given support indices.
pub(crate) fn keep_indices(mu: &PointPattern, idx: &[usize]) -> PointPattern {
    let entries = idx.iter().map(|&i| mu.entries()[i]);
    PointPattern::from_entries(mu.space(), entries).expect("entries of a valid pattern")
}

/// Adaptive quadrature on `[a, b]`, split into `pieces` equal parts.
pub(crate) fn quad<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, pieces: usize) -> f64 {
    if b <= a {
        return 0.0;
    }
    let h = (b - a) / pieces as f64;
    (0..pieces)
        .map(|k| {
            let lo = a + k as f64 * h;
            let hi = if k + 1 == pieces { b } else { lo + h };
            quadrature::integrate(&f, lo, hi, 1e-13).integral
        })
        .sum()
}
