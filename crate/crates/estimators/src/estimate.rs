//! The first-order estimator and its error representation.

use hullforge_core::{h_indicator, Integrand, PointPattern};
use hullforge_generators::{hull_integral, HullIntegral};
use hullforge_sampling::IntensityModel;
use serde::{Deserialize, Serialize};

use crate::error::EstimatorError;

/// `hat F = int_[mu] f d(lambda) + int f d(boundary mu)` with its parts and
/// the variance estimate `int f^2 d(boundary mu)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HullEstimate {
    pub value: f64,
    pub hull_term: f64,
    pub boundary_term: f64,
    pub variance_estimate: f64,
    /// Boundary atoms counted with multiplicity.
    pub boundary_count: u64,
}

/// Evaluates the Poisson hull estimator of `int f d(lambda)` on `mu`.
pub fn hull_estimate<G: HullIntegral + ?Sized>(
    gen: &G,
    model: &IntensityModel,
    f: &Integrand,
    mu: &PointPattern,
) -> Result<HullEstimate, EstimatorError> {
    let hull_term = hull_integral(gen, mu, model, f)?;
    let boundary = gen.boundary(mu);
    let (mut boundary_term, mut variance_estimate) = (0.0, 0.0);
    for (x, m) in boundary.entries() {
        let v = f.eval(x);
        boundary_term += f64::from(*m) * v;
        variance_estimate += f64::from(*m) * v * v;
    }
    Ok(HullEstimate {
        value: hull_term + boundary_term,
        hull_term,
        boundary_term,
        variance_estimate,
        boundary_count: boundary.mass(),
    })
}

/// The Kabanov-Skorohod form of the estimation error,
/// `sum_{z in mu} f(z) H_z(mu - delta_z) - int f(z) H_z(mu) lambda(dz)`,
/// with the compensator taken as `f_true` minus the hull integral.
///
/// For patterns with repeated atoms the sum runs over atoms with
/// multiplicity; the identity with [`hull_estimate`] is only claimed for
/// patterns without repetitions.
pub fn ks_error<G: HullIntegral + ?Sized>(
    gen: &G,
    model: &IntensityModel,
    f: &Integrand,
    mu: &PointPattern,
    f_true: f64,
) -> Result<f64, EstimatorError> {
    let mut jumps = 0.0;
    for (z, m) in mu.entries() {
        let rest = mu.without_one(z).expect("atom of mu");
        if h_indicator(gen, &rest, z)? == 1 {
            jumps += f64::from(*m) * f.eval(z);
        }
    }
    let compensator = f_true - hull_integral(gen, mu, model, f)?;
    Ok(jumps - compensator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hullforge_core::{SpacePoint, SpaceTag};
    use hullforge_generators::{ConvexHullGen, ParetoGen};

    fn square_and_centre() -> PointPattern {
        let pts = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.5, 0.5)];
        PointPattern::from_points(SpaceTag::Euclid { dim: 2 }, pts.iter().map(|p| SpacePoint::xy(p.0, p.1))).unwrap()
    }

    fn unit_box(rate: f64) -> IntensityModel {
        IntensityModel::UniformBox { lo: vec![0.0, 0.0], hi: vec![1.0, 1.0], rate }
    }

    #[test]
    fn square_corners_example() {
        let g = ConvexHullGen::new(2).unwrap();
        let f = Integrand::Constant(0.2);
        let e = hull_estimate(&g, &unit_box(5.0), &f, &square_and_centre()).unwrap();
        assert!((e.hull_term - 1.0).abs() < 1e-12);
        assert!((e.boundary_term - 0.8).abs() < 1e-12);
        assert!((e.value - 1.8).abs() < 1e-12);
        assert!((e.variance_estimate - 0.16).abs() < 1e-12);
        assert_eq!(e.boundary_count, 4);
        let ks = ks_error(&g, &unit_box(5.0), &f, &square_and_centre(), 1.0).unwrap();
        assert!((ks - 0.8).abs() < 1e-12);
    }

    #[test]
    fn min_generator_example() {
        let g = ParetoGen::new(1).unwrap();
        let model = IntensityModel::HalfLine { a: 1.0, rate: 1.0, horizon: 51.0 };
        let mu = PointPattern::from_points(
            SpaceTag::Euclid { dim: 1 },
            [2.0, 3.5, 7.0].iter().map(|x| SpacePoint::euclid(&[*x]).unwrap()),
        )
        .unwrap();
        let e = hull_estimate(&g, &model, &Integrand::PowerTail(2.0), &mu).unwrap();
        assert!((e.value - 0.75).abs() < 1e-12, "{}", e.value);
    }

    #[test]
    fn empty_pattern() {
        let g = ConvexHullGen::new(2).unwrap();
        let empty = PointPattern::empty(SpaceTag::Euclid { dim: 2 });
        let e = hull_estimate(&g, &unit_box(30.0), &Integrand::Constant(1.0), &empty).unwrap();
        assert_eq!((e.value, e.boundary_count), (0.0, 0));
        let ks = ks_error(&g, &unit_box(30.0), &Integrand::Constant(1.0), &empty, 30.0).unwrap();
        assert_eq!(ks, -30.0);
    }

    #[test]
    fn unsupported_pairing_is_an_error() {
        let g = ConvexHullGen::new(2).unwrap();
        let band = IntensityModel::HalfLine { a: 1.0, rate: 1.0, horizon: 51.0 };
        let empty = PointPattern::empty(SpaceTag::Euclid { dim: 2 });
        assert!(hull_estimate(&g, &band, &Integrand::Constant(1.0), &empty).is_err());
    }
}
