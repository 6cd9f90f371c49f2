//! Integrands `f` of the estimated functionals `F = int f d(lambda)`.

use std::fmt;
use std::sync::Arc;

use crate::point::SpacePoint;

/// A user-supplied integrand registered under a tag.
#[derive(Clone)]
pub struct CustomFn {
    pub tag: String,
    pub f: Arc<dyn Fn(&SpacePoint) -> f64 + Send + Sync>,
}

impl fmt::Debug for CustomFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Custom({})", self.tag)
    }
}

/// The supported integrand families.
#[derive(Clone, Debug)]
pub enum Integrand {
    Constant(f64),
    /// `(p - 1) x^{-p}` on the positive half-line, `p > 1`.
    PowerTail(f64),
    /// `1{u >= 0}` on the functional space.
    Indicator,
    /// `p u_+^{p-1}` on the functional space.
    PowerDepth(f64),
    /// `w beta u^{beta-1}` on lines, `w beta |x|^{beta-d}` on Euclidean points.
    RadialPower {
        beta: f64,
        w: f64,
    },
    Scaled(f64, Box<Integrand>),
    Custom(CustomFn),
}

impl Integrand {
    pub fn custom<F>(tag: &str, f: F) -> Self
    where
        F: Fn(&SpacePoint) -> f64 + Send + Sync + 'static,
    {
        Integrand::Custom(CustomFn { tag: tag.to_string(), f: Arc::new(f) })
    }

    /// Evaluates `f(x)`; points outside an integrand's natural domain give 0.
    pub fn eval(&self, x: &SpacePoint) -> f64 {
        match self {
            Integrand::Constant(c) => *c,
            Integrand::PowerTail(p) => match x {
                SpacePoint::Euclid { x } if x.dim() == 1 && x.as_slice()[0] > 0.0 => {
                    (p - 1.0) * x.as_slice()[0].powf(-p)
                }
                _ => 0.0,
            },
            Integrand::Indicator => match x {
                SpacePoint::Param { u, .. } if *u >= 0.0 => 1.0,
                _ => 0.0,
            },
            Integrand::PowerDepth(p) => match x {
                SpacePoint::Param { u, .. } if *u > 0.0 => p * u.powf(p - 1.0),
                SpacePoint::Param { u, .. } if *u == 0.0 && *p == 1.0 => 1.0,
                _ => 0.0,
            },
            Integrand::RadialPower { beta, w } => match x {
                SpacePoint::Line { offset, .. } => w * beta * offset.powf(beta - 1.0),
                SpacePoint::Euclid { x } => w * beta * x.norm().powf(beta - x.dim() as f64),
                SpacePoint::Param { .. } => 0.0,
            },
            Integrand::Scaled(c, inner) => c * inner.eval(x),
            Integrand::Custom(c) => (c.f)(x),
        }
    }

    /// Closed-form `int_0^u f(., t) dt` along the height coordinate of a
    /// functional or line point, when one is available.
    pub fn height_antiderivative(&self, x: &SpacePoint) -> Option<f64> {
        let u = match x {
            SpacePoint::Param { u, .. } => *u,
            SpacePoint::Line { offset, .. } => *offset,
            SpacePoint::Euclid { .. } => return None,
        };
        let up = u.max(0.0);
        match self {
            Integrand::Constant(c) => Some(c * up),
            Integrand::Indicator if matches!(x, SpacePoint::Param { .. }) => Some(up),
            Integrand::PowerDepth(p) if matches!(x, SpacePoint::Param { .. }) => Some(up.powf(*p)),
            Integrand::RadialPower { beta, w } if matches!(x, SpacePoint::Line { .. }) && *beta > 0.0 => {
                Some(w * up.powf(*beta))
            }
            Integrand::Scaled(c, inner) => inner.height_antiderivative(x).map(|v| c * v),
            _ => None,
        }
    }

    /// `int_0^u f(., t) dt` with a numeric fallback for integrands without a
    /// closed form. The fallback uses double-exponential quadrature.
    pub fn height_integral(&self, x: &SpacePoint) -> f64 {
        if let Some(v) = self.height_antiderivative(x) {
            return v;
        }
        let (u, at): (f64, Box<dyn Fn(f64) -> SpacePoint>) = match *x {
            SpacePoint::Param { s, u } => (u, Box::new(move |t| SpacePoint::Param { s, u: t })),
            SpacePoint::Line { theta, offset } => (offset, Box::new(move |t| SpacePoint::Line { theta, offset: t })),
            SpacePoint::Euclid { .. } => return 0.0,
        };
        if u <= 0.0 {
            return 0.0;
        }
        quadrature::integrate(|t| self.eval(&at(t)), 0.0, u, 1e-12).integral
    }

    /// Closed-form tail integral `int_x^inf f` on the half-line.
    pub fn tail_integral(&self, x: f64) -> Option<f64> {
        match self {
            Integrand::PowerTail(p) if x > 0.0 && *p > 1.0 => Some(x.powf(1.0 - p)),
            Integrand::Scaled(c, inner) => inner.tail_integral(x).map(|v| c * v),
            _ => None,
        }
    }

    /// Whether `f` is constant, returning the constant.
    pub fn as_constant(&self) -> Option<f64> {
        match self {
            Integrand::Constant(c) => Some(*c),
            Integrand::Scaled(c, inner) => inner.as_constant().map(|v| c * v),
            _ => None,
        }
    }

    /// Whether `|f|` is bounded, with the bound when known.
    pub fn sup_abs(&self) -> Option<f64> {
        match self {
            Integrand::Constant(c) => Some(c.abs()),
            Integrand::Indicator => Some(1.0),
            Integrand::Scaled(c, inner) => inner.sup_abs().map(|v| c.abs() * v),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluations() {
        let p = SpacePoint::param(&[0.3], 0.5).unwrap();
        assert_eq!(Integrand::Indicator.eval(&p), 1.0);
        assert_eq!(Integrand::PowerDepth(2.0).eval(&p), 1.0);
        let below = SpacePoint::param(&[0.3], -0.5).unwrap();
        assert_eq!(Integrand::Indicator.eval(&below), 0.0);
        let x = SpacePoint::euclid(&[2.0]).unwrap();
        assert_eq!(Integrand::PowerTail(2.0).eval(&x), 0.25);
        let l = SpacePoint::line(1.0, 1.5).unwrap();
        assert_eq!(Integrand::RadialPower { beta: 1.0, w: 1.0 }.eval(&l), 1.0);
        let e = SpacePoint::xy(0.3, 0.4);
        assert!((Integrand::RadialPower { beta: 2.0, w: 0.5 }.eval(&e) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn antiderivatives_match_quadrature() {
        let cases = [
            Integrand::Indicator,
            Integrand::PowerDepth(2.0),
            Integrand::PowerDepth(3.5),
            Integrand::Constant(0.7),
            Integrand::Scaled(0.1, Box::new(Integrand::PowerDepth(1.5))),
        ];
        for f in &cases {
            for u in [0.05, 0.3, 0.9, 1.7] {
                let x = SpacePoint::param(&[0.4], u).unwrap();
                let closed = f.height_antiderivative(&x).unwrap();
                let num =
                    quadrature::integrate(|t| f.eval(&SpacePoint::param(&[0.4], t).unwrap()), 0.0, u, 1e-13).integral;
                assert!((closed - num).abs() <= 1e-8 * closed.abs().max(1e-300), "{f:?} at {u}");
            }
        }
        let rp = Integrand::RadialPower { beta: 0.5, w: 2.0 };
        let l = SpacePoint::line(0.2, 1.3).unwrap();
        // substitute t = v^2 to remove the endpoint singularity
        let num = quadrature::integrate(
            |v| 2.0 * v * rp.eval(&SpacePoint::line(0.2, v * v).unwrap()),
            0.0,
            1.3f64.sqrt(),
            1e-13,
        )
        .integral;
        let closed = rp.height_antiderivative(&l).unwrap();
        assert!((closed - num).abs() <= 1e-8 * closed);
    }

    #[test]
    fn custom_falls_back_to_quadrature() {
        let f = Integrand::custom("square", |p| match p {
            SpacePoint::Param { u, .. } => u * u,
            _ => 0.0,
        });
        let x = SpacePoint::param(&[0.0], 1.2).unwrap();
        assert!(f.height_antiderivative(&x).is_none());
        assert!((f.height_integral(&x) - 1.2f64.powi(3) / 3.0).abs() < 1e-10);
    }

    #[test]
    fn tail_of_power_tail() {
        assert_eq!(Integrand::PowerTail(2.0).tail_integral(2.0), Some(0.5));
    }
}
