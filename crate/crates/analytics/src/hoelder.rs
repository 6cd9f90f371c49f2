//! Void-probability, variance and normal-approximation bounds for the
//! Hoelder envelope scenario.
//!
//! All quantities are expressed in the depth `u = phi(s) - height` below the
//! band boundary, with `p = (d + beta) / beta` and
//!
//! - `a = beta kappa_d / (d + beta) (R - R')^{-d/beta}`,
//! - `b = beta kappa_d / (d + beta) (2R)^{-d/beta}`,
//!
//! so that `exp(-a t u^p) <= E H <= exp(-b t u^p)` at depth `u`.

use serde::{Deserialize, Serialize};

use crate::closed::kappa;
use crate::error::AnalyticsError;
use crate::profile::DepthProfiles;
use crate::quad;

const REL_TOL: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct HoelderScenarioParams {
    pub d: usize,
    pub beta: f64,
    pub r: f64,
    pub r_prime: f64,
    /// Exponent with `f_2(u) ~ u^{gamma - 1}` as `u -> 0`.
    pub gamma: f64,
    pub t: f64,
    pub profiles: DepthProfiles,
}

impl HoelderScenarioParams {
    pub fn validate(&self) -> Result<(), AnalyticsError> {
        let bad = |m: String| Err(AnalyticsError::Domain(m));
        kappa(self.d)?;
        if !(self.beta > 0.0 && self.beta <= 1.0) {
            return bad(format!("beta = {} outside (0, 1]", self.beta));
        }
        if !(self.r > 0.0 && self.r.is_finite() && self.r_prime >= 0.0 && self.r_prime <= self.r) {
            return bad(format!("need 0 <= R' <= R, got R = {}, R' = {}", self.r, self.r_prime));
        }
        if !(self.gamma > 0.0 && self.gamma <= 1.0) {
            return bad(format!("gamma = {} outside (0, 1]", self.gamma));
        }
        if !(self.t > 0.0 && self.t.is_finite()) {
            return bad(format!("intensity t = {} must be positive", self.t));
        }
        Ok(())
    }

    pub fn with_t(&self, t: f64) -> Self {
        Self { t, ..self.clone() }
    }

    /// `p = (d + beta) / beta`.
    pub fn p(&self) -> f64 {
        (self.d as f64 + self.beta) / self.beta
    }

    fn alpha(&self) -> f64 {
        self.d as f64 / self.beta
    }

    fn prefactor(&self) -> f64 {
        self.beta * kappa(self.d).expect("validated dimension") / (self.d as f64 + self.beta)
    }

    /// Rate of the lower bound on `E H`; infinite when `R = R'`.
    pub fn a(&self) -> f64 {
        if self.r_prime == self.r {
            return f64::INFINITY;
        }
        self.prefactor() * (self.r - self.r_prime).powf(-self.alpha())
    }

    /// Rate of the upper bound on `E H`, also used for `E[H_x H_y]` at the
    /// larger of the two depths.
    pub fn b(&self) -> f64 {
        self.prefactor() * (2.0 * self.r).powf(-self.alpha())
    }

    /// `kappa_d (R - R')^{-d/beta}`: volume factor of the domination cone.
    fn cone(&self) -> f64 {
        kappa(self.d).expect("validated dimension") * (self.r - self.r_prime).powf(-self.alpha())
    }

    /// Exponent `1 - gamma beta / (d + beta)` of the variance growth.
    pub fn variance_exponent(&self) -> f64 {
        1.0 - self.gamma * self.beta / (self.d as f64 + self.beta)
    }

    /// Exponent `-(1 - gamma beta / (d + beta)) / 2` of the normal
    /// approximation rate.
    pub fn clt_exponent(&self) -> f64 {
        -0.5 * self.variance_exponent()
    }

    /// Width of the boundary layer where `exp(-c t u^p)` is not negligible.
    fn layer(&self, c: f64) -> f64 {
        (c * self.t).powf(-1.0 / self.p())
    }
}

/// `(exp(-a t u^p), exp(-b t u^p))`, lower and upper bounds on `E H` at
/// depth `u`; the lower bound is 0 when `R = R'`.
pub fn hoelder_h_bounds(params: &HoelderScenarioParams, u: f64) -> Result<(f64, f64), AnalyticsError> {
    params.validate()?;
    if u < 0.0 {
        return Err(AnalyticsError::Domain(format!("depth {u} must be non-negative")));
    }
    let up = u.powf(params.p());
    let lower = if params.a().is_infinite() {
        if u == 0.0 {
            1.0
        } else {
            0.0
        }
    } else {
        (-params.a() * params.t * up).exp()
    };
    Ok((lower, (-params.b() * params.t * up).exp()))
}

/// Upper bound `exp(-b t (u v v)^p)` on `E[H_x H_y]` for depths `u` and `v`.
pub fn hoelder_pair_bound(params: &HoelderScenarioParams, u: f64, v: f64) -> Result<f64, AnalyticsError> {
    params.validate()?;
    if u < 0.0 || v < 0.0 {
        return Err(AnalyticsError::Domain(format!("depths {u}, {v} must be non-negative")));
    }
    Ok((-params.b() * params.t * u.max(v).powf(params.p())).exp())
}

/// `t int_0^inf f_2(u) exp(-c t u^p) du` for `c = a` (lower) and `c = b`
/// (upper).
pub fn hoelder_variance_bounds(params: &HoelderScenarioParams) -> Result<(f64, f64), AnalyticsError> {
    params.validate()?;
    let bound = |c: f64, what: &str| -> Result<f64, AnalyticsError> {
        if c.is_infinite() {
            return Ok(0.0);
        }
        let pr = &params.profiles;
        let p = params.p();
        let v = quad::integrate(
            what,
            |u| pr.eval(2, u) * (-c * params.t * u.powf(p)).exp(),
            0.0,
            pr.support(),
            params.layer(c),
            pr.kinks(),
            REL_TOL,
        )?;
        Ok(params.t * v)
    };
    Ok((bound(params.a(), "variance lower bound")?, bound(params.b(), "variance upper bound")?))
}

/// The four terms of the normal-approximation bound; their sum bounds the
/// Wasserstein distance of the standardised estimator from `N(0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CltBoundTerms {
    pub t1: f64,
    pub t3: f64,
    pub t4: f64,
    pub t5: f64,
    /// The variance used for standardisation.
    pub sigma2: f64,
}

impl CltBoundTerms {
    pub fn sum(&self) -> f64 {
        self.t1 + self.t3 + self.t4 + self.t5
    }
}

/// [`clt_bound_terms_with`] standardised by the variance lower bound.
pub fn clt_bound_terms(params: &HoelderScenarioParams) -> Result<CltBoundTerms, AnalyticsError> {
    let (lower, _) = hoelder_variance_bounds(params)?;
    clt_bound_terms_with(params, lower)
}

/// Upper bounds on the terms `T1, T3, T4, T5` at intensity `params.t` with
/// standardising variance `sigma2`.
///
/// Expectations of `H` are replaced by their upper bounds and the
/// hull-kernel integrals by the cone-volume bound combined with the
/// Cauchy-Schwarz (pairs) or Hoelder (triples) inequality, which reduces
/// each term to integrals of the depth profiles:
///
/// - `T3 = t s^-3 int f_3(u) e^{-b t u^p} du`,
/// - `T4 = t^2 s^-3 int (2 A_21 + 3 A_12)(v) e^{-b t v^p} dv` with
///   `A_ij(v) = c sqrt(f_2j(v)) int_0^v sqrt(f_2i(u)) (v - u)^{d/beta} du`,
/// - `T5 = 8 t^3 s^-3 int f_3(w)^{1/3} g(w)^2 e^{-b t w^p} dw` with
///   `g(w) = c int_0^w f_3(v)^{1/3} (w - v)^{d/beta} dv`,
/// - `T1 = t^{3/2} s^-2 (c^2 int_{w <= u ^ v} sqrt(f_4(u) f_4(v))
///   e^{-b t (u v v)^p} (u - w)^{d/beta} (v - w)^{d/beta})^{1/2}`,
///
/// where `s = sqrt(sigma2)` and `c = kappa_d (R - R')^{-d/beta}`.
pub fn clt_bound_terms_with(params: &HoelderScenarioParams, sigma2: f64) -> Result<CltBoundTerms, AnalyticsError> {
    params.validate()?;
    if params.r_prime == params.r {
        return Err(AnalyticsError::Domain("the bound is undefined for R = R' (zero variance lower bound)".into()));
    }
    let pr = &params.profiles;
    let (t, p, alpha, b, c) = (params.t, params.p(), params.alpha(), params.b(), params.cone());
    let top = pr.support();
    let layer = params.layer(b);
    let kinks = pr.kinks();
    let decay = |u: f64| (-b * t * u.powf(p)).exp();
    let f = |i: usize, u: f64| pr.eval(i, u);

    let i3 = quad::integrate("T3", |u| f(3, u) * decay(u), 0.0, top, layer, kinks, REL_TOL)?;
    let conv = |i: usize, v: f64, root: f64| quad::inner(|u| f(i, u).powf(root) * (v - u).powf(alpha), 0.0, v, kinks);
    let i4 = quad::integrate(
        "T4",
        |v| {
            let a21 = c * f(2, v).sqrt() * conv(4, v, 0.5);
            let a12 = c * f(4, v).sqrt() * conv(2, v, 0.5);
            (2.0 * a21 + 3.0 * a12) * decay(v)
        },
        0.0,
        top,
        layer,
        kinks,
        REL_TOL,
    )?;
    let i5 = quad::integrate(
        "T5",
        |w| {
            let g = c * conv(3, w, 1.0 / 3.0);
            f(3, w).cbrt() * g * g * decay(w)
        },
        0.0,
        top,
        layer,
        kinks,
        REL_TOL,
    )?;
    // symmetric in (u, v): twice the part with v <= u
    let kernel = |u: f64, v: f64| quad::inner(|w| (u - w).powf(alpha) * (v - w).powf(alpha), 0.0, v, &[]);
    let i1 = quad::integrate(
        "T1",
        |u| {
            let inner = quad::inner(|v| f(4, v).sqrt() * kernel(u, v), 0.0, u, kinks);
            2.0 * f(4, u).sqrt() * decay(u) * inner
        },
        0.0,
        top,
        layer,
        kinks,
        REL_TOL,
    )?;
    if [i1, i3, i4, i5].iter().all(|v| *v == 0.0) {
        return Ok(CltBoundTerms { t1: 0.0, t3: 0.0, t4: 0.0, t5: 0.0, sigma2 });
    }
    if sigma2.is_nan() || sigma2 <= 0.0 {
        return Err(AnalyticsError::Domain(format!("standardising variance {sigma2} must be positive")));
    }
    let s = sigma2.sqrt();
    Ok(CltBoundTerms {
        t1: t.powf(1.5) / sigma2 * (c * c * i1).sqrt(),
        t3: t / (s * sigma2) * i3,
        t4: t * t / (s * sigma2) * i4,
        t5: 8.0 * t.powi(3) / (s * sigma2) * i5,
        sigma2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(r_prime: f64, t: f64) -> HoelderScenarioParams {
        HoelderScenarioParams {
            d: 1,
            beta: 1.0,
            r: 1.0,
            r_prime,
            gamma: 1.0,
            t,
            profiles: DepthProfiles::from_fn(1.0, vec![], |_, u| 1.0 - u),
        }
    }

    #[test]
    fn h_bound_examples() {
        let (lo, hi) = hoelder_h_bounds(&unit(0.0, 1.0), 1.0).unwrap();
        assert!((lo - (-1.0f64).exp()).abs() < 1e-15 && (hi - (-0.5f64).exp()).abs() < 1e-15);
        assert_eq!(hoelder_h_bounds(&unit(0.0, 1.0), 0.0).unwrap(), (1.0, 1.0));
        let (lo3, hi3) = hoelder_h_bounds(&unit(0.0, 3.0), 1.0).unwrap();
        assert!((lo3.ln() - 3.0 * lo.ln()).abs() < 1e-12 && (hi3.ln() - 3.0 * hi.ln()).abs() < 1e-12);
        assert_eq!(hoelder_h_bounds(&unit(1.0, 1.0), 0.5).unwrap().0, 0.0);
        assert!(hoelder_h_bounds(&unit(0.0, 1.0), -0.1).is_err());
    }

    #[test]
    fn zero_profile_gives_zero() {
        let mut p = unit(0.5, 10.0);
        p.profiles = DepthProfiles::zero();
        assert_eq!(hoelder_variance_bounds(&p).unwrap(), (0.0, 0.0));
        assert_eq!(clt_bound_terms(&p).unwrap().sum(), 0.0);
    }

    #[test]
    fn undefined_for_equal_constants() {
        assert!(clt_bound_terms(&unit(1.0, 10.0)).is_err());
        assert_eq!(hoelder_variance_bounds(&unit(1.0, 10.0)).unwrap().0, 0.0);
    }
}
