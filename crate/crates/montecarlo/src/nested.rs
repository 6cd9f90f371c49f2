//! Nested simulation of `int f g E H_x(eta) lambda(dx)`.

use hullforge_core::{h_indicator, Integrand};
use hullforge_generators::HullIntegral;
use hullforge_sampling::{mix64, sample_iid, sample_poisson, IntensityModel, RngStream};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::NestedConfig;
use crate::error::McError;
use crate::stats::{Interval, Moments};

/// A Monte Carlo estimate with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub se: f64,
}

impl Estimate {
    pub fn ci99(&self) -> Interval {
        Interval::ci99(self.value, self.se)
    }
}

/// Nested estimates of `int f^2 E H d(lambda)` and, with a second integrand,
/// `int f g E H d(lambda)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NestedEstimate {
    pub variance: Estimate,
    pub covariance: Option<Estimate>,
    /// Mean of the per-probe estimates of `E H`.
    pub mean_h: f64,
}

/// Draws `probes` points from the normalised intensity and estimates `E H_x`
/// at each from `replicas` fresh samples; the integrals are the total mass
/// times the probe averages, with standard errors over probes.
pub fn nested_h_integral(
    gen: &dyn HullIntegral,
    model: &IntensityModel,
    f: &Integrand,
    g: Option<&Integrand>,
    cfg: &NestedConfig,
    seed: u64,
) -> Result<NestedEstimate, McError> {
    let base = RngStream::new(mix64(seed ^ 0x4e45_5354_4544), 0);
    let probes = sample_iid(model, cfg.probes, &mut base.rng())?;
    let mass = model.total_mass();
    let pts: Vec<_> = probes.atoms().cloned().collect();
    let hs: Vec<f64> = pts
        .par_iter()
        .enumerate()
        .map(|(j, x)| -> Result<f64, McError> {
            let s = base.substream(j as u64 + 1);
            let mut hits = 0u64;
            for k in 0..cfg.replicas {
                let eta = sample_poisson(model, &s.substream(k as u64))?;
                hits += u64::from(h_indicator(gen, &eta, x)?);
            }
            Ok(hits as f64 / cfg.replicas as f64)
        })
        .collect::<Result<_, _>>()?;
    let est = |w: &dyn Fn(&hullforge_core::SpacePoint) -> f64| {
        let vals: Vec<f64> = pts.iter().zip(&hs).map(|(x, h)| mass * w(x) * h).collect();
        let m = Moments::of(&vals);
        Estimate { value: m.mean, se: m.se }
    };
    let variance = est(&|x| f.eval(x).powi(2));
    let covariance = g.map(|g| est(&|x| f.eval(x) * g.eval(x)));
    Ok(NestedEstimate { variance, covariance, mean_h: Moments::of(&hs).mean })
}
