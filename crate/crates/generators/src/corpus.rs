//! Random pattern corpora and probe sets for axiom verification.

use std::f64::consts::TAU;

use hullforge_core::{PointPattern, SpacePoint, SpaceTag};
use hullforge_sampling::{sample_iid, BoundaryFn, IntensityModel, PlanarBody, RngStream};
use rand::Rng;

use crate::error::GeneratorError;
use crate::spec::GeneratorSpec;

/// Patterns together with the probe points they are tested against.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub patterns: Vec<PointPattern>,
    pub probes: Vec<SpacePoint>,
}

/// The intensity the corpus points are drawn from.
pub fn corpus_model(spec: &GeneratorSpec) -> IntensityModel {
    match spec {
        GeneratorSpec::ConvexHull { anchor_radius: Some(r), .. } => {
            IntensityModel::UniformAnnulus { inner: *r, outer: 1.0_f64.max(2.0 * r), rate: 1.0 }
        }
        GeneratorSpec::ConvexHull { dim, .. } | GeneratorSpec::Pareto { dim } => {
            IntensityModel::UniformBox { lo: vec![0.0; *dim], hi: vec![1.0; *dim], rate: 1.0 }
        }
        GeneratorSpec::CoordMin => IntensityModel::UniformBox { lo: vec![0.0; 2], hi: vec![1.0; 2], rate: 1.0 },
        GeneratorSpec::DropFirst { space } => match space {
            SpaceTag::Euclid { dim } => {
                IntensityModel::UniformBox { lo: vec![0.0; *dim as usize], hi: vec![1.0; *dim as usize], rate: 1.0 }
            }
            SpaceTag::Param { dim } => hoelder_band(*dim as usize, 1.0, 1.0),
            SpaceTag::Line => lines_band(),
        },
        GeneratorSpec::Envelope { d, r, beta, .. } => hoelder_band(*d, *r, *beta),
        GeneratorSpec::HalfPlane => lines_band(),
    }
}

fn hoelder_band(d: usize, r: f64, beta: f64) -> IntensityModel {
    // phi(s) = 1/2 + (R'/ sqrt d) sum s_k with R' = R/2, Hoelder with constant
    // R' on the unit cube when beta = 1
    let rp = r / 2.0;
    let (phi, r_prime) = if beta == 1.0 {
        (BoundaryFn::Affine { intercept: 0.5, gradient: vec![rp / (d as f64).sqrt(); d] }, rp)
    } else {
        (BoundaryFn::Constant { value: 1.0 }, 0.0)
    };
    IntensityModel::HoelderBand { lo: vec![0.0; d], hi: vec![1.0; d], phi, r_prime, beta, rate: 1.0 }
}

fn lines_band() -> IntensityModel {
    IntensityModel::LinesBand { inner: PlanarBody::disk(1.0), outer: PlanarBody::disk(2.0), rate: 1.0 }
}

/// Probe points covering the model's region and a margin around it.
fn draw_probe<R: Rng>(model: &IntensityModel, rng: &mut R) -> SpacePoint {
    match model {
        IntensityModel::UniformBox { lo, hi, .. } => {
            let x: Vec<f64> = lo
                .iter()
                .zip(hi)
                .map(|(a, b)| {
                    let m = 0.25 * (b - a);
                    rng.random_range(a - m..b + m)
                })
                .collect();
            SpacePoint::euclid(&x).expect("finite probe")
        }
        IntensityModel::UniformAnnulus { outer, .. } => {
            let r = outer * 1.2 * rng.random::<f64>().sqrt();
            let a = TAU * rng.random::<f64>();
            SpacePoint::xy(r * a.cos(), r * a.sin())
        }
        IntensityModel::HoelderBand { lo, hi, .. } => {
            let s: Vec<f64> = lo.iter().zip(hi).map(|(a, b)| rng.random_range(*a..*b)).collect();
            SpacePoint::param(&s, rng.random_range(-0.2..1.4)).expect("finite probe")
        }
        IntensityModel::LinesBand { .. } => {
            SpacePoint::line(TAU * rng.random::<f64>(), rng.random_range(0.5..3.0)).expect("finite probe")
        }
        _ => unreachable!("corpus models are boxes, annuli, bands and line bands"),
    }
}

/// `n_patterns` patterns of at most `max_points` support points drawn from
/// [`corpus_model`], with occasional repeated atoms, and `n_probes` probes.
/// Pattern sizes cycle through `0..=max_points`.
pub fn axiom_corpus(
    spec: &GeneratorSpec,
    n_patterns: usize,
    max_points: usize,
    n_probes: usize,
    seed: u64,
) -> Result<Corpus, GeneratorError> {
    let model = corpus_model(spec);
    let mut patterns = Vec::with_capacity(n_patterns);
    for i in 0..n_patterns {
        let mut rng = RngStream::new(seed, i as u64).rng();
        let n = i % (max_points + 1);
        let mut mu = sample_iid(&model, n, &mut rng)?;
        if n > 0 && rng.random::<f64>() < 0.25 {
            let k = rng.random_range(0..mu.support_len());
            let x = mu.entries()[k].0;
            mu = mu.with(&x);
        }
        patterns.push(mu);
    }
    let mut rng = RngStream::new(seed, u64::MAX).rng();
    let probes = (0..n_probes).map(|_| draw_probe(&model, &mut rng)).collect();
    Ok(Corpus { patterns, probes })
}
