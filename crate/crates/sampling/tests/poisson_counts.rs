use hullforge_core::SpacePoint;
use hullforge_sampling::{sample_poisson, BoundaryFn, IntensityModel, PlanarBody, RngStream};
use statrs::distribution::{ChiSquared, ContinuousCDF, Discrete, Poisson};

fn models() -> Vec<IntensityModel> {
    vec![
        IntensityModel::UniformBox { lo: vec![0.0, 0.0], hi: vec![1.0, 1.0], rate: 4.0 },
        IntensityModel::UniformConvexBody { body: PlanarBody::disk(1.0), rate: 2.0 },
        IntensityModel::UniformAnnulus { inner: 0.3, outer: 1.0, rate: 3.0 },
        IntensityModel::HoelderBand {
            lo: vec![0.0],
            hi: vec![1.0],
            phi: BoundaryFn::Constant { value: 1.0 },
            r_prime: 0.0,
            beta: 1.0,
            rate: 10.0,
        },
        IntensityModel::LinesBand { inner: PlanarBody::disk(1.0), outer: PlanarBody::disk(2.0), rate: 1.0 },
        IntensityModel::HalfLine { a: 1.0, rate: 1.0, horizon: 6.0 },
    ]
}

/// Pearson statistic of the counts against Poisson(mean), pooling sparse cells.
fn chi2_p_value(counts: &[u64], mean: f64, n: u64) -> f64 {
    let pois = Poisson::new(mean).unwrap();
    let mut cells: Vec<(f64, f64)> = Vec::new();
    let (mut obs, mut exp) = (0.0, 0.0);
    for (k, &c) in counts.iter().enumerate() {
        obs += c as f64;
        exp += n as f64 * pois.pmf(k as u64);
        if exp >= 20.0 {
            cells.push((obs, exp));
            obs = 0.0;
            exp = 0.0;
        }
    }
    let tail_exp = n as f64 - cells.iter().map(|c| c.1).sum::<f64>();
    let tail_obs = n as f64 - cells.iter().map(|c| c.0).sum::<f64>();
    cells.push((tail_obs, tail_exp));
    let stat: f64 = cells.iter().map(|(o, e)| (o - e) * (o - e) / e).sum();
    let df = (cells.len() - 1) as f64;
    1.0 - ChiSquared::new(df).unwrap().cdf(stat)
}

#[test]
fn counts_are_poisson_for_every_model() {
    let n = 100_000u64;
    for (mi, m) in models().iter().enumerate() {
        let mean = m.total_mass();
        let mut counts = vec![0u64; 200];
        for r in 0..n {
            let p = sample_poisson(m, &RngStream::new(0xC0FFEE + mi as u64, r)).unwrap();
            counts[(p.mass() as usize).min(199)] += 1;
        }
        let pv = chi2_p_value(&counts, mean, n);
        assert!(pv > 1e-3, "{}: chi-square p-value {pv}", m.name());
    }
}

#[test]
fn constant_band_heights_are_uniform() {
    let m = &models()[3];
    let mut bins = [0u64; 10];
    let mut total = 0u64;
    for r in 0..10_000 {
        for x in sample_poisson(m, &RngStream::new(99, r)).unwrap().support() {
            if let SpacePoint::Param { u, .. } = x {
                bins[((u * 10.0) as usize).min(9)] += 1;
                total += 1;
            }
        }
    }
    let e = total as f64 / 10.0;
    let stat: f64 = bins.iter().map(|&o| (o as f64 - e).powi(2) / e).sum();
    let pv = 1.0 - ChiSquared::new(9.0).unwrap().cdf(stat);
    assert!(pv > 1e-3, "height chi-square p-value {pv}");
}

#[test]
fn band_envelope_stays_below_boundary() {
    // Each sampled g_{s,u} = u - R'|s - r| lies below phi when phi is R'-Lipschitz.
    let m = IntensityModel::HoelderBand {
        lo: vec![0.0],
        hi: vec![1.0],
        phi: BoundaryFn::Affine { intercept: 0.5, gradient: vec![0.5] },
        r_prime: 0.5,
        beta: 1.0,
        rate: 200.0,
    };
    let p = sample_poisson(&m, &RngStream::new(5, 0)).unwrap();
    for i in 0..=256 {
        let r = i as f64 / 256.0;
        let env = p
            .support()
            .map(|x| match x {
                SpacePoint::Param { s, u } => u - 0.5 * (s.as_slice()[0] - r).abs(),
                _ => unreachable!(),
            })
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(env <= 0.5 + 0.5 * r + 1e-12);
    }
}

#[test]
fn same_stream_same_pattern() {
    for m in models() {
        let a = sample_poisson(&m, &RngStream::new(42, 17)).unwrap();
        let b = sample_poisson(&m, &RngStream::new(42, 17)).unwrap();
        assert_eq!(a, b);
        let c = sample_poisson(&m, &RngStream::new(42, 18)).unwrap();
        assert!(a != c || a.is_empty());
    }
}
