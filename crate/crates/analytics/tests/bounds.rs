use hullforge_analytics::{
    clt_bound_terms, hoelder_h_bounds, hoelder_pair_bound, hoelder_variance_bounds, DepthProfiles,
    HoelderScenarioParams,
};
use hullforge_core::Integrand;
use hullforge_sampling::{BoundaryFn, IntensityModel};
use proptest::prelude::*;
use statrs::function::erf::erf;
use std::f64::consts::PI;

/// The indicator integrand on the band under `phi(s) = (1 + s) / 2`.
fn indicator_profile() -> DepthProfiles {
    DepthProfiles::from_fn(1.0, vec![0.5], |_, u| if u <= 0.5 { 1.0 } else { 2.0 - 2.0 * u })
}

fn scenario(t: f64, profiles: DepthProfiles) -> HoelderScenarioParams {
    HoelderScenarioParams { d: 1, beta: 1.0, r: 1.0, r_prime: 0.5, gamma: 1.0, t, profiles }
}

/// `t int_0^1 f_2(u) e^{-c t u^2} du` for the indicator profile via `erf`.
fn indicator_bound_closed(t: f64, c: f64) -> f64 {
    let k = (c * t).sqrt();
    let g = |x: f64| 0.5 * PI.sqrt() / k * erf(k * x);
    let first = g(0.5);
    let second = 2.0 * (g(1.0) - g(0.5)) - ((-c * t / 4.0).exp() - (-c * t).exp()) / (c * t);
    t * (first + second)
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

#[test]
fn variance_bounds_match_closed_form() {
    for t in [16.0, 64.0, 1024.0] {
        let (lo, hi) = hoelder_variance_bounds(&scenario(t, indicator_profile())).unwrap();
        assert!((lo - indicator_bound_closed(t, 2.0)).abs() < 1e-7 * lo, "t {t}: {lo}");
        assert!((hi - indicator_bound_closed(t, 0.5)).abs() < 1e-7 * hi, "t {t}: {hi}");
    }
}

#[test]
fn tabulated_profiles_agree_with_closed_form() {
    let model = IntensityModel::HoelderBand {
        lo: vec![0.0],
        hi: vec![1.0],
        phi: BoundaryFn::Affine { intercept: 0.5, gradient: vec![0.5] },
        r_prime: 0.5,
        beta: 1.0,
        rate: 1.0,
    };
    let table = DepthProfiles::from_band(&model, &Integrand::Indicator, 2049).unwrap();
    for k in 4..=10 {
        let t = 2f64.powi(k);
        let (a, b) = (scenario(t, table.clone()), scenario(t, indicator_profile()));
        let (va, vb) = (hoelder_variance_bounds(&a).unwrap(), hoelder_variance_bounds(&b).unwrap());
        assert!((va.0 - vb.0).abs() < 1e-6 * vb.0 && (va.1 - vb.1).abs() < 1e-6 * vb.1, "t {t}");
        let (ca, cb) = (clt_bound_terms(&a).unwrap(), clt_bound_terms(&b).unwrap());
        assert!((ca.sum() - cb.sum()).abs() < 1e-5 * cb.sum(), "t {t}: {ca:?} vs {cb:?}");
    }
}

#[test]
fn variance_bound_exponent_for_linear_profile() {
    let ts: Vec<f64> = (4..=10).map(|k| 2f64.powi(k)).collect();
    let linear = DepthProfiles::from_fn(1.0, vec![], |_, u| 1.0 - u);
    let p = HoelderScenarioParams { d: 1, beta: 1.0, r: 1.0, r_prime: 0.0, gamma: 1.0, t: 1.0, profiles: linear };
    let bounds: Vec<(f64, f64)> = ts.iter().map(|&t| hoelder_variance_bounds(&p.with_t(t)).unwrap()).collect();
    let lo: Vec<f64> = bounds.iter().map(|b| b.0).collect();
    let hi: Vec<f64> = bounds.iter().map(|b| b.1).collect();
    for s in [slope(&ts, &lo), slope(&ts, &hi)] {
        assert!((s - 0.5).abs() < 0.05, "slope {s}");
    }
    assert!((p.variance_exponent() - 0.5).abs() < 1e-15);
}

#[test]
fn clt_terms_decrease_and_t3_scales() {
    let at = |t: f64| clt_bound_terms(&scenario(t, indicator_profile())).unwrap();
    let (x, y) = (at(64.0), at(128.0));
    assert!(y.t1 < x.t1 && y.t3 < x.t3 && y.t4 < x.t4 && y.t5 < x.t5, "{x:?} {y:?}");
    let ts: Vec<f64> = (6..=12).map(|k| 2f64.powi(k)).collect();
    let terms: Vec<_> = ts.iter().map(|&t| at(t)).collect();
    let t3: Vec<f64> = terms.iter().map(|c| c.t3).collect();
    let s3 = slope(&ts, &t3);
    assert!((s3 + 0.25).abs() < 0.03, "T3 slope {s3}");
    // with all profiles equal, T3 = V_upper / V_lower^{3/2}
    for (c, &t) in terms.iter().zip(&ts) {
        let hi = indicator_bound_closed(t, 0.5);
        assert!((c.t3 - hi / c.sigma2.powf(1.5)).abs() < 1e-6 * c.t3);
    }
    for w in terms.windows(2) {
        assert!(w[1].sum() < w[0].sum());
    }
}

proptest! {
    #[test]
    fn h_bounds_are_ordered_and_monotone(
        d in 1usize..4, beta in 0.1f64..1.0, r in 0.2f64..3.0, frac in 0.0f64..1.0,
        t in 0.1f64..100.0, u in 0.0f64..2.0, du in 0.0f64..1.0, dt in 0.0f64..10.0,
    ) {
        let p = HoelderScenarioParams {
            d, beta, r, r_prime: frac * r, gamma: 1.0, t, profiles: DepthProfiles::zero(),
        };
        let (lo, hi) = hoelder_h_bounds(&p, u).unwrap();
        prop_assert!(lo <= hi && (0.0..=1.0).contains(&lo) && hi <= 1.0);
        let (lo_u, hi_u) = hoelder_h_bounds(&p, u + du).unwrap();
        prop_assert!(lo_u <= lo && hi_u <= hi);
        let (lo_t, hi_t) = hoelder_h_bounds(&p.with_t(t + dt), u).unwrap();
        prop_assert!(lo_t <= lo && hi_t <= hi);
        prop_assert!(hoelder_pair_bound(&p, u, u + du).unwrap() <= hi);
    }

    #[test]
    fn variance_bounds_are_ordered(t in 1.0f64..500.0, frac in 0.0f64..0.9, g in 0.2f64..3.0) {
        let prof = DepthProfiles::from_fn(1.0, vec![], move |_, u| (1.0 - u).powf(g));
        let p = HoelderScenarioParams { d: 1, beta: 1.0, r: 1.0, r_prime: frac, gamma: 1.0, t, profiles: prof };
        let (lo, hi) = hoelder_variance_bounds(&p).unwrap();
        prop_assert!(0.0 < lo && lo <= hi);
    }
}
