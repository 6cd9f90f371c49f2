use hullforge_core::{Integrand, PointPattern, SpacePoint};
use hullforge_estimators::{convex_moment_closed_form, hull_estimate, hull_estimate_k, ks_error};
use hullforge_generators::{ConvexHullGen, GeneratorSpec, HullIntegral};
use hullforge_sampling::{sample_poisson, BoundaryFn, IntensityModel, PlanarBody, RngStream};
use proptest::prelude::*;

struct Case {
    gen: Box<dyn HullIntegral>,
    model: IntensityModel,
    f: Integrand,
}

fn cases() -> Vec<Case> {
    let unit = IntensityModel::UniformBox { lo: vec![0.0, 0.0], hi: vec![1.0, 1.0], rate: 30.0 };
    let band = IntensityModel::HoelderBand {
        lo: vec![0.0],
        hi: vec![1.0],
        phi: BoundaryFn::Affine { intercept: 0.5, gradient: vec![0.5] },
        r_prime: 0.5,
        beta: 1.0,
        rate: 40.0,
    };
    let build = |s: GeneratorSpec| s.build().unwrap();
    vec![
        Case {
            gen: build(GeneratorSpec::ConvexHull { dim: 2, anchor_radius: None }),
            model: unit.clone(),
            f: Integrand::Constant(1.0 / 30.0),
        },
        Case {
            gen: build(GeneratorSpec::ConvexHull { dim: 2, anchor_radius: None }),
            model: unit.clone(),
            f: Integrand::custom("xy", |x: &SpacePoint| {
                let c = x.coords().unwrap();
                c[0] * c[1]
            }),
        },
        Case { gen: build(GeneratorSpec::CoordMin), model: unit.clone(), f: Integrand::Constant(1.0) },
        Case { gen: build(GeneratorSpec::Pareto { dim: 2 }), model: unit, f: Integrand::Constant(1.0) },
        Case {
            gen: build(GeneratorSpec::Envelope { d: 1, r: 1.0, beta: 1.0, grid: 0 }),
            model: band.clone(),
            f: Integrand::Indicator,
        },
        Case {
            gen: build(GeneratorSpec::Envelope { d: 1, r: 1.0, beta: 1.0, grid: 0 }),
            model: band,
            f: Integrand::PowerDepth(2.0),
        },
        Case {
            gen: build(GeneratorSpec::HalfPlane),
            model: IntensityModel::LinesBand { inner: PlanarBody::disk(1.0), outer: PlanarBody::disk(2.0), rate: 1.0 },
            f: Integrand::Constant(1.0),
        },
        Case {
            gen: build(GeneratorSpec::Pareto { dim: 1 }),
            model: IntensityModel::HalfLine { a: 1.0, rate: 3.0, horizon: 51.0 },
            f: Integrand::PowerTail(2.0),
        },
        Case {
            gen: build(GeneratorSpec::ConvexHull { dim: 2, anchor_radius: Some(0.3) }),
            model: IntensityModel::UniformAnnulus { inner: 0.3, outer: 1.0, rate: 20.0 },
            f: Integrand::RadialPower { beta: 2.0, w: 0.5 },
        },
    ]
}

/// Brute force over ordered tuples of distinct boundary atoms (expanded by
/// multiplicity).
fn brute_force_k(gen: &dyn HullIntegral, model: &IntensityModel, g: &Integrand, k: usize, mu: &PointPattern) -> f64 {
    let a = hullforge_generators::hull_integral(gen, mu, model, g).unwrap();
    let atoms: Vec<f64> =
        gen.boundary(mu).entries().iter().flat_map(|(x, m)| std::iter::repeat_n(g.eval(x), *m as usize)).collect();
    fn tuples(atoms: &[f64], j: usize, used: &mut Vec<usize>) -> f64 {
        if used.len() == j {
            return used.iter().map(|&i| atoms[i]).product();
        }
        let mut s = 0.0;
        for i in 0..atoms.len() {
            if !used.contains(&i) {
                used.push(i);
                s += tuples(atoms, j, used);
                used.pop();
            }
        }
        s
    }
    let binom = |n: usize, r: usize| (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64);
    (0..=k).map(|i| binom(k, i) * a.powi(i as i32) * tuples(&atoms, k - i, &mut Vec::new())).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn decomposition_and_ks_identity(seed in 0u64..1_000_000, which in 0usize..9) {
        let case = &cases()[which];
        let mu = sample_poisson(&case.model, &RngStream::new(seed, 0)).unwrap();
        let e = hull_estimate(case.gen.as_ref(), &case.model, &case.f, &mu).unwrap();
        prop_assert_eq!(e.value, e.hull_term + e.boundary_term);
        prop_assert!(e.variance_estimate >= 0.0);
        prop_assert_eq!(e.boundary_count, case.gen.boundary(&mu).mass());
        let f_true = 7.25;
        let ks = ks_error(case.gen.as_ref(), &case.model, &case.f, &mu, f_true).unwrap();
        prop_assert!((e.value - f_true - ks).abs() <= 1e-10 * (1.0 + f_true), "{} vs {}", e.value - f_true, ks);
    }

    #[test]
    fn higher_order_matches_brute_force(seed in 0u64..1_000_000, which in 0usize..9, k in 1usize..4) {
        let case = &cases()[which];
        let mu = sample_poisson(&case.model, &RngStream::new(seed, 1)).unwrap();
        prop_assume!(case.gen.boundary(&mu).mass() <= 9);
        let fast = hull_estimate_k(case.gen.as_ref(), &case.model, &case.f, k, &mu).unwrap();
        let slow = brute_force_k(case.gen.as_ref(), &case.model, &case.f, k, &mu);
        prop_assert!((fast - slow).abs() <= 1e-9 * (1.0 + slow.abs()), "{} vs {}", fast, slow);
        if k == 1 {
            let e = hull_estimate(case.gen.as_ref(), &case.model, &case.f, &mu).unwrap();
            prop_assert!((fast - e.value).abs() <= 1e-12 * (1.0 + e.value.abs()));
        }
    }

    #[test]
    fn constant_integrand_matches_closed_form(seed in 0u64..1_000_000, k in 1usize..5) {
        let g = ConvexHullGen::new(2).unwrap();
        let model = IntensityModel::UniformBox { lo: vec![0.0, 0.0], hi: vec![1.0, 1.0], rate: 15.0 };
        let mu = sample_poisson(&model, &RngStream::new(seed, 2)).unwrap();
        let e = hull_estimate(&g, &model, &Integrand::Constant(1.0), &mu).unwrap();
        let closed = convex_moment_closed_form(e.hull_term, e.boundary_count, k);
        let v = hull_estimate_k(&g, &model, &Integrand::Constant(1.0), k, &mu).unwrap();
        prop_assert!((v - closed).abs() <= 1e-9 * closed.abs().max(1.0));
    }
}

#[test]
fn order_zero_is_rejected() {
    let g = ConvexHullGen::new(2).unwrap();
    let model = IntensityModel::UniformBox { lo: vec![0.0, 0.0], hi: vec![1.0, 1.0], rate: 1.0 };
    let mu = PointPattern::empty(model.space());
    assert!(hull_estimate_k(&g, &model, &Integrand::Constant(1.0), 0, &mu).is_err());
}

#[test]
fn unbiased_on_the_unit_square() {
    let g = ConvexHullGen::new(2).unwrap();
    let t = 10.0;
    let model = IntensityModel::UniformBox { lo: vec![0.0, 0.0], hi: vec![1.0, 1.0], rate: t };
    let reps = 4000u64;
    let mut sums = [0.0f64; 3];
    let mut sq = [0.0f64; 3];
    for r in 0..reps {
        let mu = sample_poisson(&model, &RngStream::new(77, r)).unwrap();
        for (j, k) in [1usize, 2, 3].into_iter().enumerate() {
            let v = hull_estimate_k(&g, &model, &Integrand::Constant(1.0), k, &mu).unwrap();
            sums[j] += v;
            sq[j] += v * v;
        }
    }
    for (j, k) in [1i32, 2, 3].into_iter().enumerate() {
        let n = reps as f64;
        let mean = sums[j] / n;
        let se = ((sq[j] / n - mean * mean) / (n - 1.0)).sqrt();
        let target = t.powi(k);
        assert!((mean - target).abs() < 4.0 * se, "k = {k}: {mean} vs {target} (se {se})");
    }
}
