use hullforge_core::{check_axioms, check_prime, SpaceTag};
use hullforge_generators::{axiom_corpus, GeneratorSpec};

fn specs() -> Vec<GeneratorSpec> {
    vec![
        GeneratorSpec::ConvexHull { dim: 2, anchor_radius: None },
        GeneratorSpec::ConvexHull { dim: 2, anchor_radius: Some(0.3) },
        GeneratorSpec::ConvexHull { dim: 3, anchor_radius: None },
        GeneratorSpec::CoordMin,
        GeneratorSpec::Pareto { dim: 1 },
        GeneratorSpec::Pareto { dim: 2 },
        GeneratorSpec::Pareto { dim: 3 },
        GeneratorSpec::Envelope { d: 1, r: 1.0, beta: 1.0, grid: 0 },
        GeneratorSpec::Envelope { d: 2, r: 1.0, beta: 0.5, grid: 0 },
        GeneratorSpec::HalfPlane,
    ]
}

#[test]
fn every_generator_satisfies_the_axioms() {
    for spec in specs() {
        let gen = spec.build().unwrap();
        let max = if matches!(spec, GeneratorSpec::ConvexHull { dim: 3, .. }) { 8 } else { 12 };
        let corpus = axiom_corpus(&spec, 260, max, 64, 11).unwrap();
        let report = check_axioms(gen.as_ref(), &corpus.patterns, &corpus.probes);
        assert!(
            report.all_passed(),
            "{}: {:?}\n{:#?}",
            report.generator,
            report.counters().iter().filter(|c| c.1.failed > 0).collect::<Vec<_>>(),
            report.counterexamples.first()
        );
        for (name, c) in report.counters() {
            if !matches!(name, "two_point" | "first_difference" | "cyclic2" | "cyclic3" | "higher_difference" | "H2") {
                assert!(c.passed > 0, "{}: check {name} never ran", report.generator);
            }
        }
    }
}

#[test]
fn broken_generator_fails_idempotency() {
    let spec = GeneratorSpec::DropFirst { space: SpaceTag::Euclid { dim: 2 } };
    let gen = spec.build().unwrap();
    let corpus = axiom_corpus(&spec, 40, 8, 16, 3).unwrap();
    let report = check_axioms(gen.as_ref(), &corpus.patterns, &corpus.probes);
    assert!(report.h3a.failed > 0);
    assert!(report.h3.failed > 0);
    assert!(!report.counterexamples.is_empty());
    assert!(report.counterexamples.len() <= 16);
}

#[test]
fn prime_property_holds_exactly_where_expected() {
    for spec in specs() {
        let gen = spec.build().unwrap();
        let corpus = axiom_corpus(&spec, 200, 10, 64, 5).unwrap();
        let report = check_prime(gen.as_ref(), &corpus.patterns, &corpus.probes);
        if spec.is_prime() {
            assert!(report.holds(), "{}: {:?}", gen.name(), report.witness);
        }
        if matches!(spec, GeneratorSpec::ConvexHull { dim: 2, anchor_radius: None }) {
            assert!(!report.holds(), "convex hull should violate the prime factorisation");
            assert!(report.witness.is_some());
        }
    }
}
