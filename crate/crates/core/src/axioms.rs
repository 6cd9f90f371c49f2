//! Randomised and exhaustive verification of the generator axioms.
//!
//! For each pattern the checker evaluates (H1)-(H4), the derived identities
//! of the `H` calculus and the structural facts `[mu] = [boundary(mu)]` and
//! `boundary(mu) = mu` restricted to the complement of `[mu]`. Failures are
//! counted and a bounded number of counterexamples is retained.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::generator::{
    cyclic_product, first_difference_closed, first_difference_h, higher_difference_closed, higher_difference_h,
    hull_contains_by_definition, prime_holds_at, HullGenerator,
};
use crate::pattern::PointPattern;
use crate::point::SpacePoint;

/// Pass/fail tally of one check.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckCount {
    pub passed: u64,
    pub failed: u64,
}

impl CheckCount {
    fn record(&mut self, ok: bool) -> bool {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        ok
    }

    fn merge(&mut self, other: &CheckCount) {
        self.passed += other.passed;
        self.failed += other.failed;
    }

    pub fn total(&self) -> u64 {
        self.passed + self.failed
    }
}

/// A failed check together with the pattern that triggered it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub check: String,
    pub pattern: PointPattern,
    pub detail: String,
}

/// Outcome of [`check_axioms`].
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub generator: String,
    pub patterns: u64,
    pub h1: CheckCount,
    pub h2: CheckCount,
    pub h3: CheckCount,
    pub h3a: CheckCount,
    pub h3b: CheckCount,
    pub h4: CheckCount,
    /// `H_x(mu - delta_x) = H_x(mu)` for atoms `x`.
    pub minus_point: CheckCount,
    /// `Hbar_y(mu + delta_x) Hbar_x(mu + delta_y) = Hbar_x(mu) Hbar_y(mu)`.
    pub two_point: CheckCount,
    pub cyclic2: CheckCount,
    pub cyclic3: CheckCount,
    /// Override of `hull_contains` agrees with the boundary definition.
    pub hull_definition: CheckCount,
    /// `[mu] = [boundary(mu)]`.
    pub hull_of_boundary: CheckCount,
    /// `boundary(mu)` equals `mu` restricted to the complement of `[mu]`.
    pub boundary_restriction: CheckCount,
    /// `mu' <= mu` implies `[mu'] subset [mu]`.
    pub monotone: CheckCount,
    /// `D_x H_z` matches its product form and lies in `{-1, 0}`.
    pub first_difference: CheckCount,
    /// Recursive `D^m H_z` matches the inclusion-exclusion form, `m = 2, 3`.
    pub higher_difference: CheckCount,
    pub counterexamples: Vec<Counterexample>,
}

macro_rules! counter_fields {
    ($m:ident) => {
        $m!(
            h1 "H1", h2 "H2", h3 "H3", h3a "H3a", h3b "H3b", h4 "H4",
            minus_point "minus_point", two_point "two_point",
            cyclic2 "cyclic2", cyclic3 "cyclic3",
            hull_definition "hull_definition", hull_of_boundary "hull_of_boundary",
            boundary_restriction "boundary_restriction", monotone "monotone",
            first_difference "first_difference", higher_difference "higher_difference"
        )
    };
}

impl AxiomReport {
    /// Named counters in a fixed order.
    pub fn counters(&self) -> Vec<(&'static str, CheckCount)> {
        macro_rules! list {
            ($($f:ident $n:literal),*) => { vec![$(($n, self.$f)),*] };
        }
        counter_fields!(list)
    }

    fn counter_mut(&mut self, name: &str) -> &mut CheckCount {
        macro_rules! pick {
            ($($f:ident $n:literal),*) => {
                match name {
                    $($n => &mut self.$f,)*
                    _ => unreachable!("unknown check {name}"),
                }
            };
        }
        counter_fields!(pick)
    }

    pub fn total_failures(&self) -> u64 {
        self.counters().iter().map(|(_, c)| c.failed).sum()
    }

    pub fn all_passed(&self) -> bool {
        self.total_failures() == 0
    }

    /// Counter of the named check, if it exists.
    pub fn counter(&self, name: &str) -> Option<CheckCount> {
        self.counters().into_iter().find(|(n, _)| *n == name).map(|(_, c)| c)
    }

    fn merge(&mut self, other: AxiomReport, limit: usize) {
        self.patterns += other.patterns;
        for (name, c) in other.counters() {
            self.counter_mut(name).merge(&c);
        }
        for c in other.counterexamples {
            if self.counterexamples.len() < limit {
                self.counterexamples.push(c);
            }
        }
    }
}

/// Effort limits for [`check_axioms_with`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomConfig {
    /// Sub-patterns are enumerated exhaustively up to this total mass.
    pub exhaustive_mass: u64,
    /// Number of random sub-patterns above the exhaustive limit.
    pub random_subpatterns: usize,
    /// Random `psi` draws for (H4).
    pub psi_draws: usize,
    /// Probes drawn per pattern (atoms of the pattern are always added).
    pub probes_per_pattern: usize,
    /// Random pairs / triples for the two-point, difference and cyclic checks.
    pub tuples: usize,
    pub max_counterexamples: usize,
    pub seed: u64,
}

impl Default for AxiomConfig {
    fn default() -> Self {
        Self {
            exhaustive_mass: 6,
            random_subpatterns: 64,
            psi_draws: 8,
            probes_per_pattern: 6,
            tuples: 8,
            max_counterexamples: 16,
            seed: 0x5EED,
        }
    }
}

fn pattern_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut z = seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    ChaCha8Rng::seed_from_u64(z ^ (z >> 31))
}

/// Runs the full suite with default effort limits.
pub fn check_axioms<G: HullGenerator + ?Sized>(
    gen: &G,
    patterns: &[PointPattern],
    probes: &[SpacePoint],
) -> AxiomReport {
    check_axioms_with(gen, patterns, probes, &AxiomConfig::default())
}

/// Runs the full suite. Patterns are processed in parallel; the result does
/// not depend on the number of threads.
pub fn check_axioms_with<G: HullGenerator + ?Sized>(
    gen: &G,
    patterns: &[PointPattern],
    probes: &[SpacePoint],
    cfg: &AxiomConfig,
) -> AxiomReport {
    let parts: Vec<AxiomReport> = patterns
        .par_iter()
        .enumerate()
        .map(|(i, mu)| {
            let mut rng = pattern_rng(cfg.seed, i);
            check_one(gen, mu, probes, cfg, &mut rng)
        })
        .collect();
    let mut report = AxiomReport { generator: gen.name(), ..Default::default() };
    for p in parts {
        report.merge(p, cfg.max_counterexamples);
    }
    report
}

struct Ctx<'a> {
    report: AxiomReport,
    mu: &'a PointPattern,
    limit: usize,
}

impl Ctx<'_> {
    fn record(&mut self, check: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        let mu = self.mu;
        let limit = self.limit;
        let report = &mut self.report;
        let counter = report.counter_mut(check);
        if !counter.record(ok) && report.counterexamples.len() < limit {
            report.counterexamples.push(Counterexample {
                check: check.to_string(),
                pattern: mu.clone(),
                detail: detail(),
            });
        }
    }
}

fn sub_patterns_for<R: Rng>(p: &PointPattern, cfg: &AxiomConfig, rng: &mut R) -> Vec<PointPattern> {
    if p.mass() <= cfg.exhaustive_mass {
        p.sub_patterns()
    } else {
        (0..cfg.random_subpatterns).map(|_| p.random_sub_pattern(rng)).collect()
    }
}

fn check_one<G: HullGenerator + ?Sized, R: Rng>(
    gen: &G,
    mu: &PointPattern,
    probes: &[SpacePoint],
    cfg: &AxiomConfig,
    rng: &mut R,
) -> AxiomReport {
    let mut ctx = Ctx { report: AxiomReport { patterns: 1, ..Default::default() }, mu, limit: cfg.max_counterexamples };
    let space = mu.space();
    let dmu = gen.boundary(mu);

    // Probe set: random probes plus the pattern's own atoms.
    let mut local: Vec<SpacePoint> = probes
        .choose_multiple(rng, cfg.probes_per_pattern.min(probes.len()))
        .copied()
        .filter(|p| p.space() == space)
        .collect();
    local.extend(mu.support().take(4).copied());

    let h1 = dmu.le(mu);
    ctx.record("H1", h1, || format!("boundary {:?} not below pattern", dmu.entries()));

    for (x, _) in dmu.entries() {
        let ok = gen.boundary(&mu.with(x)) == dmu.with(x);
        ctx.record("H2", ok, || format!("adding boundary point {x:?}"));
    }

    let ok = gen.boundary(&dmu) == dmu;
    ctx.record("H3a", ok, || "boundary of boundary differs".into());

    if h1 {
        let rest = mu.minus(&dmu).expect("H1 verified");
        let subs = sub_patterns_for(&rest, cfg, rng);
        for nu in &subs {
            let mu1 = dmu.plus(nu);
            let ok = gen.boundary(&mu1) == dmu;
            ctx.record("H3", ok, || format!("sub-pattern {:?}", nu.entries()));

            // (H3b): mu1 <= mu shares the boundary; extend by mu2 <= mu - mu1.
            if gen.boundary(&mu1) == dmu {
                let mu2 = mu.minus(&mu1).expect("sub-measure").random_sub_pattern(rng);
                let ok = gen.boundary(&mu1.plus(&mu2)) == dmu;
                ctx.record("H3b", ok, || format!("mu' = {:?}, mu'' = {:?}", mu1.entries(), mu2.entries()));
            }
        }

        // (H4): mu' <= mu with equal boundary, random psi from the probe set.
        if !local.is_empty() {
            for _ in 0..cfg.psi_draws {
                let mu1 = dmu.plus(&rest.random_sub_pattern(rng));
                if gen.boundary(&mu1) != dmu {
                    continue;
                }
                let k = rng.random_range(1..=3usize);
                let mut psi = PointPattern::empty(space);
                for _ in 0..k {
                    psi = psi.with(local.choose(rng).expect("non-empty"));
                }
                let ok = gen.boundary(&mu.plus(&psi)) == gen.boundary(&mu1.plus(&psi));
                ctx.record("H4", ok, || format!("mu' = {:?}, psi = {:?}", mu1.entries(), psi.entries()));
            }
        }
    }

    let h = |nu: &PointPattern, x: &SpacePoint| i64::from(!gen.hull_contains(nu, x));

    for (x, _) in mu.entries() {
        let less = mu.without_one(x).expect("atom");
        let ok = h(&less, x) == h(mu, x);
        ctx.record("minus_point", ok, || format!("atom {x:?}"));
    }

    for x in &local {
        let fast = gen.hull_contains(mu, x);
        let ok = fast == hull_contains_by_definition(gen, mu, x);
        ctx.record("hull_definition", ok, || format!("probe {x:?}, override says {fast}"));
        let ok = fast == gen.hull_contains(&dmu, x);
        ctx.record("hull_of_boundary", ok, || format!("probe {x:?}"));
    }

    let restricted = mu.restrict(|p| !gen.hull_contains(mu, p));
    ctx.record("boundary_restriction", restricted == dmu, || {
        format!("restriction {:?} vs boundary {:?}", restricted.entries(), dmu.entries())
    });

    for _ in 0..4 {
        let sub = mu.random_sub_pattern(rng);
        for x in &local {
            let ok = !gen.hull_contains(&sub, x) || gen.hull_contains(mu, x);
            ctx.record("monotone", ok, || format!("sub {:?}, probe {x:?}", sub.entries()));
        }
    }

    if local.len() >= 2 {
        for _ in 0..cfg.tuples {
            let x = *local.choose(rng).expect("non-empty");
            let y = *local.choose(rng).expect("non-empty");
            let hb = |nu: &PointPattern, p: &SpacePoint| 1 - h(nu, p);
            let lhs = hb(&mu.with(&x), &y) * hb(&mu.with(&y), &x);
            let rhs = hb(mu, &x) * hb(mu, &y);
            ctx.record("two_point", lhs == rhs, || format!("x = {x:?}, y = {y:?}"));

            let rec = first_difference_h(gen, mu, &x, &y).expect("space checked");
            let closed = first_difference_closed(gen, mu, &x, &y).expect("space checked");
            ctx.record("first_difference", rec == closed && (rec == 0 || rec == -1), || {
                format!("x = {x:?}, z = {y:?}: {rec} vs {closed}")
            });

            let c2 = cyclic_product(gen, mu, &[x, y]).expect("space checked");
            ctx.record("cyclic2", c2 == 0, || format!("z = ({x:?}, {y:?})"));

            let w = *local.choose(rng).expect("non-empty");
            let c3 = cyclic_product(gen, mu, &[x, y, w]).expect("space checked");
            ctx.record("cyclic3", c3 == 0, || format!("z = ({x:?}, {y:?}, {w:?})"));
        }
        for m in [2usize, 3] {
            for _ in 0..cfg.tuples / 2 {
                let xs: Vec<SpacePoint> = (0..m).map(|_| *local.choose(rng).expect("non-empty")).collect();
                let z = *local.choose(rng).expect("non-empty");
                let a = higher_difference_h(gen, mu, &xs, &z).expect("space checked");
                let b = higher_difference_closed(gen, mu, &xs, &z).expect("space checked");
                ctx.record("higher_difference", a == b, || format!("xs = {xs:?}, z = {z:?}: {a} vs {b}"));
            }
        }
    }

    ctx.report
}

/// Tally of the prime factorisation `H_z(mu) = prod_{x in mu} H_z(delta_x)`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PrimeReport {
    pub checked: u64,
    pub violations: u64,
    /// First violating `(pattern, probe)`, if any.
    pub witness: Option<(PointPattern, SpacePoint)>,
}

impl PrimeReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Evaluates the prime factorisation on every pattern against every probe
/// and every atom of the pattern.
pub fn check_prime<G: HullGenerator + ?Sized>(
    gen: &G,
    patterns: &[PointPattern],
    probes: &[SpacePoint],
) -> PrimeReport {
    let parts: Vec<PrimeReport> = patterns
        .par_iter()
        .map(|mu| {
            let mut r = PrimeReport::default();
            for z in probes.iter().chain(mu.support()) {
                if z.space() != mu.space() {
                    continue;
                }
                r.checked += 1;
                if !prime_holds_at(gen, mu, z).expect("space checked") {
                    r.violations += 1;
                    if r.witness.is_none() {
                        r.witness = Some((mu.clone(), *z));
                    }
                }
            }
            r
        })
        .collect();
    parts.into_iter().fold(PrimeReport::default(), |mut acc, r| {
        acc.checked += r.checked;
        acc.violations += r.violations;
        if acc.witness.is_none() {
            acc.witness = r.witness;
        }
        acc
    })
}
