//! The generator axiom suite and the brute-force convex hull oracle.

use hullforge_core::{check_axioms_with, check_prime, AxiomConfig, AxiomReport, PointPattern, PrimeReport, SpacePoint};
use hullforge_generators::{axiom_corpus, GeneratorSpec};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::SCHEMA_VERSION;
use crate::error::McError;

fn default_patterns() -> usize {
    1000
}

fn default_max_points() -> usize {
    8
}

fn default_probes() -> usize {
    32
}

/// Configuration of an axiom run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxiomSuiteConfig {
    pub schema_version: u32,
    pub experiment: String,
    pub seed: u64,
    #[serde(default = "default_patterns")]
    pub patterns: usize,
    #[serde(default = "default_max_points")]
    pub max_points: usize,
    #[serde(default = "default_probes")]
    pub probes: usize,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub effort: Option<AxiomConfig>,
}

impl AxiomSuiteConfig {
    pub fn from_json(text: &str) -> Result<Self, McError> {
        let cfg: Self =
            serde_json::from_str(text).map_err(|e| McError::Config(format!("cannot parse configuration: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), McError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(McError::Config(format!(
                "schema version {} is not supported (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if self.experiment.is_empty()
            || !self.experiment.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        {
            return Err(McError::Config(format!(
                "experiment name `{}` must be non-empty [A-Za-z0-9_-]",
                self.experiment
            )));
        }
        if self.generators.is_empty() {
            return Err(McError::Config("no generators listed".into()));
        }
        for g in &self.generators {
            g.build()?;
        }
        Ok(())
    }
}

/// Agreement of the fast convex hull test with [`relint_oracle`].
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct OracleTally {
    pub checked: u64,
    pub disagreements: u64,
    pub witness: Option<(PointPattern, SpacePoint)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorAxioms {
    pub spec: GeneratorSpec,
    pub report: AxiomReport,
    /// Present for generators with the prime property.
    pub prime: Option<PrimeReport>,
    /// Present for unanchored convex hulls.
    pub oracle: Option<OracleTally>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomSuiteReport {
    pub experiment: String,
    pub seed: u64,
    pub patterns: usize,
    pub generators: Vec<GeneratorAxioms>,
    pub warnings: Vec<String>,
    pub pass: bool,
}

fn solve(mut m: Vec<Vec<f64>>, mut r: Vec<f64>) -> Option<Vec<f64>> {
    let n = r.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))?;
        if m[p][c].abs() < 1e-14 {
            return None;
        }
        m.swap(c, p);
        r.swap(c, p);
        for i in (c + 1)..n {
            let (top, rest) = m.split_at_mut(i);
            let f = rest[0][c] / top[c][c];
            for (a, b) in rest[0][c..n].iter_mut().zip(&top[c][c..n]) {
                *a -= f * b;
            }
            r[i] -= f * r[c];
        }
    }
    let mut y = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = ((i + 1)..n).map(|k| m[i][k] * y[k]).sum();
        y[i] = (r[i] - s) / m[i][i];
    }
    Some(y)
}

/// Whether `x` is a strictly positive affine combination of the affinely
/// independent points `simplex`.
fn in_open_simplex(simplex: &[&[f64]], x: &[f64]) -> bool {
    let o = simplex[0];
    let e: Vec<Vec<f64>> = simplex[1..].iter().map(|p| p.iter().zip(o).map(|(a, b)| a - b).collect()).collect();
    let v: Vec<f64> = x.iter().zip(o).map(|(a, b)| a - b).collect();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(p, q)| p * q).sum::<f64>();
    let k = e.len();
    let gram = (0..k).map(|i| (0..k).map(|j| dot(&e[i], &e[j])).collect()).collect();
    let rhs = (0..k).map(|i| dot(&e[i], &v)).collect();
    let Some(w) = solve(gram, rhs) else { return false };
    let resid: f64 =
        (0..v.len()).map(|c| v[c] - (0..k).map(|i| w[i] * e[i][c]).sum::<f64>()).map(|r| r * r).sum::<f64>().sqrt();
    let scale = e.iter().map(|d| dot(d, d).sqrt()).fold(0.0, f64::max);
    resid <= 1e-9 * scale && w.iter().all(|&l| l > 1e-12) && 1.0 - w.iter().sum::<f64>() > 1e-12
}

/// Brute-force membership in the hull of a Euclidean pattern: by
/// Caratheodory, `x` is in `conv(mu)` minus the vertices iff it lies in the
/// relative interior of the simplex of some 2 to `d + 1` support points.
pub fn relint_oracle(mu: &PointPattern, x: &SpacePoint, d: usize) -> bool {
    let pts: Vec<&[f64]> = mu.support().filter_map(|p| p.coords()).collect();
    let Some(xc) = x.coords() else { return false };
    let n = pts.len();
    let mut stack: Vec<(Vec<usize>, usize)> = (0..n).map(|i| (vec![i], i + 1)).collect();
    while let Some((chosen, next)) = stack.pop() {
        if chosen.len() >= 2 {
            let s: Vec<&[f64]> = chosen.iter().map(|&i| pts[i]).collect();
            if in_open_simplex(&s, xc) {
                return true;
            }
        }
        if chosen.len() <= d {
            for j in next..n {
                let mut c = chosen.clone();
                c.push(j);
                stack.push((c, j + 1));
            }
        }
    }
    false
}

fn oracle_tally(
    dim: usize,
    gen: &dyn hullforge_core::HullGenerator,
    patterns: &[PointPattern],
    probes: &[SpacePoint],
) -> OracleTally {
    let parts: Vec<OracleTally> = patterns
        .par_iter()
        .map(|mu| {
            let mut pts: Vec<SpacePoint> = probes.to_vec();
            let atoms: Vec<&[f64]> = mu.support().filter_map(|p| p.coords()).collect();
            for (i, a) in atoms.iter().enumerate() {
                pts.push(SpacePoint::euclid(a).expect("finite atom"));
                for b in &atoms[i + 1..] {
                    let mid: Vec<f64> = a.iter().zip(b.iter()).map(|(p, q)| 0.5 * (p + q)).collect();
                    pts.push(SpacePoint::euclid(&mid).expect("finite midpoint"));
                }
            }
            let mut t = OracleTally::default();
            for x in &pts {
                t.checked += 1;
                if gen.hull_contains(mu, x) != relint_oracle(mu, x, dim) {
                    t.disagreements += 1;
                    if t.witness.is_none() {
                        t.witness = Some((mu.clone(), *x));
                    }
                }
            }
            t
        })
        .collect();
    let mut total = OracleTally::default();
    for p in parts {
        total.checked += p.checked;
        total.disagreements += p.disagreements;
        if total.witness.is_none() {
            total.witness = p.witness;
        }
    }
    total
}

/// Runs the axiom checker, the prime factorisation (where it applies) and
/// the convex hull oracle on a random corpus for every listed generator.
pub fn run_axiom_suite(cfg: &AxiomSuiteConfig) -> Result<AxiomSuiteReport, McError> {
    cfg.validate()?;
    let mut warnings = Vec::new();
    if cfg.patterns == 0 {
        warnings.push("corpus is empty; every check passes vacuously".to_string());
    }
    let effort = cfg.effort.clone().unwrap_or_default();
    let mut out = Vec::with_capacity(cfg.generators.len());
    for (i, spec) in cfg.generators.iter().enumerate() {
        let gen = spec.build()?;
        let corpus = axiom_corpus(spec, cfg.patterns, cfg.max_points, cfg.probes, cfg.seed.wrapping_add(i as u64))?;
        let report = check_axioms_with(gen.as_ref(), &corpus.patterns, &corpus.probes, &effort);
        let prime = spec.is_prime().then(|| check_prime(gen.as_ref(), &corpus.patterns, &corpus.probes));
        let oracle = match spec {
            GeneratorSpec::ConvexHull { dim, anchor_radius: None } => {
                Some(oracle_tally(*dim, gen.as_ref(), &corpus.patterns, &corpus.probes))
            }
            _ => None,
        };
        let pass = report.all_passed()
            && prime.as_ref().is_none_or(PrimeReport::holds)
            && oracle.as_ref().is_none_or(|o| o.disagreements == 0);
        out.push(GeneratorAxioms { spec: spec.clone(), report, prime, oracle, pass });
    }
    let pass = out.iter().all(|g| g.pass);
    Ok(AxiomSuiteReport {
        experiment: cfg.experiment.clone(),
        seed: cfg.seed,
        patterns: cfg.patterns,
        generators: out,
        warnings,
        pass,
    })
}
