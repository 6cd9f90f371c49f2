//! Acceptance criteria 1-12, run through the `hullforge` binary.
//!
//! Each criterion prints one `PASS`/`FAIL` line to stderr (bypassing the
//! test harness capture) and to `acceptance/report.txt` under the target
//! temporary directory. A criterion listed in [`KNOWN_DEVIATIONS`] may fail
//! with the documented reason; every other failure fails the test.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use serde_json::Value;

/// Criteria whose literal target is known to be unattainable, with the
/// reason; the verdict is still computed and printed.
const KNOWN_DEVIATIONS: &[(u32, &str)] = &[(
    3,
    "the closed form 2(1-e^-t) - (1-e^-t)^2/t treats the two coordinate minima as independent; \
     the exact value 2(1-e^-t) - sum P(N=n)/n is what the simulation reproduces",
)];

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn root() -> PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance")
}

struct Run {
    code: i32,
    stdout: String,
    secs: f64,
    dir: PathBuf,
    experiment: String,
}

impl Run {
    fn summary(&self) -> Value {
        let p = self.dir.join(format!("{}.summary.json", self.experiment));
        serde_json::from_str(&fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display())))
            .expect("summary JSON")
    }

    /// Every check with this name passed, and there was at least one.
    fn checks_pass(&self, name: &str) -> bool {
        let s = self.summary();
        let rows: Vec<&Value> = s["checks"].as_array().unwrap().iter().filter(|c| c["check"] == name).collect();
        !rows.is_empty() && rows.iter().all(|c| c["pass"] == true)
    }

    fn check_details(&self, name: &str) -> Vec<String> {
        self.summary()["checks"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|c| c["check"] == name)
            .map(|c| c["detail"].as_str().unwrap_or_default().to_string())
            .collect()
    }
}

fn run(cmd: &str, config: &str, dir: &Path, threads: usize) -> Run {
    let text = fs::read_to_string(configs().join(format!("{config}.json"))).expect("config");
    let experiment = serde_json::from_str::<Value>(&text).unwrap()["experiment"].as_str().unwrap().to_string();
    let _ = fs::remove_dir_all(dir);
    let started = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_hullforge"))
        .arg(cmd)
        .arg("--config")
        .arg(configs().join(format!("{config}.json")))
        .arg("--threads")
        .arg(threads.to_string())
        .arg("--out")
        .arg(dir)
        .output()
        .expect("run hullforge");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned() + &String::from_utf8_lossy(&out.stderr),
        secs: started.elapsed().as_secs_f64(),
        dir: dir.to_path_buf(),
        experiment,
    }
}

struct Report {
    lines: Vec<String>,
    failures: Vec<u32>,
}

impl Report {
    fn record(&mut self, n: u32, pass: bool, detail: String) {
        let line = format!("criterion {n:>2}: {} {detail}", if pass { "PASS" } else { "FAIL" });
        let _ = writeln!(std::io::stderr(), "{line}");
        self.lines.push(line);
        if !pass {
            match KNOWN_DEVIATIONS.iter().find(|(k, _)| *k == n) {
                Some((_, why)) => {
                    let note = format!("              known deviation: {why}");
                    let _ = writeln!(std::io::stderr(), "{note}");
                    self.lines.push(note);
                }
                None => self.failures.push(n),
            }
        }
    }
}

fn files_equal(a: &Path, b: &Path, experiment: &str) -> Result<(), String> {
    for name in [format!("{experiment}.csv"), format!("{experiment}.summary.json"), "manifest.json".to_string()] {
        let x = fs::read(a.join(&name)).map_err(|e| format!("{name}: {e}"))?;
        let y = fs::read(b.join(&name)).map_err(|e| format!("{name}: {e}"))?;
        if x != y {
            return Err(format!("{name} differs"));
        }
    }
    Ok(())
}

#[test]
fn acceptance_criteria() {
    let root = root();
    let dir = |name: &str| root.join(name);
    let mut rep = Report { lines: Vec::new(), failures: Vec::new() };

    // 1. axiom suite and convex hull oracle
    let ax = run("axioms", "axioms", &dir("axioms"), 2);
    {
        let s = ax.summary();
        let gens = s["generators"].as_array().unwrap();
        let names: Vec<&str> = gens.iter().map(|g| g["spec"]["generator"].as_str().unwrap()).collect();
        let families = ["convex_hull", "coord_min", "pareto", "envelope", "half_plane"];
        let all_families = families.iter().all(|f| names.contains(f));
        let thousand = gens.iter().all(|g| g["report"]["patterns"] == 1000);
        let oracle: Vec<(u64, u64)> = gens
            .iter()
            .filter_map(|g| g["oracle"].as_object())
            .map(|o| (o["checked"].as_u64().unwrap(), o["disagreements"].as_u64().unwrap()))
            .collect();
        let oracle_ok = oracle.len() == 2 && oracle.iter().all(|(c, d)| *c > 0 && *d == 0);
        let pass = ax.code == 0 && s["pass"] == true && all_families && thousand && oracle_ok && ax.secs < 120.0;
        rep.record(
            1,
            pass,
            format!(
                "{} generators x 1000 patterns, oracle probes {:?}, {:.1}s (limit 120s)",
                gens.len(),
                oracle.iter().map(|o| o.0).collect::<Vec<_>>(),
                ax.secs
            ),
        );
    }

    // 2. unbiasedness on five scenarios
    let estimates: Vec<Run> =
        ["estimate_convex", "estimate_hoelder", "estimate_min", "estimate_mean_width", "estimate_annulus"]
            .iter()
            .map(|c| run("estimate", c, &dir(c), 2))
            .collect();
    {
        let secs: f64 = estimates.iter().map(|r| r.secs).sum();
        let ok: Vec<bool> = estimates.iter().map(|r| r.code == 0 && r.checks_pass("unbiased")).collect();
        let detail: Vec<String> = estimates
            .iter()
            .zip(&ok)
            .map(|(r, o)| format!("{}={}", r.experiment, if *o { "ok" } else { "fail" }))
            .collect();
        rep.record(2, ok.iter().all(|o| *o) && secs < 600.0, format!("{}, {secs:.1}s (limit 600s)", detail.join(" ")));
    }

    // 3. coordinate minima closed form
    let cm = run("estimate", "coordmin", &dir("coordmin"), 2);
    {
        let pass = cm.checks_pass("coordmin_card") && cm.secs < 60.0;
        let detail = cm.check_details("coordmin_card").join(" | ");
        rep.record(3, pass, format!("{detail}; {:.1}s", cm.secs));
        // the simulation itself must agree with the exact value and with the
        // hull-mass side of the identity
        assert!(cm.checks_pass("efron"), "{}", cm.stdout);
        let s = cm.summary();
        for row in s["rows"].as_array().unwrap() {
            let t = row["t"].as_f64().unwrap();
            let (m, se) =
                (row["boundary_count"]["mean"].as_f64().unwrap(), row["boundary_count"]["se"].as_f64().unwrap());
            let mut p = (-t).exp();
            let mut exact = 0.0;
            for n in 1..200 {
                p *= t / n as f64;
                exact += p * (2.0 - 1.0 / n as f64);
            }
            assert!((m - exact).abs() <= 4.0 * se, "t = {t}: mean {m}, exact {exact}");
        }
    }

    // 4. Efron identity
    let ef = run("estimate", "efron", &dir("efron"), 2);
    rep.record(
        4,
        ef.code == 0 && ef.checks_pass("efron") && ef.secs < 120.0,
        format!("{}; {:.1}s (limit 120s)", ef.check_details("efron").join(""), ef.secs),
    );

    // 5. variance identity
    let var: Vec<Run> =
        ["variance_convex", "variance_hoelder"].iter().map(|c| run("variance", c, &dir(c), 2)).collect();
    {
        let secs: f64 = var.iter().map(|r| r.secs).sum();
        let pass = var.iter().all(|r| r.code == 0 && r.checks_pass("variance_identity")) && secs < 600.0;
        let detail: Vec<String> = var.iter().flat_map(|r| r.check_details("variance_identity")).collect();
        rep.record(5, pass, format!("{}; {secs:.1}s (limit 600s)", detail.join(" | ")));
    }

    // 6. covariance identity
    let cov = run("variance", "covariance_hoelder", &dir("covariance_hoelder"), 2);
    rep.record(
        6,
        cov.code == 0 && cov.checks_pass("covariance_identity"),
        format!("{}; {:.1}s", cov.check_details("covariance_identity").join(""), cov.secs),
    );

    // 7. strong Markov two-sample test and its negative control
    {
        let arms: Vec<Run> = ["markov_convex", "markov_pareto"].iter().map(|c| run("markov", c, &dir(c), 2)).collect();
        let ctl = run("markov", "markov_convex_control", &dir("markov_convex_control"), 2);
        let min_p = |r: &Run| {
            r.summary()["rows"].as_array().unwrap().iter().map(|x| x["p_value"].as_f64().unwrap()).fold(1.0, f64::min)
        };
        let arms_ok = arms.iter().all(|r| r.code == 0 && r.summary()["pass"] == true);
        let cs = ctl.summary();
        let count_p = cs["rows"][0]["p_value"].as_f64().unwrap();
        let ctl_ok = ctl.code == 1 && cs["control_detected"] == true && count_p < 1e-6;
        rep.record(
            7,
            arms_ok && ctl_ok,
            format!(
                "smallest p: convex {:.3e}, pareto {:.3e}; control count p {count_p:.3e} (exit {})",
                min_p(&arms[0]),
                min_p(&arms[1]),
                ctl.code
            ),
        );
    }

    // 8. joint-moment identity
    let hm = run("estimate", "higher_moments", &dir("higher_moments"), 2);
    rep.record(
        8,
        hm.code == 0 && hm.checks_pass("higher_moments") && hm.secs < 180.0,
        format!("{}; {:.1}s (limit 180s)", hm.check_details("higher_moments").join(" | "), hm.secs),
    );

    // 9. variance growth rate and analytic bracket
    let rates = run("rates", "rates_hoelder", &dir("rates_hoelder"), 2);
    {
        let s = rates.summary();
        let pass = rates.checks_pass("variance_rate") && rates.checks_pass("variance_bracket") && rates.secs < 1200.0;
        rep.record(
            9,
            pass,
            format!(
                "slope {:.4} (SE {:.4}), bracket {}; {:.1}s (limit 1200s)",
                s["variance_slope"].as_f64().unwrap_or(f64::NAN),
                s["variance_slope_se"].as_f64().unwrap_or(f64::NAN),
                if rates.checks_pass("variance_bracket") { "ok" } else { "violated" },
                rates.secs
            ),
        );
    }

    // 10. normal approximation rate and one-sided bound
    let clt = run("clt", "clt_hoelder", &dir("clt_hoelder"), 2);
    {
        let s = clt.summary();
        let pass = clt.checks_pass("clt_rate") && clt.checks_pass("clt_bound") && clt.secs < 1800.0;
        rep.record(
            10,
            pass,
            format!(
                "W1 slope {:.4} (SE {:.4}); {}; {:.1}s (limit 1800s)",
                s["w1_slope"].as_f64().unwrap_or(f64::NAN),
                s["w1_slope_se"].as_f64().unwrap_or(f64::NAN),
                clt.check_details("clt_bound").join(""),
                clt.secs
            ),
        );
    }

    // 11. KS-error identity on every sampled pattern of criteria 2-10
    {
        let runs: Vec<&Run> =
            estimates.iter().chain([&cm, &ef]).chain(var.iter()).chain([&cov, &hm, &rates, &clt]).collect();
        let mut patterns = 0u64;
        let mut worst = 0.0f64;
        let mut ok = true;
        for r in &runs {
            let s = r.summary();
            let ks: Vec<&Value> =
                s["checks"].as_array().unwrap().iter().filter(|c| c["check"] == "ks_identity").collect();
            ok &= !ks.is_empty() && ks.iter().all(|c| c["pass"] == true);
            for c in &ks {
                worst = worst.max(c["value"].as_f64().unwrap_or(f64::INFINITY));
            }
            for row in s["rows"].as_array().unwrap() {
                patterns += row["estimate"]["n"].as_u64().unwrap();
            }
        }
        rep.record(
            11,
            ok && worst <= 1e-10,
            format!("{patterns} patterns over {} experiments, largest residual {worst:.3e} (limit 1e-10)", runs.len()),
        );
    }

    // 12. determinism across reruns and thread counts
    {
        let reruns = [
            ("axioms", "axioms", &ax),
            ("estimate", "estimate_convex", &estimates[0]),
            ("estimate", "coordmin", &cm),
            ("variance", "variance_hoelder", &var[1]),
            ("estimate", "higher_moments", &hm),
        ];
        let mut problems = Vec::new();
        for (cmd, cfg, first) in reruns {
            let again = run(cmd, cfg, &root.join("rerun").join(cfg), 1);
            if let Err(e) = files_equal(&first.dir, &again.dir, &first.experiment) {
                problems.push(format!("{cfg}: {e}"));
            }
        }
        let m1 = run("markov", "markov_convex", &root.join("rerun").join("markov_a"), 1);
        let m2 = run("markov", "markov_convex", &root.join("rerun").join("markov_b"), 3);
        if let Err(e) = files_equal(&m1.dir, &m2.dir, &m1.experiment) {
            problems.push(format!("markov_convex: {e}"));
        }
        rep.record(
            12,
            problems.is_empty(),
            if problems.is_empty() {
                "6 commands rerun with 1 and 3 threads: CSV, summary and manifest byte-identical".to_string()
            } else {
                problems.join("; ")
            },
        );
    }

    fs::create_dir_all(&root).unwrap();
    fs::write(root.join("report.txt"), rep.lines.join("\n") + "\n").unwrap();
    assert!(rep.failures.is_empty(), "criteria failed: {:?}", rep.failures);
}
