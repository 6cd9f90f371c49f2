use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn hullforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hullforge")).args(args).output().expect("run hullforge")
}

fn config(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

const SMALL: &str = r#"{
  "schema_version": 1, "experiment": "small", "scenario": "convex_square",
  "generator": {"generator": "convex_hull", "dim": 2},
  "intensity": {"model": "uniform_box", "lo": [0, 0], "hi": [1, 1], "rate": 1},
  "integrand": {"kind": "constant", "value": 1},
  "replications": 500, "seed": 1, "t_grid": [10, 20],
  "checks": [{"check": "unbiased"}, {"check": "ks_identity"}]
}"#;

#[test]
fn estimate_writes_csv_summary_and_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = config(tmp.path(), "small.json", SMALL);
    let out = tmp.path().join("out");
    let o = hullforge(&["estimate", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let csv = fs::read_to_string(out.join("small.csv")).unwrap();
    let lines: Vec<&str> = csv.split('\n').collect();
    assert_eq!(lines[0], "t,mean,se,ci_lo,ci_hi,target,pass");
    assert_eq!(lines.len(), 4, "two rows plus the trailing newline");
    assert!(!csv.contains('\r'));
    let first: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(first[0], "1.0000000000000000e1");
    // 17 significant digits
    assert_eq!(first[1].split('e').next().unwrap().replace(['.', '-'], "").len(), 17);
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("small.summary.json")).unwrap()).unwrap();
    assert_eq!(summary["pass"], true);
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    let files: Vec<&str> = manifest["experiments"]["small"]["files"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["path"].as_str().unwrap())
        .collect();
    for f in ["small.csv", "small.summary.json", "small.timing.json", "manifest.json"] {
        assert!(files.contains(&f), "{files:?}");
        assert!(out.join(f).exists());
    }
    assert_eq!(manifest["experiments"]["small"]["config"]["seed"], 1);
}

#[test]
fn seed_and_threads_flags() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = config(tmp.path(), "small.json", SMALL);
    let outs: Vec<_> = [("1", "5"), ("3", "5"), ("1", "6")]
        .iter()
        .map(|(threads, seed)| {
            let out = tmp.path().join(format!("o{threads}{seed}"));
            let o = hullforge(&[
                "estimate",
                "--config",
                &cfg,
                "--threads",
                threads,
                "--seed",
                seed,
                "--out",
                out.to_str().unwrap(),
            ]);
            assert_eq!(o.status.code(), Some(0));
            fs::read(out.join("small.csv")).unwrap()
        })
        .collect();
    assert_eq!(outs[0], outs[1]);
    assert_ne!(outs[0], outs[2]);
}

#[test]
fn rates_summary_has_slope_fields() {
    let tmp = tempfile::tempdir().unwrap();
    let text =
        SMALL.replace(r#""t_grid": [10, 20]"#, r#""t_grid": [4, 8, 16, 32]"#).replace(r#"{"check": "unbiased"}, "#, "");
    let cfg = config(tmp.path(), "r.json", &text);
    let out = tmp.path().join("out");
    let o = hullforge(&["rates", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let s: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("small.summary.json")).unwrap()).unwrap();
    for k in ["variance_slope", "variance_slope_se", "w1_slope", "w1_slope_se"] {
        assert!(s[k].is_f64(), "{k}");
    }
}

#[test]
fn configuration_errors_exit_with_two() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let out = out.to_str().unwrap();
    let bad = config(tmp.path(), "bad.json", &SMALL.replace(r#""seed": 1"#, r#""seed": 1, "bogus": true"#));
    assert_eq!(hullforge(&["estimate", "--config", &bad, "--out", out]).status.code(), Some(2));
    let missing = tmp.path().join("nope.json");
    assert_eq!(hullforge(&["estimate", "--config", missing.to_str().unwrap(), "--out", out]).status.code(), Some(2));
    let good = config(tmp.path(), "small.json", SMALL);
    assert_eq!(hullforge(&["unknown", "--config", &good]).status.code(), Some(2));
    assert_eq!(hullforge(&["estimate", "--config", &good, "--threads", "0", "--out", out]).status.code(), Some(2));
    // a markov run without a markov section
    assert_eq!(hullforge(&["markov", "--config", &good, "--out", out]).status.code(), Some(2));
    // an experiment config is not an axiom config
    assert_eq!(hullforge(&["axioms", "--config", &good, "--out", out]).status.code(), Some(2));
}

#[test]
fn axiom_runs_pass_fail_and_warn() {
    let configs = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let tmp = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = tmp.path().join(name);
        hullforge(&[
            "axioms",
            "--config",
            configs.join(format!("{name}.json")).to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ])
    };
    let empty = run("axioms_empty");
    assert_eq!(empty.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&empty.stdout).contains("warning: corpus is empty"));
    let broken = run("axioms_broken");
    assert_eq!(broken.status.code(), Some(1));
    let text = String::from_utf8_lossy(&broken.stdout);
    assert!(text.contains("counterexample"), "{text}");
}

#[test]
fn markov_negative_control_exits_with_one() {
    let tmp = tempfile::tempdir().unwrap();
    let mk = |control: bool| {
        SMALL.replace(
            r#""t_grid": [10, 20]"#,
            &format!(r#""t_grid": [20], "markov": {{"pairs": 2000, "negative_control": {control}}}"#),
        )
    };
    for (control, code) in [(false, 0), (true, 1)] {
        let cfg = config(tmp.path(), "m.json", &mk(control));
        let out = tmp.path().join(format!("m{control}"));
        let o = hullforge(&["markov", "--config", &cfg, "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(code), "{}", String::from_utf8_lossy(&o.stdout));
        let csv = fs::read_to_string(out.join("small.csv")).unwrap();
        assert!(csv.starts_with("coordinate,statistic,p_value,pass\n"));
    }
}
