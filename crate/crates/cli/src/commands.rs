//! The subcommands: run a pipeline, then emit its CSV, summary and manifest.

use std::path::Path;
use std::time::Instant;

use hullforge_montecarlo::{
    markov_two_sample, run_axiom_suite, run_experiment, AxiomSuiteConfig, CheckOutcome, ExperimentConfig,
    ExperimentReport, TSummary,
};
use serde::Serialize;

use crate::error::CliError;
use crate::output::{to_json, Cell, CheckEntry, OutDir, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Axioms,
    Estimate,
    Variance,
    Markov,
    Clt,
    Rates,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Axioms => "axioms",
            Command::Estimate => "estimate",
            Command::Variance => "variance",
            Command::Markov => "markov",
            Command::Clt => "clt",
            Command::Rates => "rates",
        }
    }
}

pub struct RunArgs<'a> {
    pub command: Command,
    pub config_text: &'a str,
    pub seed: Option<u64>,
    pub out: &'a Path,
}

/// Result of a completed run.
pub struct Outcome {
    pub pass: bool,
    pub lines: Vec<String>,
}

fn parse_experiment(args: &RunArgs) -> Result<ExperimentConfig, CliError> {
    let mut cfg = ExperimentConfig::from_json(args.config_text)?;
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn echo<T: Serialize>(cfg: &T) -> serde_json::Value {
    serde_json::to_value(cfg).expect("serializable configuration")
}

fn timing(out: &mut OutDir, experiment: &str, started: Instant) -> Result<(), CliError> {
    let secs = started.elapsed().as_secs_f64();
    out.emit(&format!("{experiment}.timing.json"), &to_json(&serde_json::json!({ "wall_clock_seconds": secs })), false)
}

fn check_entries(checks: &[CheckOutcome]) -> Vec<CheckEntry> {
    checks.iter().map(|c| CheckEntry { check: c.check.clone(), t: c.t, pass: c.pass }).collect()
}

fn check_lines(checks: &[CheckOutcome]) -> Vec<String> {
    checks
        .iter()
        .map(|c| {
            let at = c.t.map(|t| format!(" t={t}")).unwrap_or_default();
            format!("{} {}{at}: {}", if c.pass { "PASS" } else { "FAIL" }, c.check, c.detail)
        })
        .collect()
}

/// Whether every check evaluated at this intensity passed.
fn row_pass(checks: &[CheckOutcome], t: f64) -> bool {
    checks.iter().filter(|c| c.t == Some(t)).all(|c| c.pass)
}

fn estimate_table(report: &ExperimentReport) -> Table {
    let mut tab = Table::new(&["t", "mean", "se", "ci_lo", "ci_hi", "target", "pass"]);
    for r in &report.summary.rows {
        tab.row(vec![
            Cell::Num(r.t),
            Cell::Num(r.estimate.mean),
            Cell::Num(r.estimate.se),
            Cell::Num(r.ci.lo),
            Cell::Num(r.ci.hi),
            Cell::Opt(r.target),
            Cell::Bool(row_pass(&report.checks, r.t)),
        ]);
    }
    tab
}

fn variance_table(report: &ExperimentReport) -> Table {
    let mut tab = Table::new(&[
        "t",
        "variance",
        "variance_ci_lo",
        "variance_ci_hi",
        "vhat_mean",
        "vhat_ci_lo",
        "vhat_ci_hi",
        "nested_variance",
        "nested_variance_se",
        "covariance",
        "covariance_se",
        "nested_covariance",
        "nested_covariance_se",
        "pass",
    ]);
    for r in &report.summary.rows {
        let v = r.vhat.mean_ci();
        let nested = r.nested.as_ref();
        let nc = nested.and_then(|n| n.covariance);
        tab.row(vec![
            Cell::Num(r.t),
            Cell::Num(r.estimate.variance),
            Cell::Num(r.variance_ci.lo),
            Cell::Num(r.variance_ci.hi),
            Cell::Num(r.vhat.mean),
            Cell::Num(v.lo),
            Cell::Num(v.hi),
            Cell::Opt(nested.map(|n| n.variance.value)),
            Cell::Opt(nested.map(|n| n.variance.se)),
            Cell::Opt(r.covariance.map(|c| c.covariance)),
            Cell::Opt(r.covariance.map(|c| c.se)),
            Cell::Opt(nc.map(|c| c.value)),
            Cell::Opt(nc.map(|c| c.se)),
            Cell::Bool(row_pass(&report.checks, r.t)),
        ]);
    }
    tab
}

fn rates_table(report: &ExperimentReport) -> Table {
    let mut tab = Table::new(&[
        "t",
        "variance",
        "variance_se",
        "variance_lower_bound",
        "variance_upper_bound",
        "w1",
        "ks",
        "pass",
    ]);
    for r in &report.summary.rows {
        tab.row(vec![
            Cell::Num(r.t),
            Cell::Num(r.estimate.variance),
            Cell::Num(r.estimate.variance_se),
            Cell::Opt(r.analytic.map(|a| a.variance_lower)),
            Cell::Opt(r.analytic.map(|a| a.variance_upper)),
            Cell::Opt(r.w1),
            Cell::Opt(r.ks),
            Cell::Bool(row_pass(&report.checks, r.t)),
        ]);
    }
    tab
}

fn clt_table(report: &ExperimentReport) -> Table {
    let mut tab = Table::new(&["t", "w1", "ks", "w1_upper_bound", "t1", "t3", "t4", "t5", "pass"]);
    for r in &report.summary.rows {
        let b = r.analytic.and_then(|a| a.clt);
        tab.row(vec![
            Cell::Num(r.t),
            Cell::Opt(r.w1),
            Cell::Opt(r.ks),
            Cell::Opt(b.map(|b| b.sum())),
            Cell::Opt(b.map(|b| b.t1)),
            Cell::Opt(b.map(|b| b.t3)),
            Cell::Opt(b.map(|b| b.t4)),
            Cell::Opt(b.map(|b| b.t5)),
            Cell::Bool(row_pass(&report.checks, r.t)),
        ]);
    }
    tab
}

#[derive(Serialize)]
struct ExperimentJson<'a> {
    experiment: &'a str,
    command: &'static str,
    pass: bool,
    variance_slope: Option<f64>,
    variance_slope_se: Option<f64>,
    w1_slope: Option<f64>,
    w1_slope_se: Option<f64>,
    checks: &'a [CheckOutcome],
    rows: &'a [TSummary],
}

fn run_pipeline(args: &RunArgs) -> Result<Outcome, CliError> {
    let cfg = parse_experiment(args)?;
    let started = Instant::now();
    let report = run_experiment(&cfg)?;
    let table = match args.command {
        Command::Estimate => estimate_table(&report),
        Command::Variance => variance_table(&report),
        Command::Rates => rates_table(&report),
        Command::Clt => clt_table(&report),
        Command::Axioms | Command::Markov => unreachable!("handled separately"),
    };
    let s = &report.summary;
    let json = ExperimentJson {
        experiment: &cfg.experiment,
        command: args.command.name(),
        pass: report.pass,
        variance_slope: s.variance_fit.map(|f| f.slope),
        variance_slope_se: s.variance_fit.map(|f| f.stderr),
        w1_slope: s.w1_fit.map(|f| f.slope),
        w1_slope_se: s.w1_fit.map(|f| f.stderr),
        checks: &report.checks,
        rows: &s.rows,
    };
    let mut out = OutDir::create(args.out)?;
    out.emit(&format!("{}.csv", cfg.experiment), &table.into_string(), true)?;
    out.emit(&format!("{}.summary.json", cfg.experiment), &to_json(&json), true)?;
    timing(&mut out, &cfg.experiment, started)?;
    out.finish(&cfg.experiment, args.command.name(), echo(&cfg), check_entries(&report.checks), report.pass)?;
    Ok(Outcome { pass: report.pass, lines: check_lines(&report.checks) })
}

fn run_markov(args: &RunArgs) -> Result<Outcome, CliError> {
    let cfg = parse_experiment(args)?;
    let started = Instant::now();
    let report = markov_two_sample(&cfg)?;
    let mut tab = Table::new(&["coordinate", "statistic", "p_value", "pass"]);
    let mut lines = Vec::new();
    let mut checks = Vec::new();
    for r in &report.rows {
        tab.row(vec![
            Cell::Text(r.coordinate.clone()),
            Cell::Num(r.statistic),
            Cell::Num(r.p_value),
            Cell::Bool(r.pass),
        ]);
        lines.push(format!(
            "{} markov {}: D = {:.4e}, p = {:.4e} (alpha {})",
            if r.pass { "PASS" } else { "FAIL" },
            r.coordinate,
            r.statistic,
            r.p_value,
            report.alpha
        ));
        checks.push(CheckEntry { check: format!("markov_{}", r.coordinate), t: Some(report.t), pass: r.pass });
    }
    if let Some(d) = report.control_detected {
        lines.push(format!("negative control: violation {}", if d { "detected" } else { "NOT detected" }));
    }
    let mut out = OutDir::create(args.out)?;
    out.emit(&format!("{}.csv", cfg.experiment), &tab.into_string(), true)?;
    out.emit(&format!("{}.summary.json", cfg.experiment), &to_json(&report), true)?;
    timing(&mut out, &cfg.experiment, started)?;
    out.finish(&cfg.experiment, "markov", echo(&cfg), checks, report.pass)?;
    Ok(Outcome { pass: report.pass, lines })
}

fn run_axioms(args: &RunArgs) -> Result<Outcome, CliError> {
    let mut cfg = AxiomSuiteConfig::from_json(args.config_text)?;
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    let started = Instant::now();
    let report = run_axiom_suite(&cfg)?;
    let mut tab = Table::new(&["generator", "check", "passed", "failed"]);
    let mut lines: Vec<String> = report.warnings.iter().map(|w| format!("warning: {w}")).collect();
    let mut checks = Vec::new();
    for g in &report.generators {
        let name = g.report.generator.clone();
        for (check, c) in g.report.counters() {
            tab.row(vec![Cell::Text(name.clone()), Cell::Text(check.into()), Cell::Int(c.passed), Cell::Int(c.failed)]);
        }
        if let Some(p) = &g.prime {
            tab.row(vec![
                Cell::Text(name.clone()),
                Cell::Text("prime".into()),
                Cell::Int(p.checked - p.violations),
                Cell::Int(p.violations),
            ]);
        }
        if let Some(o) = &g.oracle {
            tab.row(vec![
                Cell::Text(name.clone()),
                Cell::Text("relint_oracle".into()),
                Cell::Int(o.checked - o.disagreements),
                Cell::Int(o.disagreements),
            ]);
        }
        lines.push(format!(
            "{} axioms {name}: {} failures over {} patterns",
            if g.pass { "PASS" } else { "FAIL" },
            g.report.total_failures()
                + g.prime.as_ref().map_or(0, |p| p.violations)
                + g.oracle.as_ref().map_or(0, |o| o.disagreements),
            g.report.patterns
        ));
        for c in &g.report.counterexamples {
            lines.push(format!("  counterexample [{}]: {} on {:?}", c.check, c.detail, c.pattern));
        }
        checks.push(CheckEntry { check: format!("axioms {name}"), t: None, pass: g.pass });
    }
    let mut out = OutDir::create(args.out)?;
    out.emit(&format!("{}.csv", cfg.experiment), &tab.into_string(), true)?;
    out.emit(&format!("{}.summary.json", cfg.experiment), &to_json(&report), true)?;
    timing(&mut out, &cfg.experiment, started)?;
    out.finish(&cfg.experiment, "axioms", echo(&cfg), checks, report.pass)?;
    Ok(Outcome { pass: report.pass, lines })
}

pub fn run(args: &RunArgs) -> Result<Outcome, CliError> {
    match args.command {
        Command::Axioms => run_axioms(args),
        Command::Markov => run_markov(args),
        _ => run_pipeline(args),
    }
}
