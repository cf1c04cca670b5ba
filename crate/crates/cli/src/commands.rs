//! The subcommands, as functions from parsed input to output text.

use pcea_core::axioms::{run_battery, BatteryEntry};
use pcea_core::inequality::{verify_threshold_monotonicity, OrderingResult};
use pcea_core::rules::{dual_effective_threshold, effective_threshold, lambda};
use pcea_core::{
    allocate, compute_lambda, compute_mu, leximin_compare, lorenz_compare, trace_path, Axiom, GenConfig, LorenzCurve,
    Ratio, Relation, RuleSpec, Threshold,
};
use serde::Serialize;

use crate::error::CliError;
use crate::input::LoadedProblem;
use crate::render::Format;

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn join(values: &[Ratio], fmt: &Format) -> String {
    values.iter().map(|v| fmt.render(v)).collect::<Vec<_>>().join(",")
}

/// The threshold in force for a P-CEA style rule and the 1-based agents at
/// or below it.
fn threshold_columns(rule: &RuleSpec, lp: &LoadedProblem, fmt: &Format) -> (String, String, String) {
    let p = &lp.problem;
    let l_eff = match rule {
        RuleSpec::Pcea(l) => Some(effective_threshold(p, l)),
        RuleSpec::PceaDual(l) => dual_effective_threshold(p, l),
        _ => None,
    };
    match l_eff {
        None => (String::new(), String::new(), String::new()),
        Some(l) => {
            let s0: Vec<String> =
                p.claims().iter().enumerate().filter(|(_, c)| *c <= &l).map(|(i, _)| (i + 1).to_string()).collect();
            (fmt.render(&l), s0.len().to_string(), s0.join(" "))
        }
    }
}

fn table(lp: &LoadedProblem, rules: &[RuleSpec], fmt: &Format) -> Result<String, CliError> {
    let p = &lp.problem;
    let mut out = String::new();
    out += &format!("# claims={} estate={}\n", join(p.claims(), fmt).replace(',', " "), fmt.render(p.estate()));
    out += &format!("# lambda={} mu={}\n", fmt.render(&compute_lambda(p).value), fmt.render(&compute_mu(p).value));
    let header: Vec<String> = lp.labels.iter().map(|l| csv_field(l)).collect();
    out += &format!("rule,{},L_eff,k,S0\n", header.join(","));
    for rule in rules {
        let x = allocate(rule, p)?;
        let (l_eff, k, s0) = threshold_columns(rule, lp, fmt);
        out += &format!("{},{},{l_eff},{k},{s0}\n", csv_field(&rule.label()), join(x.awards(), fmt));
        if !x.is_feasible() {
            out += &format!("# {} is not feasible on this problem\n", rule.label());
        }
    }
    Ok(out)
}

pub fn allocate_table(problems: &[LoadedProblem], rules: &[RuleSpec], fmt: &Format) -> Result<String, CliError> {
    if rules.is_empty() {
        return Err(CliError::Usage("at least one --rule is required".into()));
    }
    let tables = problems.iter().map(|lp| table(lp, rules, fmt)).collect::<Result<Vec<_>, _>>()?;
    Ok(tables.join("\n"))
}

/// One P-CEA row per grid value, followed by the monotonicity verdict over
/// the clamped grid.
pub fn sweep(problems: &[LoadedProblem], grid: &[Ratio], fmt: &Format) -> Result<String, CliError> {
    if grid.is_empty() {
        return Err(CliError::Usage("--grid needs at least one value".into()));
    }
    let rules: Vec<RuleSpec> = grid.iter().cloned().map(RuleSpec::Pcea).collect();
    let mut blocks = Vec::new();
    for lp in problems {
        let mut block = table(lp, &rules, fmt)?;
        let lam = lambda(&lp.problem);
        let clamped: Vec<Ratio> = grid.iter().map(|l| l.clone().min(lam.clone())).collect();
        let v = verify_threshold_monotonicity(&lp.problem, &clamped)?;
        block += &format!("# {v}\n");
        blocks.push(block);
    }
    Ok(blocks.join("\n"))
}

#[derive(Serialize)]
pub struct AxiomsReport {
    pub rule: RuleSpec,
    pub seed: u64,
    pub trials: usize,
    pub samples_per_problem: usize,
    pub threshold: Threshold,
    pub matches_expected: bool,
    pub mismatches: Vec<Axiom>,
    pub results: Vec<BatteryEntry>,
}

pub fn axioms(rule: &RuleSpec, threshold: Threshold, cfg: &GenConfig) -> Result<AxiomsReport, CliError> {
    let results = run_battery(rule, cfg, &threshold)?;
    let mismatches: Vec<Axiom> = results.iter().filter(|e| !e.matches()).map(|e| e.verdict.axiom).collect();
    Ok(AxiomsReport {
        rule: rule.clone(),
        seed: cfg.seed,
        trials: cfg.trials,
        samples_per_problem: cfg.samples_per_problem,
        threshold,
        matches_expected: mismatches.is_empty(),
        mismatches,
        results,
    })
}

/// Lines describing every expectation the battery missed.
pub fn mismatch_lines(report: &AxiomsReport) -> Vec<String> {
    let word = |b: bool| if b { "pass" } else { "fail" };
    report
        .results
        .iter()
        .filter(|e| !e.matches())
        .map(|e| {
            let mut line = format!(
                "{}: expected {}, observed {}",
                e.verdict.axiom,
                word(e.expected.unwrap_or(true)),
                word(e.verdict.passed)
            );
            if let Some(d) = &e.verdict.detail {
                line += &format!(" ({d})");
            }
            line
        })
        .collect()
}

pub fn path(rule: &RuleSpec, claims: &[Ratio], grid: usize, fmt: &Format) -> Result<String, CliError> {
    let trace = trace_path(rule, claims, grid)?;
    let header: Vec<String> = (1..=claims.len()).map(|i| format!("award_{i}")).collect();
    let mut out = format!("estate,{}\n", header.join(","));
    for (e, x) in &trace.samples {
        out += &format!("{},{}\n", fmt.render(e), join(x, fmt));
    }
    Ok(out)
}

fn relation_text(r: Relation) -> &'static str {
    match r {
        Relation::StrictlyBetter => "strictly better than",
        Relation::Equal => "equal to",
        Relation::StrictlyWorse => "strictly worse than",
        Relation::Incomparable => "incomparable with",
    }
}

fn describe(order: &str, a: &RuleSpec, b: &RuleSpec, r: &OrderingResult) -> String {
    let mut line = format!("{order}: {} is {} {}", a.label(), relation_text(r.relation), b.label());
    if let Some(i) = r.first_diff_index {
        line += &format!(" (first difference at sorted position {})", i + 1);
    }
    line
}

pub fn compare(problems: &[LoadedProblem], a: &RuleSpec, b: &RuleSpec, fmt: &Format) -> Result<String, CliError> {
    let mut blocks = Vec::new();
    for lp in problems {
        let p = &lp.problem;
        let x = allocate(a, p)?.into_awards();
        let y = allocate(b, p)?.into_awards();
        let mut out = format!("# claims={} estate={}\n", join(p.claims(), fmt).replace(',', " "), fmt.render(p.estate()));
        out += &format!("{}: {}\n", a.label(), join(&x, fmt));
        out += &format!("{}: {}\n", b.label(), join(&y, fmt));
        out += &describe("leximin", a, b, &leximin_compare(&x, &y)?);
        out.push('\n');
        out += &describe("lorenz", a, b, &lorenz_compare(&x, &y)?);
        out.push('\n');
        out += &format!("cumulative {}: {}\n", a.label(), join(&LorenzCurve::new(&x).cumulative, fmt));
        out += &format!("cumulative {}: {}\n", b.label(), join(&LorenzCurve::new(&y).cumulative, fmt));
        blocks.push(out);
    }
    Ok(blocks.join("\n"))
}
