//! Acceptance gate: one PASS/FAIL line per criterion. Criteria listed in
//! `KNOWN_RED` fail for a documented reason and do not fail the target;
//! any other failure does.

use std::time::{Duration, Instant};

use pcea_cli::commands::allocate_table;
use pcea_cli::{parse_input, Format};
use pcea_core::axioms::{
    characterization_oracle, check_consistency1, dual_characterization_oracle, replay, run_battery, GenConfig,
};
use pcea_core::inequality::{needs_strict_improvement, verify_threshold_monotonicity};
use pcea_core::ratio::ratios;
use pcea_core::rules::lambda;
use pcea_core::{
    allocate, compute_lambda, compute_mu, dual_problem, trace_path, trace_tree, young_eval, Auxiliary, Axiom,
    ClaimsProblem, Ratio, RuleSpec, Threshold, Witness,
};
use rand::Rng;

type Outcome = Result<String, String>;

/// Criteria that cannot pass as stated; see the README.
const KNOWN_RED: &[(usize, &str)] = &[(
    7,
    "the bundled expectations list composition up for the P-CEA family, but a fixed threshold re-applies \
     the baseline to the residual claims (witness reported above)",
)];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn three_agents() -> ClaimsProblem {
    ClaimsProblem::new(ratios(&[10, 50, 70]), 100.into()).unwrap()
}

fn awards(rule: &RuleSpec, p: &ClaimsProblem) -> Vec<Ratio> {
    allocate(rule, p).unwrap().into_awards()
}

fn frac(pairs: &[(i64, i64)]) -> Vec<Ratio> {
    pairs.iter().map(|&(n, d)| Ratio::frac(n, d)).collect()
}

fn criterion_1() -> Outcome {
    let problems = parse_input("claims = [\"10\", \"50\", \"70\"]\nestate = \"100\"\n", "three.toml").unwrap();
    let rules: Vec<RuleSpec> =
        ["proportional", "cea", "cel", "alpha-min", "pcea:5", "pcea:20", "pcea:40"].iter().map(|r| r.parse().unwrap()).collect();
    let text = allocate_table(&problems, &rules, &Format::default()).map_err(|e| e.to_string())?;
    let expected = [
        "Proportional,7.692,38.462,53.846",
        "CEA,10,45,45",
        "CEL,0,40,60",
        "alpha_min,10,38,52",
        "psi^5,8.696,38.261,53.043",
        "psi^20,10,38.75,51.25",
        "psi^40,10,42.5,47.5",
    ];
    let rows: Vec<String> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("rule,"))
        .map(|l| l.split(',').take(4).collect::<Vec<_>>().join(","))
        .collect();
    ensure(rows == expected, || format!("rendered rows {rows:?}"))?;
    let p = three_agents();
    ensure(awards(&RuleSpec::Proportional, &p) == frac(&[(100, 13), (500, 13), (700, 13)]), || "P exact".into())?;
    ensure(awards(&RuleSpec::pcea(5), &p) == frac(&[(200, 23), (880, 23), (1220, 23)]), || "psi^5 exact".into())?;
    Ok("7 rules x 3 agents byte-identical at 3 decimals; exact 100/13 and 200/23".into())
}

fn criterion_2() -> Outcome {
    let p = ClaimsProblem::new(ratios(&[50, 100]), 100.into()).unwrap();
    ensure(awards(&RuleSpec::pcea(25), &p) == frac(&[(75, 2), (125, 2)]), || "psi^25".into())?;
    ensure(awards(&RuleSpec::Proportional, &p) == frac(&[(100, 3), (200, 3)]), || "proportional".into())?;
    ensure(awards(&RuleSpec::Cea, &p) == ratios(&[50, 50]), || "CEA".into())?;
    Ok("psi^25 = (75/2, 125/2), P = (100/3, 200/3), CEA = (50, 50)".into())
}

fn criterion_3() -> Outcome {
    let p = three_agents();
    ensure(compute_lambda(&p).value == Ratio::from(45), || "lambda".into())?;
    ensure(compute_mu(&p).value == Ratio::from(10), || "mu".into())?;
    ensure(awards(&RuleSpec::Cel, &p) == ratios(&[0, 40, 60]), || "CEL".into())?;
    Ok("lambda = 45, mu = 10, CEL = (0, 40, 60)".into())
}

fn criterion_4() -> Outcome {
    let cfg = GenConfig::with_seed(4);
    let mut alpha_cases = 0;
    for t in 0..1000 {
        let mut rng = cfg.trial_rng(t);
        let p = cfg.random_problem(&mut rng, false).ok_or("generator gave up")?;
        let lam = lambda(&p);
        let prop = awards(&RuleSpec::Proportional, &p);
        ensure(awards(&RuleSpec::pcea(0), &p) == prop, || format!("psi^0 != P on {p:?}"))?;
        let cea = awards(&RuleSpec::Cea, &p);
        let above = &lam + Ratio::frac(rng.random_range(0..=400), 4);
        for l in [lam.clone(), above] {
            ensure(awards(&RuleSpec::Pcea(l.clone()), &p) == cea, || format!("psi^{l} != CEA on {p:?}"))?;
        }
        if p.smallest_claim() < &(p.estate() / Ratio::from(p.agents())) {
            alpha_cases += 1;
            let psi = awards(&RuleSpec::Pcea(p.smallest_claim().clone()), &p);
            ensure(awards(&RuleSpec::AlphaMin, &p) == psi, || format!("alpha_min != psi^c1 on {p:?}"))?;
        }
        let l = p.total_claims() * Ratio::frac(rng.random_range(0..=64), 64);
        ensure(young_eval(&p, &l).into_awards() == awards(&RuleSpec::Pcea(l.clone()), &p), || {
            format!("Young != psi^{l} on {p:?}")
        })?;
    }
    Ok(format!("1000 problems, alpha_min identity exercised on {alpha_cases}"))
}

fn oracle_detail(report: &pcea_core::axioms::OracleReport) -> Result<String, String> {
    ensure(report.family.all_pass(), || {
        let bad: Vec<String> = report.family.verdicts.iter().filter(|v| !v.passed).map(|v| v.to_string()).collect();
        format!("family failed: {bad:?}")
    })?;
    let mut failed = Vec::new();
    for rival in &report.rivals {
        let v = rival.verdicts.iter().find(|v| !v.passed).ok_or_else(|| format!("{} passes both", rival.rule))?;
        ensure(v.replay().unwrap_or(false), || format!("witness for {} does not replay", rival.rule))?;
        failed.push(format!("{} fails {}", rival.rule.label(), v.axiom));
    }
    Ok(failed.join(", "))
}

fn criterion_5() -> Outcome {
    let cfg = GenConfig::with_seed(5).trials(1000).samples(200);
    let report = characterization_oracle(&cfg, &Ratio::from(20)).map_err(|e| e.to_string())?;
    let detail = oracle_detail(&report)?;
    let failed_axiom = |rule: &RuleSpec, axiom: Axiom| {
        report.rivals.iter().any(|r| &r.rule == rule && r.verdicts.iter().any(|v| v.axiom == axiom && !v.passed))
    };
    ensure(failed_axiom(&RuleSpec::Proportional, Axiom::Slba), || "P does not fail SLBA".into())?;
    ensure(failed_axiom(&RuleSpec::Cea, Axiom::Nar), || "CEA does not fail NAR".into())?;

    let p = ClaimsProblem::new(ratios(&[10, 40, 50, 60]), 120.into()).unwrap();
    let moved = ratios(&[10, 40, 20, 90]);
    let before = awards(&RuleSpec::Cea, &p);
    let after = awards(&RuleSpec::Cea, &p.with_claims(moved.clone()).unwrap());
    ensure(&before[2] + &before[3] == Ratio::frac(220, 3), || "coalition sum before".into())?;
    ensure(&after[2] + &after[3] == Ratio::from(70), || "coalition sum after".into())?;
    let w = Witness::new(p, Auxiliary::Reallocation { coalition: vec![2, 3], claims: moved });
    ensure(replay(Axiom::Nar, &RuleSpec::Cea, Some(&Threshold::primal(20)), &w).unwrap(), || {
        "CEA witness does not replay".into()
    })?;
    Ok(format!("psi^20 passes NAR and SLBA on 1000 x 200; {detail}; CEA witness 220/3 -> 70"))
}

fn criterion_6() -> Outcome {
    let cfg = GenConfig::with_seed(6).trials(1000).samples(200);
    let report = dual_characterization_oracle(&cfg, &Ratio::from(20)).map_err(|e| e.to_string())?;
    let detail = oracle_detail(&report)?;
    for t in 0..1000 {
        let mut rng = cfg.trial_rng(t);
        let p = cfg.random_problem(&mut rng, true).ok_or("generator gave up")?;
        let l = p.total_claims() * Ratio::frac(rng.random_range(0..=32), 32);
        let psi = RuleSpec::Pcea(l.clone());
        let twice = RuleSpec::DualOf(Box::new(RuleSpec::DualOf(Box::new(psi.clone()))));
        ensure(awards(&twice, &p) == awards(&psi, &p), || format!("involution on {p:?}"))?;
        let d = dual_problem(&p).unwrap();
        let direct: Vec<Ratio> = p.claims().iter().zip(awards(&psi, &d)).map(|(c, y)| c - y).collect();
        ensure(awards(&RuleSpec::PceaDual(l.clone()), &p) == direct, || format!("dual identity on {p:?}"))?;
        let prop = RuleSpec::Proportional;
        ensure(awards(&prop.dual(), &p) == awards(&prop, &p), || format!("P not self-dual on {p:?}"))?;
    }
    Ok(format!("psi_dual^20 passes NAR and SUBL at the dual clamp on 1000 x 200; {detail}; identities on 1000 problems"))
}

fn criterion_7() -> Outcome {
    let cfg = GenConfig::with_seed(7).trials(200).samples(20);
    let mut mismatches = Vec::new();
    let mut cells = 0;
    for (rule, l) in [
        (RuleSpec::Proportional, Threshold::primal(20)),
        (RuleSpec::Cea, Threshold::primal(20)),
        (RuleSpec::AlphaMin, Threshold::smallest_claim()),
        (RuleSpec::pcea(20), Threshold::primal(20)),
        (RuleSpec::pcea(5), Threshold::primal(5)),
    ] {
        for entry in run_battery(&rule, &cfg, &l).map_err(|e| e.to_string())? {
            if entry.expected.is_some() {
                cells += 1;
            }
            if !entry.matches() {
                let v = &entry.verdict;
                let replays = v.replay().unwrap_or(false);
                let observed = if v.passed { "pass" } else { "fail" };
                mismatches.push(format!("{} {} observed {observed} (witness replays: {replays})", rule.label(), v.axiom));
            }
        }
    }
    let w = Witness::new(three_agents(), Auxiliary::Subset { agents: vec![1, 2] });
    ensure(replay(Axiom::Consistency, &RuleSpec::AlphaMin, None, &w).unwrap(), || "alpha_min witness".into())?;
    let reduced = ClaimsProblem::new(ratios(&[50, 70]), 90.into()).unwrap();
    ensure(awards(&RuleSpec::AlphaMin, &reduced) == ratios(&[45, 45]), || "reduced alpha_min".into())?;
    ensure(check_consistency1(&RuleSpec::AlphaMin, &cfg).unwrap().passed, || "Consistency1".into())?;
    if mismatches.is_empty() {
        Ok(format!("{cells} expected cells reproduced; alpha_min (45,45) != (38,52) witness; Consistency1 holds"))
    } else {
        Err(format!("{cells} expected cells, mismatches: {}", mismatches.join("; ")))
    }
}

fn criterion_8() -> Outcome {
    let cfg = GenConfig::with_seed(8);
    let mut strict_pairs = 0;
    for t in 0..200 {
        let mut rng = cfg.trial_rng(t);
        let p = cfg.random_problem(&mut rng, false).ok_or("generator gave up")?;
        let lam = lambda(&p);
        let mut grid: Vec<Ratio> = (0..5).map(|_| &lam * Ratio::frac(rng.random_range(0..=48), 48)).collect();
        grid.sort();
        strict_pairs += grid.windows(2).filter(|w| needs_strict_improvement(&p, &w[0], &w[1])).count();
        let v = verify_threshold_monotonicity(&p, &grid).map_err(|e| e.to_string())?;
        ensure(v.passed, || format!("{v} on {p:?}"))?;
    }
    ensure(strict_pairs > 0, || "no strict instance exercised".into())?;
    Ok(format!("200 problems x 5-point grids; strict dominance verified on {strict_pairs} pairs"))
}

fn criterion_9() -> Outcome {
    let p = three_agents();
    let smaller = ClaimsProblem::new(ratios(&[10, 50, 70]), 35.into()).unwrap();
    ensure(compute_lambda(&smaller).value == Ratio::frac(25, 2), || "lambda' != 12.5".into())?;
    let rule = RuleSpec::pcea(40);
    let direct = awards(&rule, &smaller);
    let staged = awards(&rule, &ClaimsProblem::new(awards(&rule, &p), 35.into()).unwrap());
    ensure(direct == staged, || format!("direct {direct:?} vs two-stage {staged:?}"))?;
    let w = Witness::new(p, Auxiliary::SecondEstate { estate: 35.into() });
    ensure(!replay(Axiom::CompositionDown, &rule, None, &w).unwrap(), || "checker flags the identity".into())?;
    Ok(format!("lambda' = 25/2 < 40, both routes give {direct:?}"))
}

fn criterion_10() -> Outcome {
    let claims = ratios(&[50, 100]);
    let at = |t: &pcea_core::PathTrace, e: i64| t.awards_at(&Ratio::from(e)).map(<[Ratio]>::to_vec);
    let psi = trace_path(&RuleSpec::pcea(25), &claims, 7).unwrap();
    ensure(at(&psi, 50) == Some(ratios(&[25, 25])), || "psi^25 kink (25,25)".into())?;
    ensure(at(&psi, 100) == Some(frac(&[(75, 2), (125, 2)])), || "psi^25 at e=100".into())?;
    let cea = trace_path(&RuleSpec::Cea, &claims, 7).unwrap();
    ensure(at(&cea, 100) == Some(ratios(&[50, 50])), || "CEA kink (50,50)".into())?;
    let tree = trace_tree(&Ratio::from(30), &[ratios(&[10, 50])], 7).unwrap();
    ensure(at(&tree[0], 20) == Some(ratios(&[10, 10])), || "Figure 2 kink (10,10)".into())?;
    let mut traces = vec![psi, cea];
    traces.extend(tree);
    for rule in ["proportional", "cel", "alpha-min", "pcea:5", "pcea-dual:20", "dual:cea"] {
        traces.push(trace_path(&rule.parse().unwrap(), &ratios(&[10, 50, 70]), 13).unwrap());
    }
    ensure(traces.iter().all(|t| t.is_monotone()), || "non-monotone trace".into())?;
    Ok(format!("kink rows exact; {} traces monotone", traces.len()))
}

fn main() {
    let criteria: [(usize, &str, fn() -> Outcome, Duration); 10] = [
        (1, "three-agent awards golden", criterion_1, Duration::from_secs(1)),
        (2, "two-agent awards golden", criterion_2, Duration::from_secs(1)),
        (3, "waterlines", criterion_3, Duration::MAX),
        (4, "identity chain", criterion_4, Duration::from_secs(10)),
        (5, "NAR + SLBA oracle", criterion_5, Duration::from_secs(60)),
        (6, "NAR + SUBL dual oracle", criterion_6, Duration::MAX),
        (7, "property table", criterion_7, Duration::MAX),
        (8, "threshold monotonicity", criterion_8, Duration::MAX),
        (9, "composition down, second case", criterion_9, Duration::MAX),
        (10, "award paths", criterion_10, Duration::MAX),
    ];
    let mut unexpected = Vec::new();
    for (n, name, check, budget) in criteria {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > budget {
            outcome = Err(format!("took {elapsed:.2?}, budget {budget:?}"));
        }
        let known = KNOWN_RED.iter().find(|(k, _)| *k == n);
        match (&outcome, known) {
            (Ok(msg), _) => println!("criterion {n:>2} PASS  {name} [{elapsed:.2?}]: {msg}"),
            (Err(msg), Some((_, why))) => {
                println!("criterion {n:>2} FAIL  {name} [{elapsed:.2?}]: {msg}");
                println!("             known: {why}");
            }
            (Err(msg), None) => {
                println!("criterion {n:>2} FAIL  {name} [{elapsed:.2?}]: {msg}");
                unexpected.push(n);
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
