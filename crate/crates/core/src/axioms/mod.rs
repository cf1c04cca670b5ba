//! Seeded randomized checkers for the fairness axioms.
//!
//! Every checker draws `cfg.trials` random problems, each from its own
//! counter-derived random stream, and evaluates `cfg.samples_per_problem`
//! instances of the axiom's quantifiers on each (subsets, second estates,
//! reallocations, ...). Conditions are exact except for continuity. The first
//! violation in trial order is reported together with a witness that replays
//! it, independently of how trials were scheduled across threads.

mod eval;
pub mod gen;

use std::sync::atomic::{AtomicUsize, Ordering};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::problem::ClaimsProblem;
use crate::ratio::Ratio;
use crate::rules::{allocate, lambda, RuleSpec};
use crate::verdict::{Auxiliary, Threshold, ThresholdValue, Verdict, Witness};
use crate::Axiom;

pub(crate) use eval::{evaluate, Outcome};
pub use gen::{GenConfig, ProblemFilter};

/// Re-evaluates one witness. `Ok(true)` means the instance violates the axiom.
pub fn replay(axiom: Axiom, rule: &RuleSpec, threshold: Option<&Threshold>, w: &Witness) -> Result<bool, Error> {
    rule.validate()?;
    let default = Threshold::primal(0);
    let threshold = threshold.unwrap_or(&default);
    Ok(matches!(evaluate(axiom, rule, threshold, w), Outcome::Violated(_)))
}

#[derive(Default)]
struct TrialResult {
    evaluated: u64,
    skipped: u64,
    failure: Option<(Witness, String)>,
}

/// Runs `axiom` against `rule` on the random suite described by `cfg`.
/// `threshold` is only consulted by the threshold-dependent axioms.
pub fn run_check(axiom: Axiom, rule: &RuleSpec, cfg: &GenConfig, threshold: &Threshold) -> Result<Verdict, Error> {
    rule.validate()?;
    // Trials after the earliest failure seen so far cannot change the verdict;
    // every trial before it still runs, so the outcome is schedule-independent.
    let first_failure = AtomicUsize::new(usize::MAX);
    let results: Vec<TrialResult> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            if t > first_failure.load(Ordering::Relaxed) {
                return TrialResult::default();
            }
            let r = run_trial(axiom, rule, cfg, threshold, t);
            if r.failure.is_some() {
                first_failure.fetch_min(t, Ordering::Relaxed);
            }
            r
        })
        .collect();
    let mut evaluated = 0;
    let mut skipped = 0;
    for r in results {
        evaluated += r.evaluated;
        skipped += r.skipped;
        if let Some((witness, detail)) = r.failure {
            let mut v = Verdict::fail(axiom, rule.clone(), evaluated, cfg.seed, witness, detail);
            v.skipped = skipped;
            return Ok(v.with_threshold(axiom.uses_threshold().then(|| threshold.clone())));
        }
    }
    let mut v = Verdict::pass(axiom, rule.clone(), evaluated, cfg.seed);
    v.skipped = skipped;
    Ok(v.with_threshold(axiom.uses_threshold().then(|| threshold.clone())))
}

fn run_trial(axiom: Axiom, rule: &RuleSpec, cfg: &GenConfig, threshold: &Threshold, trial: usize) -> TrialResult {
    let mut rng = cfg.trial_rng(trial);
    let mut result = TrialResult::default();
    let Some(p) = cfg.random_problem(&mut rng, rule.requires_positive_claims()) else {
        result.skipped = 1;
        return result;
    };
    let x = match allocate(rule, &p) {
        Ok(x) => x.into_awards(),
        Err(e) => {
            result.evaluated = 1;
            result.failure = Some((Witness::new(p, Auxiliary::None), format!("engine error: {e}")));
            return result;
        }
    };
    for aux in instances(axiom, rule, cfg, threshold, &p, &mut rng) {
        let w = Witness::new(p.clone(), aux);
        match eval::evaluate_with(axiom, rule, threshold, &w, &x) {
            Outcome::Holds => result.evaluated += 1,
            Outcome::Skipped => result.skipped += 1,
            Outcome::Violated(msg) => {
                result.evaluated += 1;
                result.failure = Some((w, msg));
                break;
            }
        }
    }
    result
}

/// Draws the auxiliary data for the instances evaluated on `p`.
fn instances<R: Rng>(
    axiom: Axiom,
    rule: &RuleSpec,
    cfg: &GenConfig,
    threshold: &Threshold,
    p: &ClaimsProblem,
    rng: &mut R,
) -> Vec<Auxiliary> {
    let n = p.agents();
    let samples = cfg.samples_per_problem.max(1);
    let everyone: Vec<usize> = (0..n).collect();
    match axiom {
        Axiom::ResourceMonotonicity | Axiom::CompositionDown | Axiom::CompositionUp | Axiom::PathNesting => {
            let top = p.total_claims();
            (0..samples)
                .map(|_| {
                    let estate = match axiom {
                        Axiom::ResourceMonotonicity => gen::random_between(rng, &Ratio::zero(), top),
                        Axiom::CompositionUp => gen::random_between(rng, p.estate(), top),
                        _ => gen::random_between(rng, &Ratio::zero(), p.estate()),
                    };
                    Auxiliary::SecondEstate { estate }
                })
                .collect()
        }
        Axiom::Anonymity => {
            (0..samples).map(|_| Auxiliary::Permutation { perm: gen::random_permutation(rng, n) }).collect()
        }
        Axiom::Consistency | Axiom::YoungRepresentation => {
            if n < 2 {
                return vec![Auxiliary::Subset { agents: vec![] }];
            }
            (0..samples)
                .filter_map(|_| gen::random_subset(rng, &everyone, 1, n - 1))
                .map(|agents| Auxiliary::Subset { agents })
                .collect()
        }
        Axiom::Consistency1 => {
            if n < 2 {
                return vec![];
            }
            let first = p.canonicalize().perm[0];
            let others: Vec<usize> = everyone.iter().copied().filter(|&i| i != first).collect();
            (0..samples)
                .filter_map(|_| gen::random_subset(rng, &others, 0, n - 2))
                .map(|mut agents| {
                    agents.push(first);
                    agents.sort_unstable();
                    Auxiliary::Subset { agents }
                })
                .collect()
        }
        Axiom::ConverseConsistency => converse_candidates(rule, p, samples, rng),
        Axiom::Nar => {
            let l = threshold.resolve(p);
            let upper: Vec<usize> = (0..n).filter(|&i| p.claims()[i] > l).collect();
            (0..samples)
                .filter_map(|_| {
                    let coalition = gen::random_subset(rng, &upper, 2, upper.len())?;
                    let claims = redistribute(rng, p, &l, &[coalition.clone()]);
                    Some(Auxiliary::Reallocation { coalition, claims })
                })
                .collect()
        }
        Axiom::Decentralizability => {
            let l = threshold.resolve(p);
            let upper: Vec<usize> = (0..n).filter(|&i| p.claims()[i] > l).collect();
            (0..samples)
                .filter_map(|_| {
                    let group = gen::random_subset(rng, &everyone, 1, n)?;
                    let inside: Vec<usize> = upper.iter().copied().filter(|i| group.contains(i)).collect();
                    let outside: Vec<usize> = upper.iter().copied().filter(|i| !group.contains(i)).collect();
                    let claims = redistribute(rng, p, &l, &[inside, outside]);
                    Some(Auxiliary::Reallocation { coalition: group, claims })
                })
                .collect()
        }
        Axiom::Continuity => {
            let scale = continuity_scale(p);
            (0..samples.min(4))
                .map(|_| Auxiliary::Perturbation { direction: continuity_direction(rng, p, &scale), scale: scale.clone() })
                .collect()
        }
        _ => vec![Auxiliary::None],
    }
}

/// Claims with every group's members moved to `L + share` of the group's
/// slack above `L`; claims outside the groups are untouched.
fn redistribute<R: Rng>(rng: &mut R, p: &ClaimsProblem, l: &Ratio, groups: &[Vec<usize>]) -> Vec<Ratio> {
    let mut claims = p.claims().to_vec();
    for g in groups.iter().filter(|g| g.len() >= 2) {
        let slack: Ratio = g.iter().map(|&i| &p.claims()[i] - l).sum();
        for (&i, share) in g.iter().zip(gen::random_split(rng, &slack, g.len())) {
            claims[i] = l + share;
        }
    }
    claims
}

/// The rule's own award first, then the awards of other rules and random
/// budget-preserving pair transfers away from the rule's award.
fn converse_candidates<R: Rng>(rule: &RuleSpec, p: &ClaimsProblem, samples: usize, rng: &mut R) -> Vec<Auxiliary> {
    let mut out = vec![Auxiliary::None];
    if p.agents() <= 2 {
        return out;
    }
    let mut sorted = p.claims().to_vec();
    sorted.sort();
    let catalog = [
        RuleSpec::Proportional,
        RuleSpec::Cea,
        RuleSpec::Cel,
        RuleSpec::AlphaMin,
        RuleSpec::Pcea(sorted[0].clone()),
        RuleSpec::Pcea(sorted[sorted.len() / 2].clone()),
        RuleSpec::Pcea(lambda(p) / Ratio::from(2)),
    ];
    for other in catalog.iter().filter(|r| *r != rule) {
        if let Ok(y) = allocate(other, p) {
            out.push(Auxiliary::Candidate { awards: y.into_awards() });
        }
    }
    let Ok(x) = allocate(rule, p) else { return out };
    let x = x.into_awards();
    let n = p.agents();
    for _ in 0..samples {
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n);
        let room = x[i].clone().min(&p.claims()[j] - &x[j]);
        if i == j || !room.is_positive() {
            continue;
        }
        let t = gen::random_between(rng, &Ratio::zero(), &room);
        let mut y = x.clone();
        y[i] -= &t;
        y[j] += &t;
        out.push(Auxiliary::Candidate { awards: y });
    }
    out
}

/// Largest perturbation step that keeps every perturbed pair a claims
/// problem with positive estate.
fn continuity_scale(p: &ClaimsProblem) -> Ratio {
    let room = Ratio::from(4 * (p.agents() + 1));
    let by_deficit = p.deficit() / &room;
    let by_estate = p.estate() / &room;
    Ratio::one().min(by_deficit).min(by_estate)
}

/// Direction entries in `{-1, -3/4, ..., 1}`; claims smaller than the scale
/// only move up so they stay non-negative.
fn continuity_direction<R: Rng>(rng: &mut R, p: &ClaimsProblem, scale: &Ratio) -> Vec<Ratio> {
    let mut direction: Vec<Ratio> = (0..=p.agents()).map(|_| Ratio::frac(rng.random_range(-4..=4), 4)).collect();
    for (d, c) in direction.iter_mut().zip(p.claims()) {
        if c < scale {
            *d = d.abs();
        }
    }
    direction
}

macro_rules! checker {
    ($(#[$doc:meta])* $name:ident, $axiom:expr) => {
        $(#[$doc])*
        pub fn $name(rule: &RuleSpec, cfg: &GenConfig) -> Result<Verdict, Error> {
            run_check($axiom, rule, cfg, &Threshold::primal(0))
        }
    };
}

macro_rules! threshold_checker {
    ($(#[$doc:meta])* $name:ident, $axiom:expr) => {
        $(#[$doc])*
        pub fn $name(rule: &RuleSpec, cfg: &GenConfig, threshold: &Threshold) -> Result<Verdict, Error> {
            run_check($axiom, rule, cfg, threshold)
        }
    };
}

checker!(
    /// Non-negative, claim-bounded, budget-balanced awards.
    check_feasibility,
    Axiom::Feasibility
);
checker!(check_equal_treatment, Axiom::EqualTreatment);
checker!(
    /// Awards and losses both weakly increase with the claim.
    check_order_preservation,
    Axiom::OrderPreservation
);
checker!(check_resource_monotonicity, Axiom::ResourceMonotonicity);
checker!(check_anonymity, Axiom::Anonymity);
checker!(check_consistency, Axiom::Consistency);
checker!(
    /// Consistency on subsets that keep a smallest claimant.
    check_consistency1,
    Axiom::Consistency1
);
checker!(check_converse_consistency, Axiom::ConverseConsistency);
checker!(check_composition_down, Axiom::CompositionDown);
checker!(check_composition_up, Axiom::CompositionUp);
checker!(check_young, Axiom::YoungRepresentation);
checker!(
    /// Sampled, tolerance-based continuity; see [`Axiom::Continuity`].
    check_continuity_sampled,
    Axiom::Continuity
);
threshold_checker!(
    /// Redistributing claims inside a coalition of agents above `L`, keeping
    /// every claim at least `L`, leaves the coalition's total award unchanged.
    /// The rule's own threshold is frozen at its value on the original problem.
    check_nar,
    Axiom::Nar
);
threshold_checker!(
    /// Every agent receives at least `min(c_i, L)`.
    check_slba,
    Axiom::Slba
);
threshold_checker!(
    /// Agents with `c_i <= L` receive their full claim.
    check_pinned,
    Axiom::Pinned
);
threshold_checker!(
    /// Every agent loses at least `min(c_i, L)`; pair with a dual clamp.
    check_subl,
    Axiom::Subl
);
threshold_checker!(check_decentralizability, Axiom::Decentralizability);

/// Verdicts of one rule on a set of axioms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleReport {
    pub rule: RuleSpec,
    pub verdicts: Vec<Verdict>,
}

impl RuleReport {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn any_fail(&self) -> bool {
        self.verdicts.iter().any(|v| !v.passed)
    }
}

/// Two-sided test of a characterization: the family member passes both
/// axioms and every rival fails at least one of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub family: RuleReport,
    pub rivals: Vec<RuleReport>,
}

impl OracleReport {
    pub fn holds(&self) -> bool {
        self.family.all_pass() && self.rivals.iter().all(RuleReport::any_fail)
    }
}

fn rule_report(rule: RuleSpec, axioms: &[Axiom], cfg: &GenConfig, threshold: &Threshold) -> Result<RuleReport, Error> {
    let verdicts = axioms.iter().map(|&a| run_check(a, &rule, cfg, threshold)).collect::<Result<_, _>>()?;
    Ok(RuleReport { rule, verdicts })
}

/// The P-CEA rule with threshold `L` satisfies NAR and SLBA at `L`; the
/// proportional, CEA, CEL and alpha-min rules and the dual P-CEA rule each
/// violate one of the two.
pub fn characterization_oracle(cfg: &GenConfig, threshold: &Ratio) -> Result<OracleReport, Error> {
    let axioms = [Axiom::Nar, Axiom::Slba];
    let t = Threshold::primal(threshold.clone());
    let family = rule_report(RuleSpec::Pcea(threshold.clone()), &axioms, cfg, &t)?;
    let rivals = [
        RuleSpec::Proportional,
        RuleSpec::Cea,
        RuleSpec::Cel,
        RuleSpec::AlphaMin,
        RuleSpec::PceaDual(threshold.clone()),
    ]
    .into_iter()
    .map(|r| rule_report(r, &axioms, cfg, &t))
    .collect::<Result<_, _>>()?;
    Ok(OracleReport { family, rivals })
}

/// Dual counterpart: the dual P-CEA rule satisfies NAR and SUBL with the
/// threshold clamped by the water level of the dual problem; the
/// proportional, CEA, CEL and P-CEA rules each violate one of the two.
pub fn dual_characterization_oracle(cfg: &GenConfig, threshold: &Ratio) -> Result<OracleReport, Error> {
    let axioms = [Axiom::Nar, Axiom::Subl];
    let t = Threshold::dual(threshold.clone());
    let family = rule_report(RuleSpec::PceaDual(threshold.clone()), &axioms, cfg, &t)?;
    let rivals = [RuleSpec::Proportional, RuleSpec::Cea, RuleSpec::Cel, RuleSpec::Pcea(threshold.clone())]
        .into_iter()
        .map(|r| rule_report(r, &axioms, cfg, &t))
        .collect::<Result<_, _>>()?;
    Ok(OracleReport { family, rivals })
}

/// Alpha-min against NAR and SLBA at `L = c_1`, split by the two branches of
/// its definition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaMinReport {
    /// Problems with `c_1 < e / n`; both axioms are expected to hold.
    pub below_equal_share: RuleReport,
    /// Problems with `c_1 >= e / n`. Here `λ = e / n`, so the clamped
    /// threshold is `e / n` and equal division meets it; recorded separately.
    pub at_least_equal_share: RuleReport,
}

pub fn check_alpha_min_characterization(cfg: &GenConfig) -> Result<AlphaMinReport, Error> {
    let axioms = [Axiom::Nar, Axiom::Slba];
    let t = Threshold::smallest_claim();
    let below = cfg.clone().filter(ProblemFilter::SmallestBelowEqualShare);
    let above = cfg.clone().filter(ProblemFilter::SmallestAtLeastEqualShare);
    Ok(AlphaMinReport {
        below_equal_share: rule_report(RuleSpec::AlphaMin, &axioms, &below, &t)?,
        at_least_equal_share: rule_report(RuleSpec::AlphaMin, &axioms, &above, &t)?,
    })
}

/// Expected outcome of `axiom` for `rule`, where known: the property table
/// for the proportional, CEA, alpha-min and P-CEA rules, plus feasibility,
/// consistency on subsets keeping the smallest claimant, and the threshold
/// axioms each family member satisfies at its own threshold.
pub fn expected(rule: &RuleSpec, axiom: Axiom, threshold: &Threshold) -> Option<bool> {
    use Axiom::*;
    let catalog = matches!(rule, RuleSpec::Proportional | RuleSpec::Cea | RuleSpec::AlphaMin | RuleSpec::Pcea(_));
    match axiom {
        Feasibility | EqualTreatment | OrderPreservation | ResourceMonotonicity | Anonymity | CompositionDown
        | CompositionUp | Consistency1
            if catalog =>
        {
            Some(true)
        }
        Consistency | ConverseConsistency | YoungRepresentation if catalog => {
            Some(!matches!(rule, RuleSpec::AlphaMin))
        }
        Nar | Slba | Pinned | Decentralizability => match (rule, &threshold.value, threshold.clamp) {
            (RuleSpec::Pcea(l), ThresholdValue::Fixed(t), crate::verdict::Clamp::Primal) if l == t => Some(true),
            _ => None,
        },
        Subl => match (rule, &threshold.value, threshold.clamp) {
            (RuleSpec::PceaDual(l), ThresholdValue::Fixed(t), crate::verdict::Clamp::Dual) if l == t => Some(true),
            _ => None,
        },
        _ => None,
    }
}

/// A verdict next to the expectation it was compared against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatteryEntry {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<bool>,
}

impl BatteryEntry {
    pub fn matches(&self) -> bool {
        self.expected.is_none_or(|e| e == self.verdict.passed)
    }
}

/// Every axiom of [`Axiom::BATTERY`] against `rule`.
pub fn run_battery(rule: &RuleSpec, cfg: &GenConfig, threshold: &Threshold) -> Result<Vec<BatteryEntry>, Error> {
    Axiom::BATTERY
        .iter()
        .map(|&axiom| {
            let verdict = run_check(axiom, rule, cfg, threshold)?;
            Ok(BatteryEntry { verdict, expected: expected(rule, axiom, threshold) })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::ratios;

    fn three_agents() -> ClaimsProblem {
        ClaimsProblem::new(ratios(&[10, 50, 70]), 100.into()).unwrap()
    }

    fn small() -> GenConfig {
        GenConfig::with_seed(11).trials(40).samples(8)
    }

    #[test]
    fn alpha_min_consistency_witness() {
        let w = Witness::new(three_agents(), Auxiliary::Subset { agents: vec![1, 2] });
        assert!(replay(Axiom::Consistency, &RuleSpec::AlphaMin, None, &w).unwrap());
        assert!(!replay(Axiom::Consistency, &RuleSpec::pcea(20), None, &w).unwrap());
        let w1 = Witness::new(three_agents(), Auxiliary::Subset { agents: vec![0, 1] });
        assert!(!replay(Axiom::Consistency1, &RuleSpec::AlphaMin, None, &w1).unwrap());
    }

    #[test]
    fn cea_nar_witness() {
        let p = ClaimsProblem::new(ratios(&[10, 40, 50, 60]), 120.into()).unwrap();
        let w = Witness::new(p, Auxiliary::Reallocation { coalition: vec![2, 3], claims: ratios(&[10, 40, 20, 90]) });
        let t = Threshold::primal(20);
        assert!(replay(Axiom::Nar, &RuleSpec::Cea, Some(&t), &w).unwrap());
        assert!(!replay(Axiom::Nar, &RuleSpec::pcea(20), Some(&t), &w).unwrap());
    }

    #[test]
    fn proportional_slba_witness() {
        let w = Witness::new(three_agents(), Auxiliary::None);
        let t = Threshold::primal(20);
        assert!(replay(Axiom::Slba, &RuleSpec::Proportional, Some(&t), &w).unwrap());
        assert!(!replay(Axiom::Slba, &RuleSpec::pcea(20), Some(&t), &w).unwrap());
        assert!(!replay(Axiom::Slba, &RuleSpec::Proportional, Some(&Threshold::primal(0)), &w).unwrap());
    }

    #[test]
    fn composition_down_second_case() {
        let w = Witness::new(three_agents(), Auxiliary::SecondEstate { estate: 35.into() });
        assert!(!replay(Axiom::CompositionDown, &RuleSpec::pcea(40), None, &w).unwrap());
    }

    #[test]
    fn equal_awards_infeasible() {
        let p = ClaimsProblem::new(ratios(&[1, 100]), 50.into()).unwrap();
        let w = Witness::new(p, Auxiliary::None);
        assert!(replay(Axiom::Feasibility, &RuleSpec::EqualAwards, None, &w).unwrap());
    }

    #[test]
    fn checkers_are_deterministic() {
        let a = check_consistency(&RuleSpec::AlphaMin, &small()).unwrap();
        let b = check_consistency(&RuleSpec::AlphaMin, &small()).unwrap();
        assert_eq!(a, b);
        assert!(!a.passed);
        assert!(a.replay().unwrap());
    }

    #[test]
    fn pcea_battery() {
        let rule = RuleSpec::pcea(20);
        for entry in run_battery(&rule, &small(), &Threshold::primal(20)).unwrap() {
            match entry.verdict.axiom {
                Axiom::Subl => assert!(!entry.verdict.passed),
                Axiom::CompositionUp => {
                    assert!(!entry.verdict.passed);
                    assert!(entry.verdict.replay().unwrap());
                }
                _ => assert!(entry.verdict.passed, "{}", entry.verdict),
            }
        }
    }

    #[test]
    fn composition_up_rebuilds_the_baseline() {
        // (25, 25) at e = 50 leaves residual claims (25, 75), on which the
        // threshold pays (25, 25) again instead of (12.5, 37.5).
        let p = ClaimsProblem::new(ratios(&[50, 100]), 50.into()).unwrap();
        let w = Witness::new(p, Auxiliary::SecondEstate { estate: 100.into() });
        assert!(replay(Axiom::CompositionUp, &RuleSpec::pcea(25), None, &w).unwrap());
        assert!(!replay(Axiom::CompositionUp, &RuleSpec::Proportional, None, &w).unwrap());
        assert!(!replay(Axiom::CompositionUp, &RuleSpec::Cea, None, &w).unwrap());
    }

    #[test]
    fn alpha_min_row() {
        let cfg = small();
        assert!(!check_converse_consistency(&RuleSpec::AlphaMin, &cfg).unwrap().passed);
        assert!(!check_young(&RuleSpec::AlphaMin, &cfg).unwrap().passed);
        assert!(check_consistency1(&RuleSpec::AlphaMin, &cfg).unwrap().passed);
    }

    #[test]
    fn oracles_small() {
        let cfg = small();
        let r = characterization_oracle(&cfg, &Ratio::from(20)).unwrap();
        assert!(r.holds(), "{r:#?}");
        let d = dual_characterization_oracle(&cfg, &Ratio::from(20)).unwrap();
        assert!(d.holds(), "{d:#?}");
        let a = check_alpha_min_characterization(&cfg).unwrap();
        assert!(a.below_equal_share.all_pass());
    }
}
