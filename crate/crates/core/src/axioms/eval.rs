//! Deterministic evaluation of one axiom instance. Generation lives in the
//! parent module; everything here depends only on the witness, so a stored
//! witness replays exactly.

use crate::error::Error;
use crate::inequality::{leximin_compare, lorenz_compare, needs_strict_improvement, Relation};
use crate::problem::{check_feasible, restrict, ClaimsProblem, Restriction};
use crate::ratio::Ratio;
use crate::rules::{allocate, compute_lambda, young_eval, RuleSpec};
use crate::verdict::{Auxiliary, Threshold, Witness};
use crate::Axiom;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Outcome {
    Holds,
    Violated(String),
    /// Premise empty or instance outside the rule's domain.
    Skipped,
}

use Outcome::{Holds, Skipped, Violated};

/// Number of halvings of the continuity perturbation.
pub(crate) const CONTINUITY_STEPS: u32 = 20;

/// Evaluates the rule on a derived problem; leaving the rule's domain skips
/// the instance instead of failing it.
macro_rules! derived {
    ($expr:expr) => {
        match $expr {
            Ok(v) => v,
            Err(Error::DualRequiresPositiveClaims) => return Skipped,
            Err(e) => return Violated(format!("engine error on derived problem: {e}")),
        }
    };
}

fn awards(rule: &RuleSpec, p: &ClaimsProblem) -> Result<Vec<Ratio>, Error> {
    allocate(rule, p).map(|x| x.into_awards())
}

fn subset_sum(values: &[Ratio], agents: &[usize]) -> Ratio {
    agents.iter().map(|&i| &values[i]).sum()
}

pub(crate) fn evaluate(axiom: Axiom, rule: &RuleSpec, threshold: &Threshold, w: &Witness) -> Outcome {
    match awards(rule, &w.problem) {
        Ok(x) => evaluate_with(axiom, rule, threshold, w, &x),
        Err(e) => Violated(format!("engine error: {e}")),
    }
}

/// [`evaluate`] with the rule's award on the witness problem supplied.
pub(crate) fn evaluate_with(axiom: Axiom, rule: &RuleSpec, threshold: &Threshold, w: &Witness, x: &[Ratio]) -> Outcome {
    let p = &w.problem;
    match (axiom, &w.auxiliary) {
        (Axiom::Feasibility, _) => match check_feasible(p, &x) {
            Ok(()) => Holds,
            Err(v) => Violated(format!("infeasible award: {v:?}")),
        },
        (Axiom::EqualTreatment, _) => equal_treatment(p, &x),
        (Axiom::OrderPreservation, _) => order_preservation(p, &x),
        (Axiom::ResourceMonotonicity, Auxiliary::SecondEstate { estate }) => resource_monotonicity(rule, p, &x, estate),
        (Axiom::Anonymity, Auxiliary::Permutation { perm }) => anonymity(rule, p, &x, perm),
        (Axiom::Consistency, Auxiliary::Subset { agents }) => consistency(rule, p, &x, agents),
        (Axiom::Consistency1, Auxiliary::Subset { agents }) => {
            let smallest = p.smallest_claim();
            if !agents.iter().any(|&i| i < p.agents() && &p.claims()[i] == smallest) {
                return Skipped;
            }
            consistency(rule, p, &x, agents)
        }
        (Axiom::ConverseConsistency, aux) => converse_consistency(rule, p, &x, aux),
        (Axiom::CompositionDown | Axiom::PathNesting, Auxiliary::SecondEstate { estate }) => {
            composition_down(rule, p, &x, estate)
        }
        (Axiom::CompositionUp, Auxiliary::SecondEstate { estate }) => composition_up(rule, p, &x, estate),
        (Axiom::YoungRepresentation, Auxiliary::Subset { agents }) => young(rule, p, &x, agents),
        (Axiom::Nar, Auxiliary::Reallocation { coalition, claims }) => {
            nar(rule, p, &x, &threshold.resolve(p), coalition, claims)
        }
        (Axiom::Decentralizability, Auxiliary::Reallocation { coalition, claims }) => {
            decentralizability(rule, p, &x, &threshold.resolve(p), coalition, claims)
        }
        (Axiom::Slba, _) => slba(p, &x, &threshold.resolve(p)),
        (Axiom::Pinned, _) => pinned(p, &x, &threshold.resolve(p)),
        (Axiom::Subl, _) => subl(p, &x, &threshold.resolve(p)),
        (Axiom::Continuity, Auxiliary::Perturbation { direction, scale }) => continuity(rule, p, &x, direction, scale),
        (Axiom::LorenzMonotonicity, Auxiliary::Thresholds { lower, upper }) => lorenz_step(p, lower, upper),
        (Axiom::Sandwich, Auxiliary::Rules { better, worse }) => sandwich_link(p, better, worse),
        _ => Skipped,
    }
}

fn equal_treatment(p: &ClaimsProblem, x: &[Ratio]) -> Outcome {
    let c = p.claims();
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            if c[i] == c[j] && x[i] != x[j] {
                return Violated(format!("agents {i} and {j} claim {} but receive {} and {}", c[i], x[i], x[j]));
            }
        }
    }
    Holds
}

fn order_preservation(p: &ClaimsProblem, x: &[Ratio]) -> Outcome {
    let c = p.claims();
    for i in 0..c.len() {
        for j in 0..c.len() {
            if i == j || c[i] < c[j] {
                continue;
            }
            if x[i] < x[j] {
                return Violated(format!("agent {i} claims more than {j} but receives less"));
            }
            if &c[i] - &x[i] < &c[j] - &x[j] {
                return Violated(format!("agent {i} claims more than {j} but loses less"));
            }
        }
    }
    Holds
}

fn resource_monotonicity(rule: &RuleSpec, p: &ClaimsProblem, x: &[Ratio], other: &Ratio) -> Outcome {
    if other == p.estate() {
        return Holds;
    }
    let q = derived!(p.with_estate(other.clone()));
    let y = derived!(awards(rule, &q));
    let (low, high) = if other > p.estate() { (x, y.as_slice()) } else { (y.as_slice(), x) };
    match low.iter().zip(high).position(|(a, b)| a > b) {
        Some(i) => Violated(format!("agent {i} loses award when the estate grows")),
        None => Holds,
    }
}

fn anonymity(rule: &RuleSpec, p: &ClaimsProblem, x: &[Ratio], perm: &[usize]) -> Outcome {
    let mut sorted = perm.to_vec();
    sorted.sort_unstable();
    if sorted != (0..p.agents()).collect::<Vec<_>>() {
        return Skipped;
    }
    let permuted: Vec<Ratio> = perm.iter().map(|&i| p.claims()[i].clone()).collect();
    let q = derived!(p.with_claims(permuted));
    let y = derived!(awards(rule, &q));
    for (k, &i) in perm.iter().enumerate() {
        if y[k] != x[i] {
            return Violated(format!("agent {i} receives {} but {} after relabelling", x[i], y[k]));
        }
    }
    Holds
}

fn consistency(rule: &RuleSpec, p: &ClaimsProblem, x: &[Ratio], agents: &[usize]) -> Outcome {
    let reduced = match restrict(p, x, agents) {
        Ok(r) => r,
        Err(_) => return Skipped,
    };
    let mut members = agents.to_vec();
    members.sort_unstable();
    members.dedup();
    let expected: Vec<Ratio> = members.iter().map(|&i| x[i].clone()).collect();
    match reduced {
        Restriction::FullAward { claims, .. } => {
            if claims == expected {
                Holds
            } else {
                Violated("reduced problem forces full awards the original award does not give".into())
            }
        }
        Restriction::Problem(q) => {
            let y = derived!(awards(rule, &q));
            if y == expected {
                Holds
            } else {
                Violated(format!("reduced problem on {members:?} yields {y:?}, original awards {expected:?}"))
            }
        }
    }
}

/// Whether `y` agrees with the rule on the two-agent subproblem `{i, j}`.
fn agrees_on_pair(rule: &RuleSpec, p: &ClaimsProblem, y: &[Ratio], i: usize, j: usize) -> Result<bool, Error> {
    match restrict(p, y, &[i, j])? {
        Restriction::FullAward { claims, .. } => Ok(claims == [y[i].clone(), y[j].clone()]),
        Restriction::Problem(q) => Ok(awards(rule, &q)? == [y[i].clone(), y[j].clone()]),
    }
}

fn disagreeing_pair(rule: &RuleSpec, p: &ClaimsProblem, y: &[Ratio]) -> Result<Option<(usize, usize)>, Error> {
    let n = p.agents();
    for i in 0..n {
        for j in i + 1..n {
            if !agrees_on_pair(rule, p, y, i, j)? {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

fn converse_consistency(rule: &RuleSpec, p: &ClaimsProblem, x: &[Ratio], aux: &Auxiliary) -> Outcome {
    if p.agents() <= 2 {
        return Holds;
    }
    match aux {
        Auxiliary::None => match derived!(disagreeing_pair(rule, p, x)) {
            None => Holds,
            Some((i, j)) => Violated(format!("the rule's own award disagrees with the rule on pair ({i}, {j})")),
        },
        Auxiliary::Candidate { awards: y } => {
            if y.as_slice() == x || check_feasible(p, y).is_err() {
                return Skipped;
            }
            match derived!(disagreeing_pair(rule, p, y)) {
                Some(_) => Holds,
                None => Violated(format!("division {y:?} differs from the award {x:?} yet agrees on every pair")),
            }
        }
        _ => Skipped,
    }
}

fn composition_down(rule: &RuleSpec, p: &ClaimsProblem, x: &[Ratio], smaller: &Ratio) -> Outcome {
    if smaller == p.estate() {
        return Holds;
    }
    if smaller > p.estate() || smaller.is_negative() {
        return Skipped;
    }
    let direct = derived!(p.with_estate(smaller.clone()).and_then(|q| awards(rule, &q)));
    let staged = derived!(ClaimsProblem::new(x.to_vec(), smaller.clone()).and_then(|q| awards(rule, &q)));
    if direct == staged {
        Holds
    } else {
        Violated(format!("direct {direct:?} but two-stage {staged:?}"))
    }
}

fn composition_up(rule: &RuleSpec, p: &ClaimsProblem, x: &[Ratio], larger: &Ratio) -> Outcome {
    if larger == p.estate() {
        return Holds;
    }
    if larger < p.estate() || larger >= p.total_claims() {
        return Skipped;
    }
    let direct = derived!(p.with_estate(larger.clone()).and_then(|q| awards(rule, &q)));
    let residual: Vec<Ratio> = p.claims().iter().zip(x).map(|(c, a)| c - a).collect();
    let extra = derived!(ClaimsProblem::new(residual, larger - p.estate()).and_then(|q| awards(rule, &q)));
    let staged: Vec<Ratio> = x.iter().zip(&extra).map(|(a, b)| a + b).collect();
    if direct == staged {
        Holds
    } else {
        Violated(format!("direct {direct:?} but incremental {staged:?}"))
    }
}

/// Explicit parametric form where one is known, plus consistency on the
/// sampled subset (every parametric rule is consistent).
fn young(rule: &RuleSpec, p: &ClaimsProblem, x: &[Ratio], agents: &[usize]) -> Outcome {
    let explicit: Option<Vec<Ratio>> = match rule {
        RuleSpec::Proportional => {
            let beta = p.estate() / p.total_claims();
            Some(p.claims().iter().map(|c| c * &beta).collect())
        }
        RuleSpec::Cea => {
            let beta = compute_lambda(p).value;
            Some(p.claims().iter().map(|c| c.min(&beta).clone()).collect())
        }
        RuleSpec::Pcea(l) => Some(young_eval(p, l).into_awards()),
        _ => None,
    };
    if let Some(y) = explicit {
        if y != x {
            return Violated(format!("parametric form gives {y:?}, rule gives {x:?}"));
        }
    }
    if agents.is_empty() {
        return Holds;
    }
    match consistency(rule, p, x, agents) {
        Violated(msg) => Violated(format!("not consistent, so not parametric: {msg}")),
        other => other,
    }
}

fn upper_agents(p: &ClaimsProblem, threshold: &Ratio) -> Vec<usize> {
    (0..p.agents()).filter(|&i| &p.claims()[i] > threshold).collect()
}

/// Claims outside `groups` unchanged; inside each group the total is kept
/// and every claim stays at or above the threshold.
fn admissible_redistribution(p: &ClaimsProblem, claims: &[Ratio], threshold: &Ratio, groups: &[Vec<usize>]) -> bool {
    if claims.len() != p.agents() {
        return false;
    }
    let moved: Vec<usize> = groups.iter().flatten().copied().collect();
    for i in 0..p.agents() {
        if !moved.contains(&i) && claims[i] != p.claims()[i] {
            return false;
        }
    }
    groups.iter().all(|g| {
        g.iter().all(|&i| &claims[i] >= threshold) && subset_sum(claims, g) == subset_sum(p.claims(), g)
    })
}

fn nar(
    rule: &RuleSpec,
    p: &ClaimsProblem,
    x: &[Ratio],
    threshold: &Ratio,
    coalition: &[usize],
    claims: &[Ratio],
) -> Outcome {
    let upper = upper_agents(p, threshold);
    if coalition.is_empty() || !coalition.iter().all(|i| upper.contains(i)) {
        return Skipped;
    }
    if !admissible_redistribution(p, claims, threshold, &[coalition.to_vec()]) {
        return Skipped;
    }
    let q = derived!(p.with_claims(claims.to_vec()));
    let y = derived!(awards(&rule.frozen_for(p), &q));
    let before = subset_sum(x, coalition);
    let after = subset_sum(&y, coalition);
    if before == after {
        Holds
    } else {
        Violated(format!("coalition {coalition:?} total moves from {before} to {after}"))
    }
}

fn decentralizability(
    rule: &RuleSpec,
    p: &ClaimsProblem,
    x: &[Ratio],
    threshold: &Ratio,
    group: &[usize],
    claims: &[Ratio],
) -> Outcome {
    if group.is_empty() {
        return Skipped;
    }
    let upper = upper_agents(p, threshold);
    let inside: Vec<usize> = upper.iter().copied().filter(|i| group.contains(i)).collect();
    let outside: Vec<usize> = upper.iter().copied().filter(|i| !group.contains(i)).collect();
    if !admissible_redistribution(p, claims, threshold, &[inside, outside]) {
        return Skipped;
    }
    let q = derived!(p.with_claims(claims.to_vec()));
    let y = derived!(awards(&rule.frozen_for(p), &q));
    let before = subset_sum(x, group);
    let after = subset_sum(&y, group);
    if before == after {
        Holds
    } else {
        Violated(format!("group {group:?} total moves from {before} to {after}"))
    }
}

fn slba(p: &ClaimsProblem, x: &[Ratio], threshold: &Ratio) -> Outcome {
    for (i, (c, a)) in p.claims().iter().zip(x).enumerate() {
        let bound = c.min(threshold);
        if a < bound {
            return Violated(format!("agent {i} receives {a} below min(c_i, L) = {bound}"));
        }
    }
    Holds
}

fn pinned(p: &ClaimsProblem, x: &[Ratio], threshold: &Ratio) -> Outcome {
    for (i, (c, a)) in p.claims().iter().zip(x).enumerate() {
        if c <= threshold && a != c {
            return Violated(format!("agent {i} with claim {c} <= L receives {a}"));
        }
    }
    Holds
}

/// Losses bounded below by `min(c_i, L)`, the mirror image of the award floor.
fn subl(p: &ClaimsProblem, x: &[Ratio], threshold: &Ratio) -> Outcome {
    for (i, (c, a)) in p.claims().iter().zip(x).enumerate() {
        let loss = c - a;
        let bound = c.min(threshold);
        if &loss < bound {
            return Violated(format!("agent {i} loses {loss}, below min(c_i, L) = {bound}"));
        }
    }
    Holds
}

/// Constant `B` in the continuity tolerance `n · δ · B`.
pub(crate) fn continuity_bound(p: &ClaimsProblem) -> Ratio {
    let total = p.total_claims();
    let one = Ratio::one();
    Ratio::from(16) * (one + total / p.deficit() + total / p.estate())
}

fn continuity(rule: &RuleSpec, p: &ClaimsProblem, x: &[Ratio], direction: &[Ratio], scale: &Ratio) -> Outcome {
    let n = p.agents();
    if direction.len() != n + 1 || p.estate().is_zero() || !scale.is_positive() {
        return Skipped;
    }
    let bound = continuity_bound(p);
    let mut delta = scale.clone();
    let half = Ratio::frac(1, 2);
    for k in 1..=CONTINUITY_STEPS {
        delta = delta * &half;
        let claims: Vec<Ratio> = p.claims().iter().zip(direction).map(|(c, d)| c + &delta * d).collect();
        let estate = p.estate() + &delta * &direction[n];
        let q = derived!(ClaimsProblem::new(claims, estate));
        let y = derived!(awards(rule, &q));
        let change = y.iter().zip(x).map(|(a, b)| (a - b).abs()).max().unwrap_or_else(Ratio::zero);
        let tolerance = Ratio::from(n) * &delta * &bound;
        if change > tolerance {
            return Violated(format!(
                "step {k}: award change {:.3e} exceeds tolerance {:.3e}",
                change.to_f64(),
                tolerance.to_f64()
            ));
        }
    }
    Holds
}

fn lorenz_step(p: &ClaimsProblem, lower: &Ratio, upper: &Ratio) -> Outcome {
    if lower > upper {
        return Skipped;
    }
    let lo = derived!(awards(&RuleSpec::Pcea(lower.clone()), p));
    let hi = derived!(awards(&RuleSpec::Pcea(upper.clone()), p));
    let lorenz = derived!(lorenz_compare(&hi, &lo));
    let lex = derived!(leximin_compare(&hi, &lo));
    let weak = |r: Relation| matches!(r, Relation::StrictlyBetter | Relation::Equal);
    if !weak(lorenz.relation) {
        return Violated(format!("psi^{upper} does not Lorenz-dominate psi^{lower}: {:?}", lorenz.relation));
    }
    if !weak(lex.relation) {
        return Violated(format!("psi^{upper} is leximin-worse than psi^{lower}"));
    }
    if lower < upper && needs_strict_improvement(p, lower, upper) {
        if lorenz.relation != Relation::StrictlyBetter {
            return Violated(format!("Lorenz dominance of psi^{upper} over psi^{lower} is not strict"));
        }
        if lex.relation != Relation::StrictlyBetter {
            return Violated(format!("leximin improvement of psi^{upper} over psi^{lower} is not strict"));
        }
    }
    Holds
}

fn sandwich_link(p: &ClaimsProblem, better: &RuleSpec, worse: &RuleSpec) -> Outcome {
    let a = derived!(awards(better, p));
    let b = derived!(awards(worse, p));
    let r = derived!(lorenz_compare(&a, &b));
    match r.relation {
        Relation::StrictlyBetter | Relation::Equal => Holds,
        other => Violated(format!("{better} vs {worse}: {other:?}")),
    }
}
