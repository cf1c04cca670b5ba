//! Leximin and Lorenz comparisons of award vectors, and the comparative
//! statics of the P-CEA family in the threshold.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::problem::ClaimsProblem;
use crate::ratio::Ratio;
use crate::rules::{allocate, effective_threshold, lambda, RuleSpec};
use crate::verdict::{Auxiliary, Verdict, Witness};
use crate::Axiom;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    StrictlyBetter,
    Equal,
    StrictlyWorse,
    Incomparable,
}

/// Relation of the first vector to the second. `first_diff_index` is the
/// 0-based position (in ascending order) of the first sorted entry, or
/// cumulative sum, that differs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingResult {
    pub relation: Relation,
    pub first_diff_index: Option<usize>,
}

/// Ascending partial sums of a sorted award vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LorenzCurve {
    pub cumulative: Vec<Ratio>,
}

impl LorenzCurve {
    pub fn new(values: &[Ratio]) -> Self {
        let mut acc = Ratio::zero();
        let cumulative = sorted(values)
            .into_iter()
            .map(|v| {
                acc += v;
                acc.clone()
            })
            .collect();
        LorenzCurve { cumulative }
    }

    pub fn total(&self) -> Ratio {
        self.cumulative.last().cloned().unwrap_or_else(Ratio::zero)
    }
}

fn sorted(values: &[Ratio]) -> Vec<Ratio> {
    let mut v = values.to_vec();
    v.sort();
    v
}

pub fn leximin_compare(x: &[Ratio], y: &[Ratio]) -> Result<OrderingResult, Error> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(x.len(), y.len()));
    }
    let (xs, ys) = (sorted(x), sorted(y));
    for (i, (a, b)) in xs.iter().zip(&ys).enumerate() {
        if a != b {
            let relation = if a > b { Relation::StrictlyBetter } else { Relation::StrictlyWorse };
            return Ok(OrderingResult { relation, first_diff_index: Some(i) });
        }
    }
    Ok(OrderingResult { relation: Relation::Equal, first_diff_index: None })
}

pub fn lorenz_compare(x: &[Ratio], y: &[Ratio]) -> Result<OrderingResult, Error> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(x.len(), y.len()));
    }
    let (cx, cy) = (LorenzCurve::new(x), LorenzCurve::new(y));
    if cx.total() != cy.total() {
        return Err(Error::UnequalTotals(cx.total(), cy.total()));
    }
    let mut above = false;
    let mut below = false;
    let mut first_diff_index = None;
    for (i, (a, b)) in cx.cumulative.iter().zip(&cy.cumulative).enumerate() {
        if a != b && first_diff_index.is_none() {
            first_diff_index = Some(i);
        }
        above |= a > b;
        below |= a < b;
    }
    let relation = match (above, below) {
        (false, false) => Relation::Equal,
        (true, false) => Relation::StrictlyBetter,
        (false, true) => Relation::StrictlyWorse,
        (true, true) => Relation::Incomparable,
    };
    Ok(OrderingResult { relation, first_diff_index })
}

/// Whether raising the threshold from `lower` to `upper` (both clamped to
/// `[0, λ]`) must change the allocation: some claim lies in `(L, L']`, or at
/// least two distinct claim values exceed `L'`. Otherwise the two P-CEA
/// awards coincide and only weak dominance can hold.
pub fn needs_strict_improvement(p: &ClaimsProblem, lower: &Ratio, upper: &Ratio) -> bool {
    let lo = effective_threshold(p, lower);
    let hi = effective_threshold(p, upper);
    if lo >= hi {
        return false;
    }
    if p.claims().iter().any(|c| c > &lo && c <= &hi) {
        return true;
    }
    let mut above: Vec<&Ratio> = p.claims().iter().filter(|c| *c > &hi).collect();
    above.sort();
    above.dedup();
    above.len() >= 2
}

/// Checks that every adjacent pair of an ascending threshold grid moves the
/// P-CEA allocation weakly up in both the Lorenz and leximin orders, and
/// strictly when [`needs_strict_improvement`] says the allocation must move.
pub fn verify_threshold_monotonicity(p: &ClaimsProblem, grid: &[Ratio]) -> Result<Verdict, Error> {
    let lam = lambda(p);
    if let Some(bad) = grid.iter().find(|l| l.is_negative() || *l > &lam) {
        return Err(Error::GridOutOfRange(bad.clone(), lam));
    }
    let mut grid = grid.to_vec();
    grid.sort();
    let rule = RuleSpec::Pcea(grid.last().cloned().unwrap_or_else(Ratio::zero));
    let threshold = crate::verdict::Threshold::primal(0);
    let mut checked = 0;
    for pair in grid.windows(2) {
        let w = Witness::new(
            p.clone(),
            Auxiliary::Thresholds { lower: pair[0].clone(), upper: pair[1].clone() },
        );
        checked += 1;
        if let crate::axioms::Outcome::Violated(msg) =
            crate::axioms::evaluate(Axiom::LorenzMonotonicity, &rule, &threshold, &w)
        {
            return Ok(Verdict::fail(Axiom::LorenzMonotonicity, rule, checked, 0, w, msg));
        }
    }
    Ok(Verdict::pass(Axiom::LorenzMonotonicity, rule, checked, 0))
}

/// Lorenz chain `CEA ≽ ψ^L ≽ P` with alpha-min placed above `ψ^L` when
/// `L <= c_1` and below it otherwise. `L` is clamped to `[0, λ]`.
pub fn verify_sandwich(p: &ClaimsProblem, threshold: &Ratio) -> Result<Verdict, Error> {
    let l = effective_threshold(p, threshold);
    let psi = RuleSpec::Pcea(l.clone());
    let chain = if &l <= p.smallest_claim() {
        vec![RuleSpec::Cea, RuleSpec::AlphaMin, psi.clone(), RuleSpec::Proportional]
    } else {
        vec![RuleSpec::Cea, psi.clone(), RuleSpec::AlphaMin, RuleSpec::Proportional]
    };
    let threshold = crate::verdict::Threshold::primal(0);
    let mut checked = 0;
    for link in chain.windows(2) {
        // make sure both rules evaluate before judging the link
        allocate(&link[0], p)?;
        allocate(&link[1], p)?;
        let w = Witness::new(p.clone(), Auxiliary::Rules { better: link[0].clone(), worse: link[1].clone() });
        checked += 1;
        if let crate::axioms::Outcome::Violated(msg) = crate::axioms::evaluate(Axiom::Sandwich, &psi, &threshold, &w) {
            return Ok(Verdict::fail(Axiom::Sandwich, psi, checked, 0, w, msg));
        }
    }
    Ok(Verdict::pass(Axiom::Sandwich, psi, checked, 0))
}
