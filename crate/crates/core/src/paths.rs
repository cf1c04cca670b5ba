//! Award paths: the awards of a rule as the estate runs from zero to the
//! total claim, sampled on a grid that contains every kink exactly.

use serde::{Deserialize, Serialize};

use crate::axioms::{evaluate, Outcome};
use crate::error::Error;
use crate::problem::ClaimsProblem;
use crate::ratio::Ratio;
use crate::rules::{allocate, RuleSpec};
use crate::verdict::{Auxiliary, Threshold, Verdict, Witness};
use crate::Axiom;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathTrace {
    pub rule: RuleSpec,
    pub claims: Vec<Ratio>,
    /// `(estate, awards)` rows in ascending estate order, from `e = 0` up to
    /// and including `e = c_N`, where every claim is met in full.
    pub samples: Vec<(Ratio, Vec<Ratio>)>,
}

impl PathTrace {
    /// Whether every award is non-decreasing along the path.
    pub fn is_monotone(&self) -> bool {
        self.samples.windows(2).all(|w| w[0].1.iter().zip(&w[1].1).all(|(a, b)| a <= b))
    }

    pub fn awards_at(&self, estate: &Ratio) -> Option<&[Ratio]> {
        self.samples.iter().find(|(e, _)| e == estate).map(|(_, x)| x.as_slice())
    }
}

/// Estates at which some rule in the crate can change slope: the water
/// levels of equal awards and equal losses crossing a claim or the rule's
/// threshold.
fn kink_estates(rule: &RuleSpec, claims: &[Ratio]) -> Vec<Ratio> {
    let mut levels: Vec<Ratio> = claims.to_vec();
    let mut spec = rule;
    loop {
        match spec {
            RuleSpec::Pcea(l) | RuleSpec::PceaDual(l) => {
                levels.push(l.clone());
                break;
            }
            RuleSpec::DualOf(inner) => spec = inner,
            _ => break,
        }
    }
    let mut out = Vec::with_capacity(2 * levels.len());
    for v in &levels {
        out.push(claims.iter().map(|c| c.min(v).clone()).sum());
        out.push(claims.iter().map(|c| if c > v { c - v } else { Ratio::zero() }).sum());
    }
    out
}

/// Samples `rule` at `grid_points + 1` evenly spaced estates from `0` to
/// `c_N` together with every kink estate.
pub fn trace_path(rule: &RuleSpec, claims: &[Ratio], grid_points: usize) -> Result<PathTrace, Error> {
    rule.validate()?;
    let base = ClaimsProblem::new(claims.to_vec(), Ratio::zero())?;
    let total = base.total_claims().clone();
    let steps = grid_points.max(1);
    let mut estates: Vec<Ratio> = (0..=steps).map(|j| &total * Ratio::frac(j as i64, steps as i64)).collect();
    estates.extend(kink_estates(rule, claims).into_iter().filter(|e| !e.is_negative() && e < &total));
    estates.sort();
    estates.dedup();

    let mut samples = Vec::with_capacity(estates.len());
    for e in estates {
        let awards = if e == total {
            claims.to_vec()
        } else if e.is_zero() && rule.requires_positive_claims() {
            vec![Ratio::zero(); claims.len()]
        } else {
            allocate(rule, &base.with_estate(e.clone())?)?.into_awards()
        };
        samples.push((e, awards));
    }
    Ok(PathTrace { rule: rule.clone(), claims: claims.to_vec(), samples })
}

/// One P-CEA path per claims vector at the common threshold `L`.
pub fn trace_tree(threshold: &Ratio, claim_vectors: &[Vec<Ratio>], grid_points: usize) -> Result<Vec<PathTrace>, Error> {
    let rule = RuleSpec::Pcea(threshold.clone());
    claim_vectors.iter().map(|c| trace_path(&rule, c, grid_points)).collect()
}

/// Composition down along the path: for every `(e, e')` with `e' <= e`,
/// the awards at `e'` equal the rule applied to the awards at `e` taken as
/// claims with estate `e'`.
pub fn verify_path_nesting(rule: &RuleSpec, claims: &[Ratio], e_pairs: &[(Ratio, Ratio)]) -> Result<Verdict, Error> {
    rule.validate()?;
    let threshold = Threshold::primal(0);
    let mut evaluated = 0;
    let mut skipped = 0;
    for (e, smaller) in e_pairs {
        let p = ClaimsProblem::new(claims.to_vec(), e.clone())?;
        let w = Witness::new(p, Auxiliary::SecondEstate { estate: smaller.clone() });
        match evaluate(Axiom::PathNesting, rule, &threshold, &w) {
            Outcome::Holds => evaluated += 1,
            Outcome::Skipped => skipped += 1,
            Outcome::Violated(msg) => {
                let mut v = Verdict::fail(Axiom::PathNesting, rule.clone(), evaluated + 1, 0, w, msg);
                v.skipped = skipped;
                return Ok(v);
            }
        }
    }
    let mut v = Verdict::pass(Axiom::PathNesting, rule.clone(), evaluated, 0);
    v.skipped = skipped;
    Ok(v)
}
