//! Claims problems, award vectors and the reduced/dual problem constructors.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::ratio::Ratio;

/// A claims vector together with an estate strictly smaller than the total
/// claim. Claims keep the caller's agent order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ClaimsProblem {
    claims: Vec<Ratio>,
    estate: Ratio,
    #[serde(skip)]
    total: Ratio,
}

impl ClaimsProblem {
    pub fn new(claims: Vec<Ratio>, estate: Ratio) -> Result<Self, Error> {
        validate_problem(claims, estate)
    }

    pub fn claims(&self) -> &[Ratio] {
        &self.claims
    }

    pub fn estate(&self) -> &Ratio {
        &self.estate
    }

    /// Aggregate claim `c_N`.
    pub fn total_claims(&self) -> &Ratio {
        &self.total
    }

    /// `c_N - e`, always positive.
    pub fn deficit(&self) -> Ratio {
        &self.total - &self.estate
    }

    pub fn agents(&self) -> usize {
        self.claims.len()
    }

    pub fn smallest_claim(&self) -> &Ratio {
        self.claims.iter().min().expect("non-empty by construction")
    }

    pub fn with_estate(&self, estate: Ratio) -> Result<Self, Error> {
        validate_problem(self.claims.clone(), estate)
    }

    pub fn with_claims(&self, claims: Vec<Ratio>) -> Result<Self, Error> {
        validate_problem(claims, self.estate.clone())
    }

    pub fn canonicalize(&self) -> CanonicalProblem {
        canonicalize(self)
    }
}

impl<'de> Deserialize<'de> for ClaimsProblem {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            claims: Vec<Ratio>,
            estate: Ratio,
        }
        let raw = Raw::deserialize(deserializer)?;
        validate_problem(raw.claims, raw.estate).map_err(serde::de::Error::custom)
    }
}

/// Checks the claims-problem invariants: at least one agent, non-negative
/// claims and estate, and total claims strictly above the estate.
pub fn validate_problem(claims: Vec<Ratio>, estate: Ratio) -> Result<ClaimsProblem, Error> {
    if claims.is_empty() {
        return Err(Error::EmptyAgentSet);
    }
    if let Some((index, value)) = claims.iter().enumerate().find(|(_, c)| c.is_negative()) {
        return Err(Error::NegativeClaim { index, value: value.clone() });
    }
    if estate.is_negative() {
        return Err(Error::NegativeEstate(estate));
    }
    let total: Ratio = claims.iter().sum();
    if total <= estate {
        return Err(Error::NonClaimsProblem { total, estate });
    }
    Ok(ClaimsProblem { claims, estate, total })
}

/// Claims sorted ascending, with `perm[k]` the original index of the k-th
/// smallest claim. Ties keep their original relative order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalProblem {
    pub sorted_claims: Vec<Ratio>,
    pub perm: Vec<usize>,
}

impl CanonicalProblem {
    /// Maps values given in sorted order back to the original agent order.
    pub fn to_original_order(&self, sorted_values: Vec<Ratio>) -> Vec<Ratio> {
        debug_assert_eq!(sorted_values.len(), self.perm.len());
        let mut out = vec![Ratio::zero(); sorted_values.len()];
        for (value, &agent) in sorted_values.into_iter().zip(&self.perm) {
            out[agent] = value;
        }
        out
    }

    /// Number of agents whose claim is at most `threshold`; those agents form
    /// `S_0` in sorted order.
    pub fn split_index(&self, threshold: &Ratio) -> usize {
        self.sorted_claims.partition_point(|c| c <= threshold)
    }

    /// `Σ_{i<k} c_i` for k = 0..=n.
    pub fn prefix_sums(&self) -> Vec<Ratio> {
        let mut acc = Ratio::zero();
        let mut out = Vec::with_capacity(self.sorted_claims.len() + 1);
        out.push(acc.clone());
        for c in &self.sorted_claims {
            acc += c;
            out.push(acc.clone());
        }
        out
    }
}

pub fn canonicalize(p: &ClaimsProblem) -> CanonicalProblem {
    let mut perm: Vec<usize> = (0..p.agents()).collect();
    perm.sort_by(|&a, &b| p.claims[a].cmp(&p.claims[b]));
    let sorted_claims = perm.iter().map(|&i| p.claims[i].clone()).collect();
    CanonicalProblem { sorted_claims, perm }
}

/// Reasons an award vector is not a feasible division.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FeasibilityViolation {
    Length { expected: usize, found: usize },
    Negative { agent: usize, award: Ratio },
    ExceedsClaim { agent: usize, award: Ratio, claim: Ratio },
    Budget { total: Ratio, estate: Ratio },
}

/// Awards in the original agent order of the problem they were computed for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AwardVector {
    awards: Vec<Ratio>,
    feasible: bool,
}

impl AwardVector {
    /// Wraps `awards` and records whether they form a feasible division of `p`.
    pub fn new(p: &ClaimsProblem, awards: Vec<Ratio>) -> Self {
        let feasible = check_feasible(p, &awards).is_ok();
        AwardVector { awards, feasible }
    }

    pub fn awards(&self) -> &[Ratio] {
        &self.awards
    }

    pub fn into_awards(self) -> Vec<Ratio> {
        self.awards
    }

    pub fn is_feasible(&self) -> bool {
        self.feasible
    }

    pub fn total(&self) -> Ratio {
        self.awards.iter().sum()
    }

    /// Losses `c_i - x_i` against `p`.
    pub fn losses(&self, p: &ClaimsProblem) -> Vec<Ratio> {
        p.claims().iter().zip(&self.awards).map(|(c, x)| c - x).collect()
    }
}

/// Non-negativity, claim-boundedness and budget balance, all exact.
pub fn check_feasible(p: &ClaimsProblem, awards: &[Ratio]) -> Result<(), FeasibilityViolation> {
    if awards.len() != p.agents() {
        return Err(FeasibilityViolation::Length { expected: p.agents(), found: awards.len() });
    }
    for (agent, (x, c)) in awards.iter().zip(p.claims()).enumerate() {
        if x.is_negative() {
            return Err(FeasibilityViolation::Negative { agent, award: x.clone() });
        }
        if x > c {
            return Err(FeasibilityViolation::ExceedsClaim { agent, award: x.clone(), claim: c.clone() });
        }
    }
    let total: Ratio = awards.iter().sum();
    if &total != p.estate() {
        return Err(FeasibilityViolation::Budget { total, estate: p.estate().clone() });
    }
    Ok(())
}

/// Result of restricting a problem to a subgroup and its allocated total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Restriction {
    Problem(ClaimsProblem),
    /// The subgroup's awards already exhaust its claims; the full-claims
    /// vector is the only feasible division.
    FullAward { claims: Vec<Ratio>, estate: Ratio },
}

/// Reduced problem `(c|_{N'}, Σ_{i∈N'} x_i)`. `subset` holds 0-based agent
/// indices; the reduced problem lists agents in ascending index order.
pub fn restrict(p: &ClaimsProblem, x: &[Ratio], subset: &[usize]) -> Result<Restriction, Error> {
    if x.len() != p.agents() {
        return Err(Error::DimensionMismatch(p.agents(), x.len()));
    }
    let members = normalize_subset(subset, p.agents())?;
    if members.len() == p.agents() {
        return Err(Error::ImproperSubset);
    }
    let claims: Vec<Ratio> = members.iter().map(|&i| p.claims()[i].clone()).collect();
    let estate: Ratio = members.iter().map(|&i| &x[i]).sum();
    let total: Ratio = claims.iter().sum();
    if total <= estate {
        return Ok(Restriction::FullAward { claims, estate });
    }
    validate_problem(claims, estate).map(Restriction::Problem)
}

/// Sorted, deduplicated, bounds-checked subset.
pub(crate) fn normalize_subset(subset: &[usize], agents: usize) -> Result<Vec<usize>, Error> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut members = subset.to_vec();
    members.sort_unstable();
    members.dedup();
    if let Some(&index) = members.iter().find(|&&i| i >= agents) {
        return Err(Error::AgentOutOfRange { index, agents });
    }
    Ok(members)
}

/// The problem whose estate is the deficit of `p`.
pub fn dual_problem(p: &ClaimsProblem) -> Result<ClaimsProblem, Error> {
    if p.estate().is_zero() {
        return Err(Error::ZeroEstateDual);
    }
    validate_problem(p.claims().to_vec(), p.deficit())
}
