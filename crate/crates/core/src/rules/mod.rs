//! Allocation engines.
//!
//! Every engine returns awards in the caller's agent order. All of them are
//! feasible on every claims problem except [`RuleSpec::EqualAwards`], whose
//! output is flagged through [`AwardVector::is_feasible`].

mod spec;
mod waterline;
mod young;

pub use spec::RuleSpec;
pub use waterline::{compute_lambda, compute_mu, effective_threshold, lambda, Waterline};
pub use young::{young_beta, young_eval, young_f};

use crate::error::Error;
use crate::problem::{dual_problem, AwardVector, ClaimsProblem};
use crate::ratio::Ratio;

/// Evaluates `spec` on `p`.
pub fn allocate(spec: &RuleSpec, p: &ClaimsProblem) -> Result<AwardVector, Error> {
    spec.validate()?;
    let awards = match spec {
        RuleSpec::Proportional => proportional(p.claims(), p.estate()),
        RuleSpec::EqualAwards => equal_awards(p),
        RuleSpec::Cea => cea(p),
        RuleSpec::Cel => cel(p),
        RuleSpec::Pcea(l) => pcea(p, l).awards,
        RuleSpec::PceaDual(l) => pcea_dual(p, l)?,
        RuleSpec::AlphaMin => alpha_min(p),
        RuleSpec::DualOf(inner) => dual_of(inner, p)?,
    };
    Ok(AwardVector::new(p, awards))
}

/// `(e / c_N) · c`, or zero when the claims sum to zero.
pub(crate) fn proportional(claims: &[Ratio], estate: &Ratio) -> Vec<Ratio> {
    let total: Ratio = claims.iter().sum();
    if total.is_zero() {
        return vec![Ratio::zero(); claims.len()];
    }
    let rate = estate / total;
    claims.iter().map(|c| c * &rate).collect()
}

fn equal_awards(p: &ClaimsProblem) -> Vec<Ratio> {
    let share = p.estate() / Ratio::from(p.agents());
    vec![share; p.agents()]
}

fn cea(p: &ClaimsProblem) -> Vec<Ratio> {
    let lam = lambda(p);
    p.claims().iter().map(|c| c.min(&lam).clone()).collect()
}

fn cel(p: &ClaimsProblem) -> Vec<Ratio> {
    let mu = compute_mu(p).value;
    p.claims()
        .iter()
        .map(|c| {
            let x = c - &mu;
            if x.is_negative() {
                Ratio::zero()
            } else {
                x
            }
        })
        .collect()
}

/// Intermediate quantities of a P-CEA evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PceaBreakdown {
    /// `min(L, λ)`.
    pub effective_threshold: Ratio,
    /// `c^L = (min(c_i, L_eff))_i`.
    pub baseline: Vec<Ratio>,
    /// `e^L = e - Σ c^L`.
    pub residual_estate: Ratio,
    /// `c_N - Σ c^L`.
    pub residual_claims: Ratio,
    pub awards: Vec<Ratio>,
}

impl PceaBreakdown {
    /// Original indices of the agents with `c_i <= L_eff`.
    pub fn pinned_agents(&self, p: &ClaimsProblem) -> Vec<usize> {
        p.claims()
            .iter()
            .enumerate()
            .filter(|(_, c)| *c <= &self.effective_threshold)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Baseline `min(c_i, L_eff)` plus a proportional split of what is left over
/// the residual claims.
pub fn pcea(p: &ClaimsProblem, threshold: &Ratio) -> PceaBreakdown {
    let l_eff = effective_threshold(p, threshold);
    let baseline: Vec<Ratio> = p.claims().iter().map(|c| c.min(&l_eff).clone()).collect();
    let fixed: Ratio = baseline.iter().sum();
    let residual_estate = p.estate() - &fixed;
    let residual_claims = p.total_claims() - &fixed;
    let awards = if residual_claims.is_zero() {
        baseline.clone()
    } else {
        let rate = &residual_estate / &residual_claims;
        p.claims()
            .iter()
            .zip(&baseline)
            .map(|(c, b)| b + (c - b) * &rate)
            .collect()
    };
    PceaBreakdown { effective_threshold: l_eff, baseline, residual_estate, residual_claims, awards }
}

fn require_positive_claims(p: &ClaimsProblem) -> Result<(), Error> {
    if p.claims().iter().all(Ratio::is_positive) {
        Ok(())
    } else {
        Err(Error::DualRequiresPositiveClaims)
    }
}

/// Threshold of the dual P-CEA rule after clamping by the dual problem's λ.
/// `None` when the estate is zero and the dual problem does not exist.
pub fn dual_effective_threshold(p: &ClaimsProblem, threshold: &Ratio) -> Option<Ratio> {
    dual_problem(p).ok().map(|d| effective_threshold(&d, threshold))
}

/// `P(c - c^{L_d}, e)` with `L_d = min(L, λ(c, c_N - e))`.
fn pcea_dual(p: &ClaimsProblem, threshold: &Ratio) -> Result<Vec<Ratio>, Error> {
    require_positive_claims(p)?;
    let Some(l_dual) = dual_effective_threshold(p, threshold) else {
        return Ok(vec![Ratio::zero(); p.agents()]);
    };
    let residual: Vec<Ratio> = p.claims().iter().map(|c| c - c.min(&l_dual)).collect();
    Ok(proportional(&residual, p.estate()))
}

fn alpha_min(p: &ClaimsProblem) -> Vec<Ratio> {
    let n = Ratio::from(p.agents());
    let smallest = p.smallest_claim().clone();
    let equal_share = p.estate() / &n;
    if smallest >= equal_share {
        return vec![equal_share; p.agents()];
    }
    let residual: Vec<Ratio> = p.claims().iter().map(|c| c - &smallest).collect();
    let rest = proportional(&residual, &(p.estate() - &n * &smallest));
    rest.into_iter().map(|r| r + &smallest).collect()
}

/// `c - S(c, c_N - e)`; the zero vector at `e = 0`.
fn dual_of(inner: &RuleSpec, p: &ClaimsProblem) -> Result<Vec<Ratio>, Error> {
    require_positive_claims(p)?;
    let dual = match dual_problem(p) {
        Ok(d) => d,
        Err(Error::ZeroEstateDual) => return Ok(vec![Ratio::zero(); p.agents()]),
        Err(e) => return Err(e),
    };
    let inner_awards = allocate(inner, &dual)?;
    Ok(p.claims().iter().zip(inner_awards.awards()).map(|(c, y)| c - y).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::ratios;

    fn problem(claims: &[i64], estate: i64) -> ClaimsProblem {
        ClaimsProblem::new(ratios(claims), estate.into()).unwrap()
    }

    fn three_agents() -> ClaimsProblem {
        problem(&[10, 50, 70], 100)
    }

    fn run(spec: RuleSpec, p: &ClaimsProblem) -> Vec<Ratio> {
        allocate(&spec, p).unwrap().into_awards()
    }

    fn fr(values: &[(i64, i64)]) -> Vec<Ratio> {
        values.iter().map(|&(n, d)| Ratio::frac(n, d)).collect()
    }

    #[test]
    fn reference_rows() {
        let p = three_agents();
        assert_eq!(run(RuleSpec::Proportional, &p), fr(&[(100, 13), (500, 13), (700, 13)]));
        assert_eq!(run(RuleSpec::Cea, &p), ratios(&[10, 45, 45]));
        assert_eq!(run(RuleSpec::Cel, &p), ratios(&[0, 40, 60]));
        assert_eq!(run(RuleSpec::AlphaMin, &p), ratios(&[10, 38, 52]));
        assert_eq!(run(RuleSpec::Pcea(5.into()), &p), fr(&[(200, 23), (880, 23), (1220, 23)]));
        assert_eq!(run(RuleSpec::Pcea(20.into()), &p), fr(&[(10, 1), (155, 4), (205, 4)]));
        assert_eq!(run(RuleSpec::Pcea(40.into()), &p), fr(&[(10, 1), (85, 2), (95, 2)]));
    }

    #[test]
    fn two_agent_example() {
        let p = problem(&[50, 100], 100);
        assert_eq!(run(RuleSpec::Pcea(25.into()), &p), fr(&[(75, 2), (125, 2)]));
        assert_eq!(run(RuleSpec::Proportional, &p), fr(&[(100, 3), (200, 3)]));
        assert_eq!(run(RuleSpec::Cea, &p), ratios(&[50, 50]));
    }

    #[test]
    fn clamp_makes_large_threshold_cea() {
        let p = three_agents();
        for l in [45, 46, 100, 10_000] {
            assert_eq!(run(RuleSpec::Pcea(l.into()), &p), ratios(&[10, 45, 45]));
        }
        assert_eq!(run(RuleSpec::Pcea(0.into()), &p), run(RuleSpec::Proportional, &p));
    }

    #[test]
    fn pcea_breakdown_metadata() {
        let p = three_agents();
        let b = pcea(&p, &Ratio::from(20));
        assert_eq!(b.baseline, ratios(&[10, 20, 20]));
        assert_eq!(b.residual_estate, Ratio::from(50));
        assert_eq!(b.residual_claims, Ratio::from(80));
        assert_eq!(b.pinned_agents(&p), vec![0]);
    }

    #[test]
    fn pcea_dual_table_problem() {
        let p = three_agents();
        assert_eq!(dual_effective_threshold(&p, &Ratio::from(20)), Some(Ratio::from(10)));
        assert_eq!(run(RuleSpec::PceaDual(20.into()), &p), ratios(&[0, 40, 60]));
        let via_transform = run(RuleSpec::DualOf(Box::new(RuleSpec::Pcea(20.into()))), &p);
        assert_eq!(via_transform, ratios(&[0, 40, 60]));
    }

    #[test]
    fn dual_rules_reject_zero_claims() {
        let p = problem(&[0, 5, 7], 4);
        assert_eq!(allocate(&RuleSpec::PceaDual(1.into()), &p), Err(Error::DualRequiresPositiveClaims));
        assert_eq!(
            allocate(&RuleSpec::DualOf(Box::new(RuleSpec::Cea)), &p),
            Err(Error::DualRequiresPositiveClaims)
        );
    }

    #[test]
    fn dual_at_zero_estate_is_zero() {
        let p = problem(&[3, 5], 0);
        assert_eq!(run(RuleSpec::DualOf(Box::new(RuleSpec::Cea)), &p), ratios(&[0, 0]));
        assert_eq!(run(RuleSpec::PceaDual(2.into()), &p), ratios(&[0, 0]));
    }

    #[test]
    fn cel_is_dual_of_cea() {
        let p = problem(&[3, 8, 11, 20], 17);
        assert_eq!(run(RuleSpec::Cel, &p), run(RuleSpec::DualOf(Box::new(RuleSpec::Cea)), &p));
    }

    #[test]
    fn equal_awards_flagged_infeasible() {
        let p = problem(&[1, 100], 50);
        let x = allocate(&RuleSpec::EqualAwards, &p).unwrap();
        assert_eq!(x.awards(), ratios(&[25, 25]).as_slice());
        assert!(!x.is_feasible());
        assert!(allocate(&RuleSpec::Cea, &p).unwrap().is_feasible());
    }

    #[test]
    fn alpha_min_equal_division_branch() {
        let p = problem(&[40, 50, 70], 90);
        assert_eq!(run(RuleSpec::AlphaMin, &p), ratios(&[30, 30, 30]));
    }

    #[test]
    fn single_agent() {
        let p = problem(&[9], 4);
        for spec in [RuleSpec::Proportional, RuleSpec::Cea, RuleSpec::Cel, RuleSpec::Pcea(2.into()), RuleSpec::AlphaMin] {
            assert_eq!(run(spec, &p), ratios(&[4]));
        }
    }

    #[test]
    fn zero_claim_agents_get_nothing() {
        let p = problem(&[0, 6, 10], 8);
        for spec in [RuleSpec::Proportional, RuleSpec::Cea, RuleSpec::Cel, RuleSpec::Pcea(3.into()), RuleSpec::AlphaMin] {
            let x = allocate(&spec, &p).unwrap();
            assert!(x.is_feasible(), "{spec}");
            assert!(x.awards()[0].is_zero(), "{spec}");
        }
    }
}
