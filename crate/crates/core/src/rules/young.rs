//! Parametric (Young) representation of the P-CEA rules.

use super::effective_threshold;
use crate::problem::{AwardVector, ClaimsProblem};
use crate::ratio::Ratio;

/// `f(c, β; L)`: `min(c, β)` for `β <= L`, then
/// `min(c, L) + (c - min(c, L))(β - L)` up to `β = L + 1`.
pub fn young_f(claim: &Ratio, beta: &Ratio, threshold: &Ratio) -> Ratio {
    if beta <= threshold {
        claim.min(beta).clone()
    } else {
        let base = claim.min(threshold).clone();
        let slope = claim - &base;
        base + slope * (beta - threshold)
    }
}

/// The `β ∈ [0, 1 + L_eff]` balancing the budget, solved on whichever linear
/// piece holds it.
pub fn young_beta(p: &ClaimsProblem, threshold: &Ratio) -> Ratio {
    let l_eff = effective_threshold(p, threshold);
    let fixed: Ratio = p.claims().iter().map(|c| c.min(&l_eff).clone()).sum();
    let residual_claims = p.total_claims() - &fixed;
    if &fixed == p.estate() || residual_claims.is_zero() {
        // First piece: Σ min(c_i, β) = e at β = L_eff = λ, or L_eff = 0 = e.
        return l_eff;
    }
    l_eff + (p.estate() - &fixed) / residual_claims
}

pub fn young_eval(p: &ClaimsProblem, threshold: &Ratio) -> AwardVector {
    let l_eff = effective_threshold(p, threshold);
    let beta = young_beta(p, threshold);
    let awards = p.claims().iter().map(|c| young_f(c, &beta, &l_eff)).collect();
    AwardVector::new(p, awards)
}
