//! Exact water levels for the constrained equal awards and losses rules.

use serde::Serialize;

use crate::problem::ClaimsProblem;
use crate::ratio::Ratio;

/// A water level together with the sorted segment it falls in:
/// `c_k <= value <= c_{k+1}` with `c_0 = 0` and `c_{n+1} = +inf`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Waterline {
    pub value: Ratio,
    pub segment_index: usize,
}

/// `λ` with `Σ min(c_i, λ) = e`, found segment by segment over sorted prefix
/// sums: with the k smallest claims fully served, the remaining `n - k`
/// agents share `e - Σ_{i<=k} c_i` equally.
pub fn compute_lambda(p: &ClaimsProblem) -> Waterline {
    let canon = p.canonicalize();
    let sorted = &canon.sorted_claims;
    let n = sorted.len();
    let mut served = Ratio::zero();
    for (k, next) in sorted.iter().enumerate() {
        let level = (p.estate() - &served) / Ratio::from(n - k);
        if &level <= next {
            return Waterline { value: level, segment_index: k };
        }
        served += next;
    }
    unreachable!("total claims exceed the estate, so some segment holds the water level")
}

/// `μ` with `Σ max(c_i - μ, 0) = e`. Scans how many of the largest claims
/// receive a positive award. For `e = 0` this returns the largest claim.
pub fn compute_mu(p: &ClaimsProblem) -> Waterline {
    let canon = p.canonicalize();
    let sorted = &canon.sorted_claims;
    let n = sorted.len();
    let mut top = Ratio::zero();
    for j in 1..=n {
        top += &sorted[n - j];
        let level = (&top - p.estate()) / Ratio::from(j);
        let lower = if j == n { Ratio::zero() } else { sorted[n - j - 1].clone() };
        if level >= lower {
            return Waterline { value: level, segment_index: n - j };
        }
    }
    unreachable!("with every agent losing, the level (c_N - e)/n is positive")
}

/// Shorthand for `compute_lambda(p).value`.
pub fn lambda(p: &ClaimsProblem) -> Ratio {
    compute_lambda(p).value
}

/// Clamp of a threshold to the admissible range `[0, λ]`.
pub fn effective_threshold(p: &ClaimsProblem, threshold: &Ratio) -> Ratio {
    let lam = lambda(p);
    if threshold < &lam {
        threshold.clone()
    } else {
        lam
    }
}
