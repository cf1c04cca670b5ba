//! Fixtures shared by the benchmarks.

use pcea_core::ratio::ratios;
use pcea_core::{ClaimsProblem, GenConfig, RuleSpec};

/// Claims (10, 50, 70) with estate 100.
pub fn small_problem() -> ClaimsProblem {
    ClaimsProblem::new(ratios(&[10, 50, 70]), 100.into()).expect("valid problem")
}

/// `count` reproducible random problems from the default generator.
pub fn random_problems(seed: u64, count: usize) -> Vec<ClaimsProblem> {
    let cfg = GenConfig::with_seed(seed);
    (0..count).filter_map(|t| cfg.random_problem(&mut cfg.trial_rng(t), false)).collect()
}

/// The rules compared in the benchmarks.
pub fn rules() -> Vec<RuleSpec> {
    ["proportional", "cea", "cel", "alpha-min", "pcea:20", "pcea-dual:20"]
        .iter()
        .map(|r| r.parse().expect("known rule"))
        .collect()
}
