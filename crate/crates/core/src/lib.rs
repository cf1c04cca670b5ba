//! Exact-arithmetic library for claims problems.
//!
//! A claims problem divides an estate `e` among agents whose claims sum to
//! more than `e`. The crate provides the classical proportional, constrained
//! equal awards and constrained equal losses rules, the P-CEA compromise
//! family (a claim-capped baseline `min(c_i, L)` followed by a proportional
//! split of the remainder), its dual, the alpha-min egalitarian rule, seeded
//! randomized checkers for the usual fairness axioms, Lorenz/leximin
//! comparisons and award-path sampling. All arithmetic is exact.

pub mod axioms;
pub mod error;
pub mod inequality;
pub mod paths;
pub mod problem;
pub mod ratio;
pub mod rules;
pub mod verdict;

pub use error::Error;
pub use problem::{
    canonicalize, check_feasible, dual_problem, restrict, validate_problem, AwardVector, CanonicalProblem,
    ClaimsProblem, FeasibilityViolation, Restriction,
};
pub use ratio::Ratio;
pub use rules::{allocate, compute_lambda, compute_mu, young_beta, young_eval, RuleSpec, Waterline};
pub use axioms::{run_check, GenConfig, ProblemFilter};
pub use inequality::{leximin_compare, lorenz_compare, LorenzCurve, OrderingResult, Relation};
pub use paths::{trace_path, trace_tree, verify_path_nesting, PathTrace};
pub use verdict::{Auxiliary, Axiom, Threshold, Verdict, Witness};
