//! Results of property checks and the witnesses that let a failure be replayed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::problem::ClaimsProblem;
use crate::ratio::Ratio;
use crate::rules::{dual_effective_threshold, effective_threshold, RuleSpec};

/// Every property the crate can check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Feasibility,
    EqualTreatment,
    OrderPreservation,
    ResourceMonotonicity,
    Anonymity,
    Consistency,
    Consistency1,
    ConverseConsistency,
    CompositionDown,
    CompositionUp,
    YoungRepresentation,
    Nar,
    Slba,
    Pinned,
    Subl,
    Decentralizability,
    Continuity,
    LorenzMonotonicity,
    Sandwich,
    PathNesting,
}

impl Axiom {
    pub const BATTERY: [Axiom; 17] = [
        Axiom::Feasibility,
        Axiom::EqualTreatment,
        Axiom::OrderPreservation,
        Axiom::ResourceMonotonicity,
        Axiom::Anonymity,
        Axiom::Consistency,
        Axiom::Consistency1,
        Axiom::ConverseConsistency,
        Axiom::CompositionDown,
        Axiom::CompositionUp,
        Axiom::YoungRepresentation,
        Axiom::Nar,
        Axiom::Slba,
        Axiom::Pinned,
        Axiom::Subl,
        Axiom::Decentralizability,
        Axiom::Continuity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Feasibility => "feasibility",
            Axiom::EqualTreatment => "equal_treatment",
            Axiom::OrderPreservation => "order_preservation",
            Axiom::ResourceMonotonicity => "resource_monotonicity",
            Axiom::Anonymity => "anonymity",
            Axiom::Consistency => "consistency",
            Axiom::Consistency1 => "consistency1",
            Axiom::ConverseConsistency => "converse_consistency",
            Axiom::CompositionDown => "composition_down",
            Axiom::CompositionUp => "composition_up",
            Axiom::YoungRepresentation => "young_representation",
            Axiom::Nar => "nar",
            Axiom::Slba => "slba",
            Axiom::Pinned => "pinned",
            Axiom::Subl => "subl",
            Axiom::Decentralizability => "decentralizability",
            Axiom::Continuity => "continuity",
            Axiom::LorenzMonotonicity => "lorenz_monotonicity",
            Axiom::Sandwich => "sandwich",
            Axiom::PathNesting => "path_nesting",
        }
    }

    /// Whether the check is parameterized by a threshold `L`.
    pub fn uses_threshold(self) -> bool {
        matches!(self, Axiom::Nar | Axiom::Slba | Axiom::Pinned | Axiom::Subl | Axiom::Decentralizability)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdValue {
    Fixed(Ratio),
    /// `L = c_1`, the smallest claim of each problem.
    SmallestClaim,
}

/// Which water level the threshold is clamped against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Clamp {
    /// `min(L, λ(c, e))`.
    Primal,
    /// `min(L, λ(c, c_N - e))`.
    Dual,
}

/// Threshold `L` of the threshold-dependent axioms and how it is clamped on a
/// given problem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Threshold {
    pub value: ThresholdValue,
    pub clamp: Clamp,
}

impl Threshold {
    pub fn primal(l: impl Into<Ratio>) -> Self {
        Threshold { value: ThresholdValue::Fixed(l.into()), clamp: Clamp::Primal }
    }

    pub fn dual(l: impl Into<Ratio>) -> Self {
        Threshold { value: ThresholdValue::Fixed(l.into()), clamp: Clamp::Dual }
    }

    pub fn smallest_claim() -> Self {
        Threshold { value: ThresholdValue::SmallestClaim, clamp: Clamp::Primal }
    }

    /// Threshold in force on `p`. At `e = 0` the dual clamp is undefined and
    /// the raw value is returned.
    pub fn resolve(&self, p: &ClaimsProblem) -> Ratio {
        let raw = match &self.value {
            ThresholdValue::Fixed(l) => l.clone(),
            ThresholdValue::SmallestClaim => p.smallest_claim().clone(),
        };
        match self.clamp {
            Clamp::Primal => effective_threshold(p, &raw),
            Clamp::Dual => dual_effective_threshold(p, &raw).unwrap_or(raw),
        }
    }
}

/// Extra data that, together with the problem, pins down one instance of an
/// axiom's quantifiers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Auxiliary {
    None,
    Subset { agents: Vec<usize> },
    SecondEstate { estate: Ratio },
    /// New claims vector is `c'_k = c_{perm[k]}`.
    Permutation { perm: Vec<usize> },
    /// Full claims vector after a redistribution inside `coalition`.
    Reallocation { coalition: Vec<usize>, claims: Vec<Ratio> },
    /// A feasible division other than the rule's own award.
    Candidate { awards: Vec<Ratio> },
    /// Perturbation `(c, e) + δ·direction`, `δ = scale · 2^-k`; the last
    /// entry of `direction` moves the estate.
    Perturbation { direction: Vec<Ratio>, scale: Ratio },
    Thresholds { lower: Ratio, upper: Ratio },
    Rules { better: RuleSpec, worse: RuleSpec },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub problem: ClaimsProblem,
    pub auxiliary: Auxiliary,
}

impl Witness {
    pub fn new(problem: ClaimsProblem, auxiliary: Auxiliary) -> Self {
        Witness { problem, auxiliary }
    }
}

/// Outcome of a check. A failed verdict always carries a witness that
/// reproduces the violation when passed to [`Verdict::replay`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub axiom: Axiom,
    pub rule: RuleSpec,
    pub passed: bool,
    /// Instances evaluated (up to and including the failing one on failure).
    pub trials_run: u64,
    /// Instances skipped because they fell outside the rule's domain or the
    /// axiom's premise was empty.
    pub skipped: u64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<Threshold>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Verdict {
    pub fn pass(axiom: Axiom, rule: RuleSpec, trials_run: u64, seed: u64) -> Self {
        Verdict { axiom, rule, passed: true, trials_run, skipped: 0, seed, threshold: None, witness: None, detail: None }
    }

    pub fn fail(axiom: Axiom, rule: RuleSpec, trials_run: u64, seed: u64, witness: Witness, detail: String) -> Self {
        Verdict {
            axiom,
            rule,
            passed: false,
            trials_run,
            skipped: 0,
            seed,
            threshold: None,
            witness: Some(witness),
            detail: Some(detail),
        }
    }

    pub fn with_threshold(mut self, threshold: Option<Threshold>) -> Self {
        self.threshold = threshold;
        self
    }

    /// Re-evaluates the stored witness. `Ok(true)` means the violation is
    /// reproduced; a passing verdict without a witness returns `Ok(false)`.
    pub fn replay(&self) -> Result<bool, crate::Error> {
        match &self.witness {
            None => Ok(false),
            Some(w) => crate::axioms::replay(self.axiom, &self.rule, self.threshold.as_ref(), w),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} [{}] trials={}", self.axiom, self.rule, self.trials_run)?;
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}
