use thiserror::Error;

use crate::ratio::Ratio;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a claims problem: total claims {total} do not exceed the estate {estate}")]
    NonClaimsProblem { total: Ratio, estate: Ratio },
    #[error("claim of agent {index} is negative ({value})")]
    NegativeClaim { index: usize, value: Ratio },
    #[error("estate is negative ({0})")]
    NegativeEstate(Ratio),
    #[error("a claims problem needs at least one agent")]
    EmptyAgentSet,
    #[error("subset is empty")]
    EmptySubset,
    #[error("subset must be a proper subset of the agents")]
    ImproperSubset,
    #[error("agent index {index} out of range for {agents} agents")]
    AgentOutOfRange { index: usize, agents: usize },
    #[error("dual problem is undefined for a zero estate")]
    ZeroEstateDual,
    #[error("dual rules require every claim to be positive")]
    DualRequiresPositiveClaims,
    #[error("rule parameter must be non-negative, got {0}")]
    NegativeParameter(Ratio),
    #[error("dual nesting deeper than two levels")]
    DualNestingTooDeep,
    #[error("vectors have different lengths ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("vectors have different totals ({0} vs {1})")]
    UnequalTotals(Ratio, Ratio),
    #[error("threshold grid value {0} lies outside [0, {1}]")]
    GridOutOfRange(Ratio, Ratio),
    #[error("invalid number: {0}")]
    ParseRatio(String),
    #[error("unknown rule {0:?}")]
    UnknownRule(String),
}
