use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{dual_effective_threshold, effective_threshold};
use crate::error::Error;
use crate::problem::{dual_problem, ClaimsProblem};
use crate::ratio::Ratio;

/// Selects an allocation engine. Textual form (used by the CLI and in
/// reports): `proportional`, `equal-awards`, `cea`, `cel`, `alpha-min`,
/// `pcea:<L>`, `pcea-dual:<L>`, `dual:<rule>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RuleSpec {
    Proportional,
    EqualAwards,
    Cea,
    Cel,
    /// P-CEA compromise with threshold `L`.
    Pcea(Ratio),
    /// Dual of the P-CEA compromise with threshold `L`.
    PceaDual(Ratio),
    AlphaMin,
    /// `S^d(c, e) = c - S(c, c_N - e)`.
    DualOf(Box<RuleSpec>),
}

impl RuleSpec {
    pub fn pcea(threshold: impl Into<Ratio>) -> Self {
        RuleSpec::Pcea(threshold.into())
    }

    pub fn pcea_dual(threshold: impl Into<Ratio>) -> Self {
        RuleSpec::PceaDual(threshold.into())
    }

    /// Dual of this rule; the dual of a dual collapses to the inner rule.
    pub fn dual(&self) -> RuleSpec {
        match self {
            RuleSpec::DualOf(inner) => (**inner).clone(),
            other => RuleSpec::DualOf(Box::new(other.clone())),
        }
    }

    pub fn parameter(&self) -> Option<&Ratio> {
        match self {
            RuleSpec::Pcea(l) | RuleSpec::PceaDual(l) => Some(l),
            RuleSpec::DualOf(inner) => inner.parameter(),
            _ => None,
        }
    }

    pub fn dual_depth(&self) -> usize {
        match self {
            RuleSpec::DualOf(inner) => 1 + inner.dual_depth(),
            _ => 0,
        }
    }

    /// Parameters are non-negative and duals nest at most twice.
    pub fn validate(&self) -> Result<(), Error> {
        if self.dual_depth() > 2 {
            return Err(Error::DualNestingTooDeep);
        }
        match self.parameter() {
            Some(l) if l.is_negative() => Err(Error::NegativeParameter(l.clone())),
            _ => Ok(()),
        }
    }

    /// Whether the engine only accepts strictly positive claims.
    pub fn requires_positive_claims(&self) -> bool {
        matches!(self, RuleSpec::PceaDual(_) | RuleSpec::DualOf(_))
    }

    /// Whether the engine is guaranteed to produce a feasible division.
    pub fn is_feasible_rule(&self) -> bool {
        match self {
            RuleSpec::EqualAwards => false,
            RuleSpec::DualOf(inner) => inner.is_feasible_rule(),
            _ => true,
        }
    }

    /// Same rule with its threshold replaced by the value it takes on `p`
    /// after clamping. Evaluating the result on problems whose water level is
    /// at least that value reproduces the behaviour of the rule on `p` with
    /// the threshold held fixed.
    pub fn frozen_for(&self, p: &ClaimsProblem) -> RuleSpec {
        match self {
            RuleSpec::Pcea(l) => RuleSpec::Pcea(effective_threshold(p, l)),
            RuleSpec::PceaDual(l) => match dual_effective_threshold(p, l) {
                Some(ld) => RuleSpec::PceaDual(ld),
                None => self.clone(),
            },
            RuleSpec::DualOf(inner) => match dual_problem(p) {
                Ok(d) => RuleSpec::DualOf(Box::new(inner.frozen_for(&d))),
                Err(_) => self.clone(),
            },
            other => other.clone(),
        }
    }

    /// Short human-readable name used in table rows.
    pub fn label(&self) -> String {
        match self {
            RuleSpec::Proportional => "Proportional".into(),
            RuleSpec::EqualAwards => "EA".into(),
            RuleSpec::Cea => "CEA".into(),
            RuleSpec::Cel => "CEL".into(),
            RuleSpec::Pcea(l) => format!("psi^{l}"),
            RuleSpec::PceaDual(l) => format!("psi_dual^{l}"),
            RuleSpec::AlphaMin => "alpha_min".into(),
            RuleSpec::DualOf(inner) => format!("dual({})", inner.label()),
        }
    }
}

impl fmt::Display for RuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleSpec::Proportional => f.write_str("proportional"),
            RuleSpec::EqualAwards => f.write_str("equal-awards"),
            RuleSpec::Cea => f.write_str("cea"),
            RuleSpec::Cel => f.write_str("cel"),
            RuleSpec::Pcea(l) => write!(f, "pcea:{l}"),
            RuleSpec::PceaDual(l) => write!(f, "pcea-dual:{l}"),
            RuleSpec::AlphaMin => f.write_str("alpha-min"),
            RuleSpec::DualOf(inner) => write!(f, "dual:{inner}"),
        }
    }
}

impl FromStr for RuleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let lower = s.to_ascii_lowercase();
        if let Some(inner) = lower.strip_prefix("dual:") {
            let spec = RuleSpec::DualOf(Box::new(inner.parse()?));
            spec.validate()?;
            return Ok(spec);
        }
        let (name, arg) = match lower.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (lower.as_str(), None),
        };
        let spec = match (name, arg) {
            ("proportional" | "p", None) => RuleSpec::Proportional,
            ("equal-awards" | "ea", None) => RuleSpec::EqualAwards,
            ("cea", None) => RuleSpec::Cea,
            ("cel", None) => RuleSpec::Cel,
            ("alpha-min" | "alpha_min" | "amin", None) => RuleSpec::AlphaMin,
            ("pcea" | "psi", Some(l)) => RuleSpec::Pcea(l.parse()?),
            ("pcea-dual" | "psi-dual", Some(l)) => RuleSpec::PceaDual(l.parse()?),
            _ => return Err(Error::UnknownRule(s.to_string())),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl Serialize for RuleSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RuleSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for text in ["proportional", "equal-awards", "cea", "cel", "alpha-min", "pcea:20", "pcea-dual:5/2", "dual:cea", "dual:dual:pcea:3"] {
            let spec: RuleSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        assert_eq!("PCEA:12.5".parse::<RuleSpec>().unwrap(), RuleSpec::Pcea(Ratio::frac(25, 2)));
        assert_eq!("P".parse::<RuleSpec>().unwrap(), RuleSpec::Proportional);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!("talmud".parse::<RuleSpec>(), Err(Error::UnknownRule(_))));
        assert!(matches!("pcea".parse::<RuleSpec>(), Err(Error::UnknownRule(_))));
        assert!(matches!("pcea:-1".parse::<RuleSpec>(), Err(Error::NegativeParameter(_))));
        assert_eq!("dual:dual:dual:cea".parse::<RuleSpec>(), Err(Error::DualNestingTooDeep));
    }

    #[test]
    fn dual_collapses() {
        let r = RuleSpec::Pcea(3.into());
        assert_eq!(r.dual().dual(), r);
        assert_eq!(r.dual(), RuleSpec::DualOf(Box::new(r.clone())));
    }
}
