//! Shared three-valued verdict vocabulary for domination filters.
//!
//! Finite-quotient search and class filters can only certify one direction:
//! `Excluded` carries a violated necessary condition, `Consistent` lists the
//! checks a candidate passed, and `Certified` names the decision rule whose
//! hypotheses were verified exactly. No verdict claims to decide domination
//! in general.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum DominationVerdict {
    Excluded {
        rule: String,
        detail: String,
    },
    #[serde(rename = "consistent_with_domination")]
    Consistent {
        checks: Vec<String>,
    },
    #[serde(rename = "certified_by_theorem")]
    Certified {
        rule: String,
    },
}

impl DominationVerdict {
    pub fn excluded(rule: &str, detail: impl Into<String>) -> Self {
        DominationVerdict::Excluded {
            rule: rule.to_string(),
            detail: detail.into(),
        }
    }

    pub fn certified(rule: &str) -> Self {
        DominationVerdict::Certified {
            rule: rule.to_string(),
        }
    }

    pub fn excluded_rule(&self) -> Option<&str> {
        match self {
            DominationVerdict::Excluded { rule, .. } => Some(rule),
            _ => None,
        }
    }

    pub fn is_excluded(&self) -> bool {
        matches!(self, DominationVerdict::Excluded { .. })
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, DominationVerdict::Certified { .. })
    }
}

impl std::fmt::Display for DominationVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DominationVerdict::Excluded { rule, detail } => {
                write!(f, "excluded[{rule}]: {detail}")
            }
            DominationVerdict::Consistent { checks } => {
                write!(f, "consistent-with-domination ({})", checks.join(", "))
            }
            DominationVerdict::Certified { rule } => write!(f, "certified[{rule}]"),
        }
    }
}
