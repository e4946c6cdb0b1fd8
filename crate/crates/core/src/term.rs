//! Linguistic terms shared across the pipeline: the five polarity terms and
//! the vehicle speed terms used by the causal rules.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Five-level polarity term over the [0, 1] scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Term {
    #[serde(rename = "SN")]
    StronglyNegative,
    #[serde(rename = "Neg")]
    Negative,
    #[serde(rename = "Neu")]
    Neutral,
    #[serde(rename = "P")]
    Positive,
    #[serde(rename = "SP")]
    StronglyPositive,
}

impl Term {
    pub const ALL: [Term; 5] = [
        Term::StronglyNegative,
        Term::Negative,
        Term::Neutral,
        Term::Positive,
        Term::StronglyPositive,
    ];

    /// Short label used in data files and reports.
    pub fn label(self) -> &'static str {
        match self {
            Term::StronglyNegative => "SN",
            Term::Negative => "Neg",
            Term::Neutral => "Neu",
            Term::Positive => "P",
            Term::StronglyPositive => "SP",
        }
    }

    /// Representative point of the term's interval, used as the default rule
    /// input polarity and as the default membership-function peak.
    pub fn representative(self) -> f64 {
        match self {
            Term::StronglyNegative => 0.125,
            Term::Negative => 0.375,
            Term::Neutral => 0.5,
            Term::Positive => 0.625,
            Term::StronglyPositive => 0.875,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Term {
    type Err = UnknownTerm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        // "N" appears as a shorthand for Neg in rule tables.
        match s {
            "SN" => Ok(Term::StronglyNegative),
            "Neg" | "N" => Ok(Term::Negative),
            "Neu" => Ok(Term::Neutral),
            "P" => Ok(Term::Positive),
            "SP" => Ok(Term::StronglyPositive),
            _ => Err(UnknownTerm(s.to_string())),
        }
    }
}

/// Vehicle speed terms used by the causal rule antecedents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SpeedTerm {
    VerySlow,
    Slow,
    Normal,
    Fast,
}

impl SpeedTerm {
    pub fn label(self) -> &'static str {
        match self {
            SpeedTerm::VerySlow => "VerySlow",
            SpeedTerm::Slow => "Slow",
            SpeedTerm::Normal => "Normal",
            SpeedTerm::Fast => "Fast",
        }
    }
}

impl fmt::Display for SpeedTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SpeedTerm {
    type Err = UnknownTerm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "veryslow" | "very_slow" => Ok(SpeedTerm::VerySlow),
            "slow" => Ok(SpeedTerm::Slow),
            "normal" => Ok(SpeedTerm::Normal),
            "fast" => Ok(SpeedTerm::Fast),
            _ => Err(UnknownTerm(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown linguistic term `{0}`")]
pub struct UnknownTerm(pub String);
