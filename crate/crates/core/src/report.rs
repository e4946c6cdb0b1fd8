//! The polarity map report: per-feature values, terms, sentence counts, and
//! causes, plus the aggregated city polarity.

use serde::{Deserialize, Serialize};

use crate::fuzzy::{classify_interval, Polarity};
use crate::swrl::{Cause, CauseKind};
use crate::term::Term;
use crate::text::format_truncated;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CauseEntry {
    pub name: String,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub term: Option<Term>,
}

impl From<&Cause> for CauseEntry {
    fn from(cause: &Cause) -> Self {
        match cause.kind {
            CauseKind::SubfeaturePolarity(term) => CauseEntry {
                name: cause.name.clone(),
                kind: "subfeature".into(),
                term: Some(term),
            },
            CauseKind::JamCause => CauseEntry {
                name: cause.name.clone(),
                kind: "jam_cause".into(),
                term: None,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureEntry {
    pub name: String,
    pub value: Option<f64>,
    pub term: String,
    pub sentence_count: usize,
    pub causes: Vec<CauseEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CityPolarity {
    pub value: Option<f64>,
    pub term: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarityMap {
    pub city: String,
    pub generated_at: String,
    pub features: Vec<FeatureEntry>,
    pub city_polarity: CityPolarity,
}

pub fn term_string(polarity: &Polarity) -> String {
    match polarity.term() {
        Some(term) => term.label().to_string(),
        None => "undetermined".into(),
    }
}

impl PolarityMap {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("map serializes");
        out.push('\n');
        out
    }

    pub fn from_json(input: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(input)
    }

    /// Internal consistency: every determined feature term equals the
    /// interval classification of its value.
    pub fn is_consistent(&self) -> bool {
        self.features.iter().all(|f| match f.value {
            Some(value) => match classify_interval(value) {
                Ok(term) => f.term == term.label(),
                Err(_) => false,
            },
            None => f.term == "undetermined",
        })
    }

    /// Human-readable rendering with values truncated at `decimals` places.
    pub fn to_text(&self, decimals: usize) -> String {
        let mut out = format!("City: {}\n", self.city);
        let city_value = match self.city_polarity.value {
            Some(v) => format_truncated(v, decimals),
            None => "-".into(),
        };
        out.push_str(&format!(
            "City polarity: {} ({})\n\n",
            self.city_polarity.term, city_value
        ));
        let name_width = self
            .features
            .iter()
            .map(|f| f.name.len())
            .chain(std::iter::once("Feature".len()))
            .max()
            .unwrap_or(8);
        out.push_str(&format!(
            "{:<name_width$}  {:>8}  {:>6}  {:>9}  Causes\n",
            "Feature", "Value", "Term", "Sentences"
        ));
        for feature in &self.features {
            let value = match feature.value {
                Some(v) => format_truncated(v, decimals),
                None => "-".into(),
            };
            let causes = if feature.causes.is_empty() {
                "-".to_string()
            } else {
                feature
                    .causes
                    .iter()
                    .map(|c| match &c.term {
                        Some(term) => format!("{} ({})", c.name, term.label()),
                        None => format!("{} (jam cause)", c.name),
                    })
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            out.push_str(&format!(
                "{:<name_width$}  {:>8}  {:>6}  {:>9}  {}\n",
                feature.name, value, feature.term, feature.sentence_count, causes
            ));
        }
        out
    }
}
