//! Linear keyword-weight relevance scoring and n-gram windows.
//!
//! A document's score is `bias + sum(weight * present(stem))` over the weight
//! vector; a document is relevant iff its score is strictly positive.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use crate::preprocess::stem;
use crate::text::stable_sum;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    pub entries: BTreeMap<String, f64>,
    pub bias: f64,
}

#[derive(Debug, thiserror::Error)]
pub enum RelevanceError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("weights line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("weight vector has no entries")]
    Empty,
    #[error("n-gram size must be at least 1")]
    InvalidN,
}

impl WeightVector {
    pub fn new(entries: BTreeMap<String, f64>, bias: f64) -> Result<Self, RelevanceError> {
        if entries.is_empty() {
            return Err(RelevanceError::Empty);
        }
        Ok(Self { entries, bias })
    }

    /// Parses `stem<TAB>weight` lines plus an optional `__bias__` entry.
    /// Keys are normalized through the stemmer so natural word forms work.
    pub fn parse(input: &str) -> Result<Self, RelevanceError> {
        let mut entries = BTreeMap::new();
        let mut bias = 0.0;
        for (idx, raw) in input.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let word = parts.next().unwrap_or_default();
            let value: f64 = parts
                .next()
                .ok_or_else(|| RelevanceError::Parse {
                    line: idx + 1,
                    message: "expected `stem<TAB>weight`".into(),
                })?
                .parse()
                .map_err(|e| RelevanceError::Parse {
                    line: idx + 1,
                    message: format!("bad weight: {e}"),
                })?;
            if !value.is_finite() {
                return Err(RelevanceError::Parse {
                    line: idx + 1,
                    message: "weight must be finite".into(),
                });
            }
            if word == "__bias__" {
                bias = value;
            } else {
                entries.insert(stem(word), value);
            }
        }
        Self::new(entries, bias)
    }

    pub fn load(path: &Path) -> Result<Self, RelevanceError> {
        let input = fs::read_to_string(path).map_err(|source| RelevanceError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&input)
    }
}

/// Presence-indicator linear score over a document's stem set.
pub fn score(stems: &BTreeSet<String>, weights: &WeightVector) -> f64 {
    let terms = weights
        .entries
        .iter()
        .filter(|(key, _)| stems.contains(*key))
        .map(|(_, w)| *w);
    stable_sum(std::iter::once(weights.bias).chain(terms))
}

/// Strictly positive scores are relevant.
pub fn is_relevant(stems: &BTreeSet<String>, weights: &WeightVector) -> bool {
    score(stems, weights) > 0.0
}

/// All contiguous windows of length `n`, in order.
pub fn ngrams<T: Clone>(items: &[T], n: usize) -> Result<Vec<Vec<T>>, RelevanceError> {
    if n < 1 {
        return Err(RelevanceError::InvalidN);
    }
    Ok(items.windows(n).map(|w| w.to_vec()).collect())
}
