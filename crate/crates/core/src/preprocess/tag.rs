//! Lexicon-based part-of-speech tagging with suffix-heuristic fallback.

use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::PreprocessError;

/// Part-of-speech classes distinguished by the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pos {
    Noun,
    ProperNoun,
    Pronoun,
    Verb,
    VerbPast,
    Adjective,
    AdjComparative,
    AdjSuperlative,
    Adverb,
    AdvSuperlative,
    Conjunction,
    Other,
}

impl Pos {
    pub fn is_noun_class(self) -> bool {
        matches!(self, Pos::Noun | Pos::ProperNoun | Pos::Pronoun)
    }

    pub fn is_verb_class(self) -> bool {
        matches!(self, Pos::Verb | Pos::VerbPast)
    }

    /// Adjectives, adverbs, and verbs carry opinions.
    pub fn is_opinion_class(self) -> bool {
        matches!(
            self,
            Pos::Verb
                | Pos::VerbPast
                | Pos::Adjective
                | Pos::AdjComparative
                | Pos::AdjSuperlative
                | Pos::Adverb
                | Pos::AdvSuperlative
        )
    }
}

impl FromStr for Pos {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Noun" => Ok(Pos::Noun),
            "ProperNoun" => Ok(Pos::ProperNoun),
            "Pronoun" => Ok(Pos::Pronoun),
            "Verb" => Ok(Pos::Verb),
            "VerbPast" => Ok(Pos::VerbPast),
            "Adjective" => Ok(Pos::Adjective),
            "AdjComparative" => Ok(Pos::AdjComparative),
            "AdjSuperlative" => Ok(Pos::AdjSuperlative),
            "Adverb" => Ok(Pos::Adverb),
            "AdvSuperlative" => Ok(Pos::AdvSuperlative),
            "Conjunction" => Ok(Pos::Conjunction),
            "Other" => Ok(Pos::Other),
            other => Err(format!("unknown POS tag `{other}`")),
        }
    }
}

/// Word -> tag table. Lookup is case-insensitive on surface forms; words not
/// in the table fall back to capitalization and suffix heuristics.
#[derive(Debug, Clone, Default)]
pub struct TagLexicon {
    entries: HashMap<String, Pos>,
}

impl TagLexicon {
    pub fn parse(input: &str) -> Result<Self, PreprocessError> {
        let mut entries = HashMap::new();
        for (idx, raw) in input.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let word = parts.next().unwrap_or_default();
            let tag = parts.next().ok_or_else(|| PreprocessError::TagLexicon {
                line: idx + 1,
                message: "expected `word<TAB>tag`".into(),
            })?;
            let pos = tag
                .parse::<Pos>()
                .map_err(|message| PreprocessError::TagLexicon {
                    line: idx + 1,
                    message,
                })?;
            entries.insert(word.to_lowercase(), pos);
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self, PreprocessError> {
        let input = fs::read_to_string(path).map_err(|source| PreprocessError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&input)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Tags one token. Lexicon entry wins; otherwise capitalized tokens are
    /// proper nouns, then -ed / -est / -ly suffix heuristics, default Noun.
    pub fn tag_word(&self, surface: &str) -> Pos {
        if let Some(&pos) = self.entries.get(&surface.to_lowercase()) {
            return pos;
        }
        if !surface.chars().any(|c| c.is_alphabetic()) {
            return Pos::Other;
        }
        if surface.chars().next().is_some_and(|c| c.is_uppercase()) {
            return Pos::ProperNoun;
        }
        let lower = surface.to_lowercase();
        if lower.len() > 3 && lower.ends_with("ed") {
            Pos::VerbPast
        } else if lower.len() > 4 && lower.ends_with("est") {
            Pos::AdjSuperlative
        } else if lower.len() > 3 && lower.ends_with("ly") {
            Pos::Adverb
        } else {
            Pos::Noun
        }
    }
}
