//! Text preprocessing: cleaning, sentence and clause splitting, stemming,
//! and part-of-speech tagging.
//!
//! The per-document order is: phrase joining happens upstream (see
//! [`crate::pipeline`]), then [`clean`], sentence split, tokenize, tag,
//! stopword removal, clause split, with stems carried on every token.

mod stem;
mod tag;

pub use stem::stem;
pub use tag::{Pos, TagLexicon};

use std::collections::HashSet;
use std::fs;
use std::path::Path;
use std::sync::OnceLock;

use regex::Regex;

#[derive(Debug, thiserror::Error)]
pub enum PreprocessError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("tag lexicon line {line}: {message}")]
    TagLexicon { line: usize, message: String },
}

/// A POS-tagged token with its surface form and stem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub stem: String,
    pub pos: Pos,
}

/// A complete clause: at least one noun-class and one verb-class token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub tokens: Vec<Token>,
    pub source_doc: String,
    pub index: usize,
}

impl Clause {
    pub fn is_complete(tokens: &[Token]) -> bool {
        tokens.iter().any(|t| t.pos.is_noun_class()) && tokens.iter().any(|t| t.pos.is_verb_class())
    }
}

fn date_regexes() -> &'static (Regex, Regex) {
    static RE: OnceLock<(Regex, Regex)> = OnceLock::new();
    RE.get_or_init(|| {
        (
            Regex::new(r"^\d{1,2}/\d{1,2}/\d{4}$").unwrap(),
            Regex::new(r"^\d{4}-\d{2}-\d{2}$").unwrap(),
        )
    })
}

const MONTHS: [&str; 12] = [
    "january",
    "february",
    "march",
    "april",
    "may",
    "june",
    "july",
    "august",
    "september",
    "october",
    "november",
    "december",
];

fn is_day_number(token: &str) -> bool {
    let trimmed = token
        .trim_end_matches(|c: char| !c.is_alphanumeric())
        .trim_end_matches("st")
        .trim_end_matches("nd")
        .trim_end_matches("rd")
        .trim_end_matches("th");
    matches!(trimmed.parse::<u8>(), Ok(d) if (1..=31).contains(&d))
}

fn is_date_token(token: &str) -> bool {
    let core = token.trim_matches(|c: char| !c.is_alphanumeric() && c != '/' && c != '-');
    let (dmy, iso) = date_regexes();
    dmy.is_match(core) || iso.is_match(core)
}

/// Removes `#`/`@` characters (keeping the attached word), date tokens
/// (DD/MM/YYYY, YYYY-MM-DD, month name + day), and the articles a/an/the,
/// then normalizes whitespace. Idempotent.
pub fn clean(text: &str) -> String {
    let no_symbols: String = text.chars().filter(|&c| c != '#' && c != '@').collect();
    let words: Vec<&str> = no_symbols.split_whitespace().collect();
    let mut kept: Vec<&str> = Vec::with_capacity(words.len());
    let mut i = 0;
    while i < words.len() {
        let word = words[i];
        let lower = word.to_lowercase();
        let bare = lower.trim_matches(|c: char| !c.is_alphanumeric());
        if bare == "a" || bare == "an" || bare == "the" {
            i += 1;
            continue;
        }
        if is_date_token(word) {
            i += 1;
            continue;
        }
        if MONTHS.contains(&bare) && words.get(i + 1).is_some_and(|next| is_day_number(next)) {
            i += 2;
            continue;
        }
        kept.push(word);
        i += 1;
    }
    kept.join(" ")
}

/// Splits cleaned text into sentences on `.`, `!`, `?`.
pub fn split_sentences(text: &str) -> Vec<String> {
    text.split(['.', '!', '?'])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

/// Tags every token exactly once and attaches its stem.
pub fn pos_tag(tokens: &[String], lexicon: &TagLexicon) -> Vec<Token> {
    tokens
        .iter()
        .map(|surface| Token {
            surface: surface.clone(),
            stem: stem(surface),
            pos: lexicon.tag_word(surface),
        })
        .collect()
}

/// Splits a tagged sentence at coordinating conjunctions (and, but) when both
/// sides form complete clauses; incomplete right fragments attach to the
/// preceding clause, and a leading incomplete fragment is dropped.
pub fn split_clauses(tokens: Vec<Token>, source_doc: &str, next_index: &mut usize) -> Vec<Clause> {
    let mut segments: Vec<Vec<Token>> = vec![Vec::new()];
    for token in tokens {
        let is_split_point = token.pos == Pos::Conjunction
            && matches!(token.surface.to_lowercase().as_str(), "and" | "but");
        if is_split_point {
            segments.push(Vec::new());
        } else {
            segments
                .last_mut()
                .expect("segments never empty")
                .push(token);
        }
    }

    let mut clauses: Vec<Clause> = Vec::new();
    for segment in segments {
        if segment.is_empty() {
            continue;
        }
        if Clause::is_complete(&segment) {
            clauses.push(Clause {
                tokens: segment,
                source_doc: source_doc.to_string(),
                index: *next_index,
            });
            *next_index += 1;
        } else if let Some(last) = clauses.last_mut() {
            last.tokens.extend(segment);
        }
        // Leading incomplete fragments are dropped.
    }
    clauses
}

/// Stopword list: whole-word removals applied after tagging, before clause
/// splitting. The bundled list holds articles, prepositions, and fillers that
/// never carry the clause's noun or verb.
#[derive(Debug, Clone, Default)]
pub struct StopwordList {
    words: HashSet<String>,
}

impl StopwordList {
    pub fn parse(input: &str) -> Self {
        let words = input
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_lowercase)
            .collect();
        Self { words }
    }

    pub fn load(path: &Path) -> Result<Self, PreprocessError> {
        let input = fs::read_to_string(path).map_err(|source| PreprocessError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Ok(Self::parse(&input))
    }

    pub fn contains(&self, surface: &str) -> bool {
        self.words.contains(&surface.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}
