//! Sentiment lexicons: SentiWordNet-format scores, positive/negative opinion
//! word lists, and opinionated phrase lists.
//!
//! Every loader normalizes words through the stemmer and also indexes the raw
//! lowercase form, so lookups succeed both for preprocessed stems and for
//! literal word forms.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::path::Path;

use crate::preprocess::{stem, Pos};

/// The four SentiWordNet part-of-speech classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LexPos {
    Noun,
    Verb,
    Adjective,
    Adverb,
}

impl LexPos {
    pub fn from_pos(pos: Pos) -> Option<LexPos> {
        match pos {
            Pos::Noun | Pos::ProperNoun | Pos::Pronoun => Some(LexPos::Noun),
            Pos::Verb | Pos::VerbPast => Some(LexPos::Verb),
            Pos::Adjective | Pos::AdjComparative | Pos::AdjSuperlative => Some(LexPos::Adjective),
            Pos::Adverb | Pos::AdvSuperlative => Some(LexPos::Adverb),
            Pos::Conjunction | Pos::Other => None,
        }
    }

    fn from_letter(letter: &str) -> Option<LexPos> {
        match letter {
            "n" => Some(LexPos::Noun),
            "v" => Some(LexPos::Verb),
            "a" | "s" => Some(LexPos::Adjective),
            "r" => Some(LexPos::Adverb),
            _ => None,
        }
    }
}

/// Scores for one (word, POS): positive + objective + negative = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LexiconEntry {
    pub pos_score: f64,
    pub obj_score: f64,
    pub neg_score: f64,
}

#[derive(Debug, thiserror::Error)]
pub enum LexiconError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: scores sum to {sum}, expected at most 1")]
    ScoreSum { line: usize, sum: f64 },
    #[error("word `{0}` appears in both the positive and negative opinion lists")]
    OverlappingOrientation(String),
}

/// SentiWordNet-format lexicon. Synsets sharing a (word, POS) are averaged.
#[derive(Debug, Clone, Default)]
pub struct SentiLexicon {
    sums: HashMap<(String, LexPos), (f64, f64, f64, usize)>,
}

impl SentiLexicon {
    /// Parses the SentiWordNet 3.0 TSV layout:
    /// `POS  ID  PosScore  NegScore  SynsetTerms  Gloss`, `#` comments.
    /// Term tokens carry `#sense` suffixes which are stripped.
    pub fn parse(input: &str) -> Result<Self, LexiconError> {
        let mut lexicon = SentiLexicon::default();
        for (idx, raw) in input.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() < 5 {
                return Err(LexiconError::Parse {
                    line: line_no,
                    message: "expected POS, ID, PosScore, NegScore, SynsetTerms columns".into(),
                });
            }
            let pos = LexPos::from_letter(cols[0]).ok_or_else(|| LexiconError::Parse {
                line: line_no,
                message: format!("unknown POS column `{}`", cols[0]),
            })?;
            let pos_score: f64 = cols[2].parse().map_err(|e| LexiconError::Parse {
                line: line_no,
                message: format!("bad PosScore: {e}"),
            })?;
            let neg_score: f64 = cols[3].parse().map_err(|e| LexiconError::Parse {
                line: line_no,
                message: format!("bad NegScore: {e}"),
            })?;
            let sum = pos_score + neg_score;
            if !(0.0..=1.0 + 1e-9).contains(&sum)
                || !(0.0..=1.0).contains(&pos_score)
                || !(0.0..=1.0).contains(&neg_score)
            {
                return Err(LexiconError::ScoreSum { line: line_no, sum });
            }
            let obj_score = 1.0 - pos_score - neg_score;
            for term in cols[4].split_whitespace() {
                let word = term.split('#').next().unwrap_or(term).to_lowercase();
                if word.is_empty() {
                    continue;
                }
                lexicon.add(word.clone(), pos, pos_score, obj_score, neg_score);
                let stemmed = stem(&word);
                if stemmed != word {
                    lexicon.add(stemmed, pos, pos_score, obj_score, neg_score);
                }
            }
        }
        Ok(lexicon)
    }

    fn add(&mut self, word: String, pos: LexPos, p: f64, o: f64, n: f64) {
        let slot = self.sums.entry((word, pos)).or_insert((0.0, 0.0, 0.0, 0));
        slot.0 += p;
        slot.1 += o;
        slot.2 += n;
        slot.3 += 1;
    }

    pub fn load(path: &Path) -> Result<Self, LexiconError> {
        let input = fs::read_to_string(path).map_err(|source| LexiconError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&input)
    }

    pub fn len(&self) -> usize {
        self.sums.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sums.is_empty()
    }

    /// Averaged entry for an exact (word, POS) pair.
    pub fn entry(&self, word: &str, pos: LexPos) -> Option<LexiconEntry> {
        let key = (word.to_lowercase(), pos);
        self.sums.get(&key).map(|&(p, o, n, count)| {
            let k = count as f64;
            LexiconEntry {
                pos_score: p / k,
                obj_score: o / k,
                neg_score: n / k,
            }
        })
    }

    /// Entry lookup with POS fallback: the exact class first, then the other
    /// classes in a fixed order. Lexicons routinely file a word under a
    /// different class than the tagger picks.
    pub fn entry_any(&self, word: &str, pos: Option<LexPos>) -> Option<LexiconEntry> {
        const ORDER: [LexPos; 4] = [
            LexPos::Adjective,
            LexPos::Adverb,
            LexPos::Verb,
            LexPos::Noun,
        ];
        if let Some(p) = pos {
            if let Some(entry) = self.entry(word, p) {
                return Some(entry);
            }
        }
        ORDER
            .into_iter()
            .filter(|p| Some(*p) != pos)
            .find_map(|p| self.entry(word, p))
    }
}

/// The single scalar fed to fuzzification: the positive score when the entry
/// leans positive, otherwise a low value shrinking with the negative score.
/// Unknown words get 0.
pub fn opinion_value(word: &str, pos: Pos, lexicon: &SentiLexicon) -> f64 {
    let lex_pos = LexPos::from_pos(pos);
    let entry = lexicon
        .entry_any(word, lex_pos)
        .or_else(|| lexicon.entry_any(&stem(word), lex_pos));
    match entry {
        Some(entry) => scalar_of(entry),
        None => 0.0,
    }
}

pub fn scalar_of(entry: LexiconEntry) -> f64 {
    if entry.pos_score >= entry.neg_score {
        entry.pos_score
    } else {
        0.25 * (1.0 - entry.neg_score)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Positive,
    Negative,
    Unknown,
}

impl Orientation {
    pub fn flipped(self) -> Orientation {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
            Orientation::Unknown => Orientation::Unknown,
        }
    }
}

/// Positive and negative opinion word sets (disjoint).
#[derive(Debug, Clone, Default)]
pub struct OpinionLexicon {
    positive: BTreeSet<String>,
    negative: BTreeSet<String>,
}

impl OpinionLexicon {
    pub fn from_lists(
        positive_words: impl IntoIterator<Item = String>,
        negative_words: impl IntoIterator<Item = String>,
    ) -> Result<Self, LexiconError> {
        let mut lexicon = OpinionLexicon::default();
        for word in positive_words {
            lexicon.positive.insert(word.to_lowercase());
            lexicon.positive.insert(stem(&word));
        }
        for word in negative_words {
            lexicon.negative.insert(word.to_lowercase());
            lexicon.negative.insert(stem(&word));
        }
        if let Some(overlap) = lexicon.positive.intersection(&lexicon.negative).next() {
            return Err(LexiconError::OverlappingOrientation(overlap.clone()));
        }
        Ok(lexicon)
    }

    pub fn load(positive_path: &Path, negative_path: &Path) -> Result<Self, LexiconError> {
        Self::from_lists(
            read_word_list(positive_path)?,
            read_word_list(negative_path)?,
        )
    }

    pub fn insert_positive(&mut self, word: &str) {
        self.positive.insert(word.to_lowercase());
        self.positive.insert(stem(word));
    }

    pub fn insert_negative(&mut self, word: &str) {
        self.negative.insert(word.to_lowercase());
        self.negative.insert(stem(word));
    }

    pub fn orientation(&self, word: &str) -> Orientation {
        let key = word.to_lowercase();
        if self.positive.contains(&key) {
            Orientation::Positive
        } else if self.negative.contains(&key) {
            Orientation::Negative
        } else {
            Orientation::Unknown
        }
    }
}

fn read_word_list(path: &Path) -> Result<Vec<String>, LexiconError> {
    let input = fs::read_to_string(path).map_err(|source| LexiconError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(parse_word_list(&input))
}

fn parse_word_list(input: &str) -> Vec<String> {
    input
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect()
}

/// Opinionated phrase list: one phrase per line, underscore-joined on load.
/// `words` keeps the original token sequences for n-gram matching.
#[derive(Debug, Clone, Default)]
pub struct PhraseList {
    pub phrases: Vec<Vec<String>>,
}

impl PhraseList {
    pub fn parse(input: &str) -> Self {
        let phrases = parse_word_list(input)
            .into_iter()
            .map(|line| {
                line.split_whitespace()
                    .map(|w| w.to_lowercase())
                    .collect::<Vec<_>>()
            })
            .filter(|p| !p.is_empty())
            .collect();
        Self { phrases }
    }

    pub fn load(path: &Path) -> Result<Self, LexiconError> {
        let input = fs::read_to_string(path).map_err(|source| LexiconError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Ok(Self::parse(&input))
    }

    /// Underscore-joined forms, e.g. `a_lot`.
    pub fn joined(&self) -> impl Iterator<Item = String> + '_ {
        self.phrases.iter().map(|p| p.join("_"))
    }

    /// Does the list contain this exact token sequence (surface or stem)?
    pub fn contains_tokens(&self, tokens: &[String]) -> bool {
        self.phrases.iter().any(|p| {
            p.len() == tokens.len()
                && p.iter()
                    .zip(tokens)
                    .all(|(a, b)| a == &b.to_lowercase() || *a == stem(b))
        })
    }
}
