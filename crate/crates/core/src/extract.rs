//! Pairing of ontology features found in clause noun phrases with the
//! clause's opinion words and subjectivity cues.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use crate::lexicon::{opinion_value, OpinionLexicon, Orientation, PhraseList, SentiLexicon};
use crate::ontology::FuzzyOntology;
use crate::preprocess::{stem, Clause, Pos};

/// One opinion-carrying word inside a clause.
#[derive(Debug, Clone, PartialEq)]
pub struct OpinionWord {
    pub surface: String,
    pub stem: String,
    pub pos: Pos,
    pub scalar: f64,
    pub orientation: Orientation,
    /// Set when an odd number of `not` tokens directly precedes the word;
    /// the fuzzy layer mirrors the scalar for negated words.
    pub negated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CueKind {
    SuperlativeAdverbPositive,
    PastTenseNegative,
    ComparativeAdjective,
    PronounSubjective,
}

/// A subjectivity cue, one per triggering token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubjectivityCue {
    pub kind: CueKind,
    pub token: String,
}

/// One matched ontology feature with the clause's opinion words.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureOpinion {
    pub feature: String,
    pub doc_id: String,
    pub clause_index: usize,
    pub opinion_words: Vec<OpinionWord>,
    pub cues: Vec<SubjectivityCue>,
}

/// Extraction context: the ontology plus the lexicons consulted per word.
pub struct Extractor<'a> {
    pub ontology: &'a FuzzyOntology,
    pub senti: &'a SentiLexicon,
    pub opinions: &'a OpinionLexicon,
    /// Copulas and auxiliaries never treated as opinion words.
    pub auxiliaries: &'a AuxiliaryList,
}

impl Extractor<'_> {
    /// One `FeatureOpinion` per concept matched in the clause's noun runs;
    /// clauses matching no concept yield nothing. Opinion words are the
    /// clause's adjectives, adverbs, and verbs outside matched noun phrases.
    pub fn extract_pairs(&self, clause: &Clause) -> Vec<FeatureOpinion> {
        let mut matched_positions: BTreeSet<usize> = BTreeSet::new();
        let mut features: Vec<String> = Vec::new();

        // Maximal runs of noun tokens (common and proper), matched left to
        // right with the longest synonym window winning.
        let mut run_start = None;
        let mut runs: Vec<(usize, usize)> = Vec::new();
        for (i, token) in clause.tokens.iter().enumerate() {
            let in_run = matches!(token.pos, Pos::Noun | Pos::ProperNoun);
            match (in_run, run_start) {
                (true, None) => run_start = Some(i),
                (false, Some(start)) => {
                    runs.push((start, i));
                    run_start = None;
                }
                _ => {}
            }
        }
        if let Some(start) = run_start {
            runs.push((start, clause.tokens.len()));
        }

        for (start, end) in runs {
            let stems: Vec<String> = clause.tokens[start..end]
                .iter()
                .map(|t| t.stem.clone())
                .collect();
            for (range, concept) in self.ontology.find_concept_spans(&stems) {
                for offset in range.clone() {
                    matched_positions.insert(start + offset);
                }
                if !features.contains(&concept.name) {
                    features.push(concept.name.clone());
                }
            }
        }

        if features.is_empty() {
            return Vec::new();
        }

        let opinion_words = self.opinion_words(clause, &matched_positions);
        let cues = self.detect_cues(clause);

        features
            .into_iter()
            .map(|feature| FeatureOpinion {
                feature,
                doc_id: clause.source_doc.clone(),
                clause_index: clause.index,
                opinion_words: opinion_words.clone(),
                cues: cues.clone(),
            })
            .collect()
    }

    fn opinion_words(&self, clause: &Clause, matched: &BTreeSet<usize>) -> Vec<OpinionWord> {
        let mut words = Vec::new();
        let mut pending_negations = 0usize;
        for (i, token) in clause.tokens.iter().enumerate() {
            if token.stem == "not" {
                pending_negations += 1;
                continue;
            }
            let eligible = token.pos.is_opinion_class()
                && !matched.contains(&i)
                && !self.auxiliaries.contains(&token.stem);
            if eligible {
                let orientation = self.opinions.orientation(&token.stem);
                let negated = pending_negations % 2 == 1;
                words.push(OpinionWord {
                    surface: token.surface.clone(),
                    stem: token.stem.clone(),
                    pos: token.pos,
                    scalar: opinion_value(&token.stem, token.pos, self.senti),
                    orientation: if negated {
                        orientation.flipped()
                    } else {
                        orientation
                    },
                    negated,
                });
            }
            pending_negations = 0;
        }
        words
    }

    /// One cue per triggering token: superlative adverbs, past-tense verbs
    /// from the negative list, comparative adjectives, personal pronouns.
    pub fn detect_cues(&self, clause: &Clause) -> Vec<SubjectivityCue> {
        clause
            .tokens
            .iter()
            .filter_map(|token| {
                let kind = match token.pos {
                    Pos::AdvSuperlative => Some(CueKind::SuperlativeAdverbPositive),
                    Pos::VerbPast
                        if self.opinions.orientation(&token.stem) == Orientation::Negative =>
                    {
                        Some(CueKind::PastTenseNegative)
                    }
                    Pos::AdjComparative => Some(CueKind::ComparativeAdjective),
                    Pos::Pronoun => Some(CueKind::PronounSubjective),
                    _ => None,
                };
                kind.map(|kind| SubjectivityCue {
                    kind,
                    token: token.surface.clone(),
                })
            })
            .collect()
    }
}

/// Copula/auxiliary word list (data file, one word per line).
#[derive(Debug, Clone, Default)]
pub struct AuxiliaryList {
    stems: BTreeSet<String>,
}

impl AuxiliaryList {
    pub fn parse(input: &str) -> Self {
        let mut stems = BTreeSet::new();
        for line in input.lines() {
            let word = line.trim();
            if word.is_empty() || word.starts_with('#') {
                continue;
            }
            stems.insert(word.to_lowercase());
            stems.insert(stem(word));
        }
        Self { stems }
    }

    pub fn load(path: &Path) -> Result<Self, std::io::Error> {
        Ok(Self::parse(&fs::read_to_string(path)?))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.stems.contains(&word.to_lowercase())
    }
}

/// Phrase lists grouped by the orientation they assign to merged phrases.
pub struct PhraseLists<'a> {
    pub positive: &'a PhraseList,
    pub neutral: &'a PhraseList,
    pub negative: &'a PhraseList,
}

impl PhraseLists<'_> {
    fn orientation_of(&self, tokens: &[String]) -> Option<Orientation> {
        // Longest-match callers probe trigrams before bigrams; within one
        // length the positive list wins ties.
        if self.positive.contains_tokens(tokens) {
            Some(Orientation::Positive)
        } else if self.negative.contains_tokens(tokens) {
            Some(Orientation::Negative)
        } else if self.neutral.contains_tokens(tokens) {
            Some(Orientation::Unknown)
        } else {
            None
        }
    }
}

/// Merges multi-word opinion phrases (`a lot`) into single opinion entries
/// when a clause n-gram appears in a phrase list. Trigrams win over
/// overlapping bigrams. Pairs without phrase hits are returned unchanged.
pub fn attach_phrases(
    pairs: Vec<FeatureOpinion>,
    lists: &PhraseLists<'_>,
    senti: &SentiLexicon,
) -> Vec<FeatureOpinion> {
    pairs
        .into_iter()
        .map(|mut pair| {
            pair.opinion_words = merge_words(pair.opinion_words, lists, senti);
            pair
        })
        .collect()
}

fn merge_words(
    words: Vec<OpinionWord>,
    lists: &PhraseLists<'_>,
    senti: &SentiLexicon,
) -> Vec<OpinionWord> {
    let mut merged = Vec::with_capacity(words.len());
    let mut i = 0;
    while i < words.len() {
        let mut taken = None;
        for n in [3usize, 2] {
            if i + n > words.len() {
                continue;
            }
            let window: Vec<String> = words[i..i + n].iter().map(|w| w.surface.clone()).collect();
            if let Some(orientation) = lists.orientation_of(&window) {
                let joined = window.join("_").to_lowercase();
                merged.push(OpinionWord {
                    surface: joined.clone(),
                    stem: stem(&joined),
                    pos: Pos::Adverb,
                    scalar: opinion_value(&joined, Pos::Adverb, senti),
                    orientation,
                    negated: false,
                });
                taken = Some(n);
                break;
            }
        }
        match taken {
            Some(n) => i += n,
            None => {
                merged.push(words[i].clone());
                i += 1;
            }
        }
    }
    merged
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preprocess::{pos_tag, split_clauses, TagLexicon};

    fn tag_lexicon() -> TagLexicon {
        TagLexicon::parse(concat!(
            "park\tNoun\nlocation\tNoun\nfacilities\tNoun\nroad\tNoun\nroute\tNoun\n",
            "traffic\tNoun\naccident\tNoun\n",
            "is\tVerb\nhas\tVerb\nwas\tVerb\n",
            "very\tAdverb\nnot\tAdverb\never\tAdverb\nagain\tAdverb\n",
            "clean\tAdjective\ngood\tAdjective\ncrowded\tAdjective\nopen\tAdjective\n",
            "wonderful\tAdjective\n",
            "jammed\tVerbPast\n",
            "fastest\tAdvSuperlative\n",
            "better\tAdjComparative\n",
            "it\tPronoun\n",
            "a\tAdverb\nlot\tNoun\n",
            "and\tConjunction\nbut\tConjunction\n",
        ))
        .unwrap()
    }

    fn ontology() -> FuzzyOntology {
        FuzzyOntology::parse(
            "\
concept Parks kind CityFeature
synonym Parks park
concept Location kind TransportationActivity
concept New_York kind CityFeature
synonym New_York new-york
concept Road kind TransportationActivity
concept Traffic kind TransportationActivity
concept Accident kind TransportationActivity
",
        )
        .unwrap()
    }

    fn senti() -> SentiLexicon {
        SentiLexicon::parse(concat!(
            "a\t1\t0.5\t0\tclean#1\tg\n",
            "a\t2\t0.75\t0\tgood#1\tg\n",
            "a\t3\t0.5\t0.125\tvery#1\tg\n",
            "a\t4\t0\t0.375\tcrowded#1\tg\n",
            "r\t5\t0.625\t0\ta_lot#1\tg\n",
        ))
        .unwrap()
    }

    fn opinions() -> OpinionLexicon {
        OpinionLexicon::from_lists(
            ["good".to_string(), "clean".to_string()],
            ["crowded".to_string(), "jammed".to_string()],
        )
        .unwrap()
    }

    fn auxiliaries() -> AuxiliaryList {
        AuxiliaryList::parse("is\nhas\nwas\n")
    }

    fn clauses_of(sentence: &str) -> Vec<Clause> {
        let words = crate::text::tokenize(sentence);
        let tokens = pos_tag(&words, &tag_lexicon());
        let mut idx = 0;
        split_clauses(tokens, "d1", &mut idx)
    }

    fn extract_all(sentence: &str) -> Vec<FeatureOpinion> {
        let ontology = ontology();
        let senti = senti();
        let opinions = opinions();
        let auxiliaries = auxiliaries();
        let extractor = Extractor {
            ontology: &ontology,
            senti: &senti,
            opinions: &opinions,
            auxiliaries: &auxiliaries,
        };
        clauses_of(sentence)
            .iter()
            .flat_map(|c| extractor.extract_pairs(c))
            .collect()
    }

    #[test]
    fn park_clause_pairs_feature_with_opinion_words() {
        let pairs = extract_all("Park is very clean");
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].feature, "Parks");
        let words: Vec<&str> = pairs[0]
            .opinion_words
            .iter()
            .map(|w| w.surface.as_str())
            .collect();
        assert_eq!(words, vec!["very", "clean"]);
        assert_eq!(pairs[0].opinion_words[1].scalar, 0.5);
    }

    #[test]
    fn clause_without_ontology_noun_is_eliminated() {
        assert!(extract_all("It was wonderful").is_empty());
    }

    #[test]
    fn clause_matching_two_concepts_yields_two_pairs_sharing_words() {
        let pairs = extract_all("Road traffic is crowded");
        let features: Vec<&str> = pairs.iter().map(|p| p.feature.as_str()).collect();
        assert_eq!(features, vec!["Road", "Traffic"]);
        assert_eq!(pairs[0].opinion_words, pairs[1].opinion_words);
    }

    #[test]
    fn negation_flips_orientation_and_double_negation_restores_it() {
        let pairs = extract_all("Park is not clean");
        let word = &pairs[0].opinion_words[0];
        assert_eq!(word.surface, "clean");
        assert!(word.negated);
        assert_eq!(word.orientation, Orientation::Negative);

        let pairs = extract_all("Park is not not clean");
        let word = &pairs[0].opinion_words[0];
        assert!(!word.negated);
        assert_eq!(word.orientation, Orientation::Positive);
    }

    #[test]
    fn cues_fire_once_per_trigger_token() {
        let ontology = ontology();
        let senti = senti();
        let opinions = opinions();
        let auxiliaries = auxiliaries();
        let extractor = Extractor {
            ontology: &ontology,
            senti: &senti,
            opinions: &opinions,
            auxiliaries: &auxiliaries,
        };

        let fastest = clauses_of("fastest route is here ever");
        let cues = extractor.detect_cues(&fastest[0]);
        assert_eq!(cues.len(), 1);
        assert_eq!(cues[0].kind, CueKind::SuperlativeAdverbPositive);

        let jammed = clauses_of("traffic is jammed again");
        let cues = extractor.detect_cues(&jammed[0]);
        assert_eq!(cues.len(), 1);
        assert_eq!(cues[0].kind, CueKind::PastTenseNegative);

        let open = clauses_of("road is open");
        assert!(extractor.detect_cues(&open[0]).is_empty());
    }

    fn word(surface: &str) -> OpinionWord {
        OpinionWord {
            surface: surface.to_string(),
            stem: stem(surface),
            pos: Pos::Adverb,
            scalar: 0.0,
            orientation: Orientation::Unknown,
            negated: false,
        }
    }

    fn pair_of(words: &[&str]) -> FeatureOpinion {
        FeatureOpinion {
            feature: "New_York".into(),
            doc_id: "d1".into(),
            clause_index: 0,
            opinion_words: words.iter().map(|w| word(w)).collect(),
            cues: Vec::new(),
        }
    }

    #[test]
    fn bigram_phrase_merges_into_single_positive_entry() {
        let positive = PhraseList::parse("a lot\n");
        let neutral = PhraseList::parse("");
        let negative = PhraseList::parse("");
        let lists = PhraseLists {
            positive: &positive,
            neutral: &neutral,
            negative: &negative,
        };
        let senti = senti();
        let merged = attach_phrases(vec![pair_of(&["a", "lot", "crowded"])], &lists, &senti);
        let words: Vec<&str> = merged[0]
            .opinion_words
            .iter()
            .map(|w| w.surface.as_str())
            .collect();
        assert_eq!(words, vec!["a_lot", "crowded"]);
        assert_eq!(
            merged[0].opinion_words[0].orientation,
            Orientation::Positive
        );
        assert_eq!(merged[0].opinion_words[0].scalar, 0.625);
    }

    #[test]
    fn no_phrase_hit_leaves_pairs_unchanged() {
        let positive = PhraseList::parse("a lot\n");
        let neutral = PhraseList::parse("");
        let negative = PhraseList::parse("");
        let lists = PhraseLists {
            positive: &positive,
            neutral: &neutral,
            negative: &negative,
        };
        let senti = senti();
        let original = vec![pair_of(&["very", "crowded"])];
        let merged = attach_phrases(original.clone(), &lists, &senti);
        assert_eq!(merged, original);
    }

    #[test]
    fn overlapping_trigram_beats_bigram() {
        // Independently enumerate both merge orders on a 3-token fixture:
        // bigram-first would produce ["x_y", "z"], trigram-first ["x_y_z"].
        // Longest match requires the trigram result.
        let positive = PhraseList::parse("x y\nx y z\n");
        let neutral = PhraseList::parse("");
        let negative = PhraseList::parse("");
        let lists = PhraseLists {
            positive: &positive,
            neutral: &neutral,
            negative: &negative,
        };
        let senti = senti();

        let bigram_first: Vec<String> = vec!["x_y".into(), "z".into()];
        let trigram_first: Vec<String> = vec!["x_y_z".into()];
        assert_ne!(bigram_first, trigram_first);

        let merged = attach_phrases(vec![pair_of(&["x", "y", "z"])], &lists, &senti);
        let words: Vec<String> = merged[0]
            .opinion_words
            .iter()
            .map(|w| w.surface.clone())
            .collect();
        assert_eq!(words, trigram_first);
    }

    #[test]
    fn extraction_is_clause_local_and_deterministic() {
        let once = extract_all("Park is very clean and location is good");
        let twice = extract_all("Park is very clean and location is good");
        assert_eq!(once, twice);
        assert_eq!(once.len(), 2);
        assert_eq!(once[0].feature, "Parks");
        assert_eq!(once[1].feature, "Location");
        // Words stay within their clause.
        assert_eq!(once[0].opinion_words.len(), 2);
        let loc_words: Vec<&str> = once[1]
            .opinion_words
            .iter()
            .map(|w| w.surface.as_str())
            .collect();
        assert_eq!(loc_words, vec!["good"]);
    }
}
