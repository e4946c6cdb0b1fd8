//! End-to-end orchestration: configuration, per-document processing
//! (retrieve, preprocess, filter, extract), per-feature fuzzy scoring,
//! causal-rule derivation, and the polarity map / evaluation reports.
//!
//! Documents are processed in parallel and merged in (document id, clause
//! index) order, so output bytes do not depend on the thread count.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use chrono::{SecondsFormat, Utc};
use rayon::prelude::*;
use regex::Regex;

use crate::corpus::{load_corpus, Corpus, CorpusError, Document};
use crate::eval::{evaluate, EvalError, EvalReport, GoldLabels, Predictions};
use crate::extract::{attach_phrases, AuxiliaryList, Extractor, FeatureOpinion, PhraseLists};
use crate::fuzzy::{evaluate_words, FuzzyError, FuzzyRule, MfBank, Polarity};
use crate::lexicon::{LexiconError, OpinionLexicon, PhraseList, SentiLexicon};
use crate::ontology::{FuzzyOntology, OntologyError};
use crate::preprocess::{
    clean, pos_tag, split_clauses, split_sentences, Clause, PreprocessError, StopwordList,
    TagLexicon,
};
use crate::query::{load_queries, QueryAst, QueryError};
use crate::relevance::{is_relevant, RelevanceError, WeightVector};
use crate::report::{term_string, CauseEntry, CityPolarity, FeatureEntry, PolarityMap};
use crate::swrl::{
    apply_rules, cause_report, city_polarity, CausalRule, Fact, FeaturePolarity, SpeedTermTable,
    SwrlError,
};
use crate::term::{SpeedTerm, Term};
use crate::text;

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("config: {0}")]
    Config(String),
    #[error("config: cannot read {path}: {source}")]
    ConfigIo {
        path: String,
        source: std::io::Error,
    },
    #[error("config: missing input file for `{key}`: {path}")]
    MissingFile { key: &'static str, path: PathBuf },
    #[error("corpus: {0}")]
    Corpus(#[from] CorpusError),
    #[error("queries: {0}")]
    Query(#[from] QueryError),
    #[error("weights: {0}")]
    Relevance(#[from] RelevanceError),
    #[error("ontology: {0}")]
    Ontology(#[from] OntologyError),
    #[error("lexicon: {0}")]
    Lexicon(#[from] LexiconError),
    #[error("preprocess: {0}")]
    Preprocess(#[from] PreprocessError),
    #[error("fuzzy: {0}")]
    Fuzzy(#[from] FuzzyError),
    #[error("rules: {0}")]
    Swrl(#[from] SwrlError),
    #[error("eval: {0}")]
    Eval(#[from] EvalError),
    #[error("output: cannot write {path}: {source}")]
    OutputIo {
        path: String,
        source: std::io::Error,
    },
}

/// Paths and options for one run. The config file holds one `key = value`
/// per line with `#` comments; relative paths resolve against the config
/// file's directory.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub corpus: PathBuf,
    pub queries: PathBuf,
    pub weights: PathBuf,
    pub ontology: PathBuf,
    pub sentiwordnet: PathBuf,
    pub positive_words: PathBuf,
    pub negative_words: PathBuf,
    pub positive_phrases: PathBuf,
    pub neutral_phrases: PathBuf,
    pub negative_phrases: PathBuf,
    pub mf_bank: PathBuf,
    pub fuzzy_rules: PathBuf,
    pub causal_rules: PathBuf,
    pub tag_lexicon: PathBuf,
    pub stopwords: PathBuf,
    pub auxiliaries: PathBuf,
    pub speed_terms: PathBuf,
    pub out_dir: Option<PathBuf>,
    pub city: Option<String>,
    pub precision: usize,
}

const PATH_KEYS: [&str; 17] = [
    "corpus",
    "queries",
    "weights",
    "ontology",
    "sentiwordnet",
    "positive_words",
    "negative_words",
    "positive_phrases",
    "neutral_phrases",
    "negative_phrases",
    "mf_bank",
    "fuzzy_rules",
    "causal_rules",
    "tag_lexicon",
    "stopwords",
    "auxiliaries",
    "speed_terms",
];

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, PipelineError> {
        let input = fs::read_to_string(path).map_err(|source| PipelineError::ConfigIo {
            path: path.display().to_string(),
            source,
        })?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Self::parse(&input, base)
    }

    pub fn parse(input: &str, base: &Path) -> Result<Self, PipelineError> {
        let mut values: BTreeMap<String, String> = BTreeMap::new();
        for (idx, raw) in input.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                PipelineError::Config(format!("line {}: expected `key = value`", idx + 1))
            })?;
            let key = key.trim().to_string();
            let known = PATH_KEYS.contains(&key.as_str())
                || matches!(key.as_str(), "out_dir" | "city" | "precision");
            if !known {
                return Err(PipelineError::Config(format!(
                    "line {}: unknown key `{key}`",
                    idx + 1
                )));
            }
            values.insert(key, value.trim().to_string());
        }
        let path_of = |key: &'static str| -> Result<PathBuf, PipelineError> {
            let value = values
                .get(key)
                .ok_or_else(|| PipelineError::Config(format!("missing key `{key}`")))?;
            Ok(base.join(value))
        };
        let precision = match values.get("precision") {
            Some(v) => v
                .parse::<usize>()
                .map_err(|e| PipelineError::Config(format!("bad precision: {e}")))?,
            None => 2,
        };
        Ok(RunConfig {
            corpus: path_of("corpus")?,
            queries: path_of("queries")?,
            weights: path_of("weights")?,
            ontology: path_of("ontology")?,
            sentiwordnet: path_of("sentiwordnet")?,
            positive_words: path_of("positive_words")?,
            negative_words: path_of("negative_words")?,
            positive_phrases: path_of("positive_phrases")?,
            neutral_phrases: path_of("neutral_phrases")?,
            negative_phrases: path_of("negative_phrases")?,
            mf_bank: path_of("mf_bank")?,
            fuzzy_rules: path_of("fuzzy_rules")?,
            causal_rules: path_of("causal_rules")?,
            tag_lexicon: path_of("tag_lexicon")?,
            stopwords: path_of("stopwords")?,
            auxiliaries: path_of("auxiliaries")?,
            speed_terms: path_of("speed_terms")?,
            out_dir: values.get("out_dir").map(|v| base.join(v)),
            city: values.get("city").cloned(),
            precision,
        })
    }

    /// Every referenced input must exist before the run starts.
    pub fn check_files(&self) -> Result<(), PipelineError> {
        let pairs: [(&'static str, &Path); 17] = [
            ("corpus", &self.corpus),
            ("queries", &self.queries),
            ("weights", &self.weights),
            ("ontology", &self.ontology),
            ("sentiwordnet", &self.sentiwordnet),
            ("positive_words", &self.positive_words),
            ("negative_words", &self.negative_words),
            ("positive_phrases", &self.positive_phrases),
            ("neutral_phrases", &self.neutral_phrases),
            ("negative_phrases", &self.negative_phrases),
            ("mf_bank", &self.mf_bank),
            ("fuzzy_rules", &self.fuzzy_rules),
            ("causal_rules", &self.causal_rules),
            ("tag_lexicon", &self.tag_lexicon),
            ("stopwords", &self.stopwords),
            ("auxiliaries", &self.auxiliaries),
            ("speed_terms", &self.speed_terms),
        ];
        for (key, path) in pairs {
            if !path.is_file() {
                return Err(PipelineError::MissingFile {
                    key,
                    path: path.to_path_buf(),
                });
            }
        }
        Ok(())
    }
}

/// Joins listed multi-word phrases in raw text with underscores so that
/// cleaning (which removes articles like the `a` in `a lot`) cannot split
/// them before extraction sees them.
#[derive(Debug)]
pub struct PhraseJoiner {
    patterns: Vec<(Regex, String)>,
}

impl PhraseJoiner {
    pub fn new(lists: &[&PhraseList]) -> Self {
        let mut phrases: Vec<&Vec<String>> = lists.iter().flat_map(|l| l.phrases.iter()).collect();
        phrases.sort_by_key(|p| std::cmp::Reverse(p.len()));
        let patterns = phrases
            .into_iter()
            .filter(|p| p.len() > 1)
            .map(|phrase| {
                let escaped: Vec<String> = phrase.iter().map(|w| regex::escape(w)).collect();
                let pattern = format!(r"(?i)\b{}\b", escaped.join(r"\s+"));
                (
                    Regex::new(&pattern).expect("escaped phrase regex"),
                    phrase.join("_"),
                )
            })
            .collect();
        Self { patterns }
    }

    pub fn join(&self, raw_text: &str) -> String {
        let mut text = raw_text.to_string();
        for (regex, replacement) in &self.patterns {
            text = regex.replace_all(&text, replacement.as_str()).into_owned();
        }
        text
    }
}

/// A fully loaded pipeline, immutable during runs.
#[derive(Debug)]
pub struct Pipeline {
    pub config: RunConfig,
    pub corpus: Corpus,
    pub queries: Vec<QueryAst>,
    pub weights: WeightVector,
    pub ontology: FuzzyOntology,
    pub senti: SentiLexicon,
    pub opinions: OpinionLexicon,
    pub positive_phrases: PhraseList,
    pub neutral_phrases: PhraseList,
    pub negative_phrases: PhraseList,
    pub mf_bank: MfBank,
    pub fuzzy_rules: Vec<FuzzyRule>,
    pub causal_rules: Vec<CausalRule>,
    pub tag_lexicon: TagLexicon,
    pub stopwords: StopwordList,
    pub auxiliaries: AuxiliaryList,
    pub speed_terms: SpeedTermTable,
    joiner: PhraseJoiner,
}

/// One preprocessed document.
#[derive(Debug, Clone)]
pub struct ProcessedDocument {
    pub id: String,
    pub city: String,
    pub gold_labels: Option<BTreeMap<String, Term>>,
    pub clauses: Vec<Clause>,
    pub stems: BTreeSet<String>,
    pub incomplete_sentences: usize,
}

#[derive(Debug, Clone)]
pub struct FeatureResult {
    pub name: String,
    pub polarity: Polarity,
    pub sentence_count: usize,
    pub causes: Vec<crate::swrl::Cause>,
}

#[derive(Debug, Clone)]
pub struct AnalysisResult {
    pub map: PolarityMap,
    pub derived_facts: BTreeSet<Fact>,
    pub documents_analyzed: usize,
}

impl Pipeline {
    pub fn load(config: RunConfig) -> Result<Self, PipelineError> {
        config.check_files()?;
        let corpus = load_corpus(&config.corpus)?;
        let queries = load_queries(&config.queries)?;
        let weights = WeightVector::load(&config.weights)?;
        let ontology = FuzzyOntology::load(&config.ontology)?;
        let senti = SentiLexicon::load(&config.sentiwordnet)?;
        let mut opinions = OpinionLexicon::load(&config.positive_words, &config.negative_words)?;
        let positive_phrases = PhraseList::load(&config.positive_phrases)?;
        let neutral_phrases = PhraseList::load(&config.neutral_phrases)?;
        let negative_phrases = PhraseList::load(&config.negative_phrases)?;
        // Joined phrases carry the orientation of their list.
        for phrase in positive_phrases.joined() {
            opinions.insert_positive(&phrase);
        }
        for phrase in negative_phrases.joined() {
            opinions.insert_negative(&phrase);
        }
        let mf_bank = MfBank::load(&config.mf_bank)?;
        let fuzzy_rules = crate::fuzzy::load_rules(&config.fuzzy_rules)?;
        let causal_rules = crate::swrl::load_causal_rules(&config.causal_rules)?;
        let tag_lexicon = TagLexicon::load(&config.tag_lexicon)?;
        let stopwords = StopwordList::load(&config.stopwords)?;
        let auxiliaries =
            AuxiliaryList::load(&config.auxiliaries).map_err(|source| PipelineError::ConfigIo {
                path: config.auxiliaries.display().to_string(),
                source,
            })?;
        let speed_terms = SpeedTermTable::load(&config.speed_terms)?;
        let joiner = PhraseJoiner::new(&[&positive_phrases, &neutral_phrases, &negative_phrases]);
        Ok(Self {
            config,
            corpus,
            queries,
            weights,
            ontology,
            senti,
            opinions,
            positive_phrases,
            neutral_phrases,
            negative_phrases,
            mf_bank,
            fuzzy_rules,
            causal_rules,
            tag_lexicon,
            stopwords,
            auxiliaries,
            speed_terms,
            joiner,
        })
    }

    /// Phrase-join, clean, sentence-split, tag, drop stopwords, clause-split.
    pub fn process_document(&self, doc: &Document) -> ProcessedDocument {
        let joined = self.joiner.join(&doc.text);
        let cleaned = clean(&joined);
        let mut clauses = Vec::new();
        let mut stems = BTreeSet::new();
        let mut incomplete_sentences = 0;
        let mut clause_index = 0usize;
        for sentence in split_sentences(&cleaned) {
            let words = text::tokenize(&sentence);
            let tagged = pos_tag(&words, &self.tag_lexicon);
            for token in &tagged {
                stems.insert(token.stem.clone());
            }
            let kept: Vec<_> = tagged
                .into_iter()
                .filter(|t| !self.stopwords.contains(&t.surface))
                .collect();
            let split = split_clauses(kept, &doc.id, &mut clause_index);
            if split.is_empty() {
                incomplete_sentences += 1;
            }
            clauses.extend(split);
        }
        debug_assert!(clauses.iter().all(|c| Clause::is_complete(&c.tokens)));
        ProcessedDocument {
            id: doc.id.clone(),
            city: doc.city.clone(),
            gold_labels: doc.gold_labels.clone(),
            clauses,
            stems,
            incomplete_sentences,
        }
    }

    fn extractor(&self) -> Extractor<'_> {
        Extractor {
            ontology: &self.ontology,
            senti: &self.senti,
            opinions: &self.opinions,
            auxiliaries: &self.auxiliaries,
        }
    }

    fn phrase_lists(&self) -> PhraseLists<'_> {
        PhraseLists {
            positive: &self.positive_phrases,
            neutral: &self.neutral_phrases,
            negative: &self.negative_phrases,
        }
    }

    fn city_matches(&self, city_filter: Option<&str>, doc_city: &str) -> bool {
        match city_filter {
            Some(filter) => filter.eq_ignore_ascii_case(doc_city),
            None => true,
        }
    }

    /// Retrieve, preprocess, and relevance-filter, in parallel over
    /// documents, preserving corpus order.
    fn select_documents(&self, jobs: usize) -> Result<Vec<ProcessedDocument>, PipelineError> {
        let city = self.config.city.as_deref();
        let candidates: Vec<&Document> = self
            .corpus
            .retrieve(&self.queries)
            .into_iter()
            .filter(|d| self.city_matches(city, &d.city))
            .collect();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| PipelineError::Config(format!("thread pool: {e}")))?;
        let processed: Vec<ProcessedDocument> = pool.install(|| {
            candidates
                .par_iter()
                .map(|doc| self.process_document(doc))
                .collect()
        });
        Ok(processed
            .into_iter()
            .filter(|doc| is_relevant(&doc.stems, &self.weights))
            .collect())
    }

    /// All feature/opinion pairs, sorted by (document id, clause index).
    fn extract_all(&self, documents: &[ProcessedDocument]) -> Vec<FeatureOpinion> {
        let extractor = self.extractor();
        let lists = self.phrase_lists();
        let mut pairs: Vec<FeatureOpinion> = documents
            .iter()
            .flat_map(|doc| {
                doc.clauses
                    .iter()
                    .flat_map(|clause| extractor.extract_pairs(clause))
                    .collect::<Vec<_>>()
            })
            .collect();
        pairs = attach_phrases(pairs, &lists, &self.senti);
        pairs.sort_by(|a, b| {
            (&a.doc_id, a.clause_index, &a.feature).cmp(&(&b.doc_id, b.clause_index, &b.feature))
        });
        pairs
    }

    /// Per-feature polarity over pooled opinion words from all clauses.
    fn score_features(
        &self,
        pairs: &[FeatureOpinion],
    ) -> Result<BTreeMap<String, (Polarity, usize)>, PipelineError> {
        // Pooled opinion words and the contributing (doc, clause) pairs.
        type Pool = (Vec<crate::extract::OpinionWord>, BTreeSet<(String, usize)>);
        let mut pooled: BTreeMap<String, Pool> = BTreeMap::new();
        for pair in pairs {
            let slot = pooled.entry(pair.feature.clone()).or_default();
            slot.0.extend(pair.opinion_words.iter().cloned());
            slot.1.insert((pair.doc_id.clone(), pair.clause_index));
        }
        let mut results = BTreeMap::new();
        for (feature, (words, clauses)) in pooled {
            let result = evaluate_words(&words, &self.fuzzy_rules, &self.mf_bank)?;
            results.insert(feature, (result.polarity, clauses.len()));
        }
        Ok(results)
    }

    /// Input facts for the causal rules: one opinion per determined feature,
    /// plus a vehicle speed fact when vehicle pairs carry speed words (the
    /// slowest observed term wins).
    fn build_facts(
        &self,
        results: &BTreeMap<String, (Polarity, usize)>,
        pairs: &[FeatureOpinion],
    ) -> BTreeSet<Fact> {
        let mut facts = BTreeSet::new();
        for (feature, (polarity, _)) in results {
            if let Some(term) = polarity.term() {
                facts.insert(Fact::OpinionOf {
                    subject: feature.clone(),
                    term,
                });
            }
        }
        let mut vehicle_speed: Option<SpeedTerm> = None;
        for pair in pairs.iter().filter(|p| p.feature == "Vehicle") {
            for word in &pair.opinion_words {
                if let Some(term) = self.speed_terms.lookup(&word.stem) {
                    vehicle_speed = Some(match vehicle_speed {
                        Some(existing) => existing.min(term),
                        None => term,
                    });
                }
            }
        }
        if let Some(term) = vehicle_speed {
            facts.insert(Fact::Speed {
                subject: "Vehicle".into(),
                term,
            });
        }
        facts
    }

    /// The full analysis: polarity map plus derived facts.
    pub fn analyze(
        &self,
        jobs: usize,
        fixed_clock: Option<&str>,
    ) -> Result<AnalysisResult, PipelineError> {
        let documents = self.select_documents(jobs)?;
        let pairs = self.extract_all(&documents);
        let results = self.score_features(&pairs)?;
        let facts = self.build_facts(&results, &pairs);
        let derivation = apply_rules(&facts, &self.causal_rules)?;

        let features: Vec<FeatureEntry> = results
            .iter()
            .map(|(name, (polarity, sentence_count))| {
                let causes =
                    cause_report(name, polarity.term(), &derivation.all_facts, &self.ontology);
                FeatureEntry {
                    name: name.clone(),
                    value: polarity.value(),
                    term: term_string(polarity),
                    sentence_count: *sentence_count,
                    causes: causes.iter().map(CauseEntry::from).collect(),
                }
            })
            .collect();

        let inputs: Vec<FeaturePolarity> = results
            .iter()
            .map(|(name, (polarity, sentences))| FeaturePolarity {
                feature: name.clone(),
                value: polarity.value(),
                sentences: *sentences,
            })
            .collect();
        let city = city_polarity(&inputs);

        let generated_at = match fixed_clock {
            Some(clock) => {
                chrono::DateTime::parse_from_rfc3339(clock).map_err(|e| {
                    PipelineError::Config(format!("bad --fixed-clock value `{clock}`: {e}"))
                })?;
                clock.to_string()
            }
            None => Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true),
        };
        let map = PolarityMap {
            city: self.config.city.clone().unwrap_or_else(|| "all".into()),
            generated_at,
            features,
            city_polarity: CityPolarity {
                value: city.value(),
                term: term_string(&city),
            },
        };
        Ok(AnalysisResult {
            map,
            derived_facts: derivation.derived,
            documents_analyzed: documents.len(),
        })
    }

    /// Per-document, per-feature predictions for evaluation.
    pub fn predict_documents(&self, jobs: usize) -> Result<Predictions, PipelineError> {
        let documents = self.select_documents(jobs)?;
        let pairs = self.extract_all(&documents);
        let mut by_doc: BTreeMap<String, BTreeMap<String, Vec<crate::extract::OpinionWord>>> =
            BTreeMap::new();
        for pair in &pairs {
            by_doc
                .entry(pair.doc_id.clone())
                .or_default()
                .entry(pair.feature.clone())
                .or_default()
                .extend(pair.opinion_words.iter().cloned());
        }
        let mut predictions = Predictions::new();
        for (doc, features) in by_doc {
            let mut labels = BTreeMap::new();
            for (feature, words) in features {
                let result = evaluate_words(&words, &self.fuzzy_rules, &self.mf_bank)?;
                labels.insert(feature, result.polarity.term());
            }
            predictions.insert(doc, labels);
        }
        Ok(predictions)
    }

    /// Evaluates predictions against every gold-labeled document in the
    /// (city-filtered) corpus.
    pub fn evaluate(&self, jobs: usize) -> Result<EvalReport, PipelineError> {
        let city = self.config.city.as_deref();
        let gold: GoldLabels = self
            .corpus
            .documents
            .iter()
            .filter(|d| self.city_matches(city, &d.city))
            .filter_map(|d| d.gold_labels.clone().map(|labels| (d.id.clone(), labels)))
            .collect();
        if gold.is_empty() {
            return Err(EvalError::MissingGoldLabels.into());
        }
        let predictions = self.predict_documents(jobs)?;
        Ok(evaluate(&gold, &predictions)?)
    }
}

/// Writes `content` into `dir/name`, creating the directory if needed.
pub fn write_output(dir: &Path, name: &str, content: &str) -> Result<PathBuf, PipelineError> {
    fs::create_dir_all(dir).map_err(|source| PipelineError::OutputIo {
        path: dir.display().to_string(),
        source,
    })?;
    let path = dir.join(name);
    fs::write(&path, content).map_err(|source| PipelineError::OutputIo {
        path: path.display().to_string(),
        source,
    })?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parses_and_resolves_relative_paths() {
        let input = "\
# run configuration
corpus = corpus.jsonl
queries = queries.txt
weights = weights.tsv
ontology = ontology.txt
sentiwordnet = swn.tsv
positive_words = pos.txt
negative_words = neg.txt
positive_phrases = pp.txt
neutral_phrases = np.txt
negative_phrases = gp.txt
mf_bank = mf.txt
fuzzy_rules = fr.txt
causal_rules = cr.txt
tag_lexicon = tags.tsv
stopwords = stop.txt
auxiliaries = aux.txt
speed_terms = speed.tsv
city = Quezon
precision = 3
";
        let config = RunConfig::parse(input, Path::new("/data")).unwrap();
        assert_eq!(config.corpus, PathBuf::from("/data/corpus.jsonl"));
        assert_eq!(config.city.as_deref(), Some("Quezon"));
        assert_eq!(config.precision, 3);
        assert!(config.out_dir.is_none());
    }

    #[test]
    fn unknown_keys_and_missing_keys_are_config_errors() {
        let err = RunConfig::parse("mystery = x\n", Path::new(".")).unwrap_err();
        assert!(err.to_string().contains("unknown key"), "{err}");
        let err = RunConfig::parse("corpus = c.jsonl\n", Path::new(".")).unwrap_err();
        assert!(err.to_string().contains("missing key"), "{err}");
    }

    #[test]
    fn phrase_joiner_merges_listed_phrases_case_insensitively() {
        let positive = PhraseList::parse("a lot\n");
        let negative = PhraseList::parse("very slow\n");
        let joiner = PhraseJoiner::new(&[&positive, &negative]);
        assert_eq!(
            joiner.join("New-York has A LOT of facilities"),
            "New-York has a_lot of facilities"
        );
        assert_eq!(
            joiner.join("Vehicles are very  slow today"),
            "Vehicles are very_slow today"
        );
        assert_eq!(joiner.join("nothing to merge"), "nothing to merge");
    }

    #[test]
    fn longer_phrases_join_before_their_prefixes() {
        let list = PhraseList::parse("out of\nout of service\n");
        let joiner = PhraseJoiner::new(&[&list]);
        assert_eq!(
            joiner.join("bus is out of service"),
            "bus is out_of_service"
        );
    }
}
