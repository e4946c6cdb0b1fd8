//! Feature-level sentiment analysis for city and transportation reviews.
//!
//! The pipeline retrieves topic documents from an offline corpus with boolean
//! keyword queries, cleans and clause-splits the text, pairs ontology features
//! with opinion words, scores those words from a SentiWordNet-format lexicon,
//! runs a fuzzy inference layer to obtain a per-feature polarity value and
//! linguistic term, derives causal facts (jam causes, cross-feature
//! propagation) with forward-chaining rules, and emits a per-city polarity map
//! plus evaluation metrics against gold labels.
//!
//! Modules mirror the pipeline stages; [`pipeline`] wires them together and
//! [`replicate`] re-checks the built-in worked examples.

pub mod corpus;
pub mod eval;
pub mod extract;
pub mod fuzzy;
pub mod lexicon;
pub mod ontology;
pub mod pipeline;
pub mod preprocess;
pub mod query;
pub mod relevance;
pub mod replicate;
pub mod report;
pub mod swrl;
pub mod term;
pub mod text;

pub use term::{SpeedTerm, Term};
