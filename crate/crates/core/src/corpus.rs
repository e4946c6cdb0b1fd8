//! Corpus loading and query-based retrieval.
//!
//! A corpus file holds one JSON object per line with required keys `id`,
//! `text`, `source`, `city`, and an optional `gold_labels` object mapping
//! feature names to linguistic terms for evaluation.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::query::{match_query, QueryAst};
use crate::term::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Tweet,
    Review,
    News,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub text: String,
    pub source: Source,
    pub city: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gold_labels: Option<BTreeMap<String, Term>>,
}

#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub documents: Vec<Document>,
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: duplicate document id `{id}`")]
    DuplicateId { line: usize, id: String },
    #[error("line {line}: document has empty `{field}`")]
    EmptyField { line: usize, field: String },
}

/// Parses JSON-lines corpus text. Documents are returned in file order;
/// duplicate ids and empty id/text fields are rejected.
pub fn parse_corpus(input: &str) -> Result<Corpus, CorpusError> {
    let mut documents = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    for (idx, raw) in input.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let doc: Document = serde_json::from_str(line).map_err(|e| CorpusError::Parse {
            line: idx + 1,
            message: e.to_string(),
        })?;
        if doc.id.is_empty() {
            return Err(CorpusError::EmptyField {
                line: idx + 1,
                field: "id".into(),
            });
        }
        if doc.text.is_empty() {
            return Err(CorpusError::EmptyField {
                line: idx + 1,
                field: "text".into(),
            });
        }
        if !seen.insert(doc.id.clone()) {
            return Err(CorpusError::DuplicateId {
                line: idx + 1,
                id: doc.id,
            });
        }
        documents.push(doc);
    }
    Ok(Corpus { documents })
}

pub fn load_corpus(path: &Path) -> Result<Corpus, CorpusError> {
    let input = fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_corpus(&input)
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    /// Documents matching at least one query, in corpus order. An empty
    /// query list retrieves nothing.
    pub fn retrieve(&self, queries: &[QueryAst]) -> Vec<&Document> {
        self.documents
            .iter()
            .filter(|doc| queries.iter().any(|q| match_query(q, doc)))
            .collect()
    }
}
