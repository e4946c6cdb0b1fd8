//! The fuzzy ontology: a concept hierarchy of city features and
//! transportation activities, datatype properties, fuzzy relations with
//! membership degrees, and fuzzy datatypes mapping linguistic terms to
//! intervals.
//!
//! The on-disk format is line-oriented:
//!
//! ```text
//! concept <Name> [parent <Name>] kind <CityFeature|TransportationActivity|SubFeature>
//! synonym <Name> <word...>          # one multi-word synonym per line
//! property <Name> [range <Datatype>]
//! datatype <Name> term <T> <lo> <hi>
//! relation <subject> <property> <term> degree <d>
//! ```

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::path::Path;

use crate::preprocess::stem;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConceptKind {
    CityFeature,
    TransportationActivity,
    SubFeature,
}

#[derive(Debug, Clone)]
pub struct Concept {
    pub name: String,
    pub parent: Option<String>,
    pub kind: ConceptKind,
    /// Each synonym is a sequence of stems matched against noun phrases.
    pub synonyms: Vec<Vec<String>>,
}

#[derive(Debug, Clone)]
pub struct PropertyDef {
    pub name: String,
    /// Range constraint: the datatype whose terms the relation object must use.
    pub range: Option<String>,
}

#[derive(Debug, Clone)]
pub struct FuzzyRelation {
    pub subject: String,
    pub predicate: String,
    pub object: String,
    pub degree: f64,
}

#[derive(Debug, Clone)]
pub struct FuzzyDatatype {
    pub name: String,
    pub term_intervals: BTreeMap<String, (f64, f64)>,
}

#[derive(Debug, Default)]
pub struct FuzzyOntology {
    concepts: Vec<Concept>,
    by_name: HashMap<String, usize>,
    pub properties: Vec<PropertyDef>,
    pub relations: Vec<FuzzyRelation>,
    pub datatypes: BTreeMap<String, FuzzyDatatype>,
    /// Stem-sequence match keys (names and synonyms) to concept index.
    match_index: HashMap<Vec<String>, usize>,
    max_key_len: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum OntologyError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: duplicate concept `{name}`")]
    DuplicateConcept { line: usize, name: String },
    #[error("concept `{child}` names unknown parent `{parent}`")]
    UnknownParent { child: String, parent: String },
    #[error("hierarchy cycle through concept `{name}`")]
    CycleDetected { name: String },
    #[error("line {line}: relation degree {degree} is outside [0, 1]")]
    DegreeOutOfRange { line: usize, degree: f64 },
    #[error("relation references unknown {what} `{name}`")]
    UnknownReference { what: &'static str, name: String },
    #[error("line {line}: synonym `{key}` already names concept `{existing}`")]
    AmbiguousSynonym {
        line: usize,
        key: String,
        existing: String,
    },
    #[error("unknown concept `{0}`")]
    UnknownConcept(String),
    #[error("datatype `{datatype}` has no term `{term}`")]
    UnknownTerm { datatype: String, term: String },
    #[error("polarity datatype `{0}` must declare all of SN, Neg, Neu, P, SP")]
    IncompletePolarity(String),
}

const POLARITY_TERMS: [&str; 5] = ["SN", "Neg", "Neu", "P", "SP"];

fn name_stems(name: &str) -> Vec<String> {
    name.split(['_', ' '])
        .filter(|p| !p.is_empty())
        .map(stem)
        .collect()
}

impl FuzzyOntology {
    pub fn parse(input: &str) -> Result<Self, OntologyError> {
        let mut ontology = FuzzyOntology::default();
        let mut pending_keys: Vec<(usize, usize, Vec<String>)> = Vec::new();
        let mut relation_lines: Vec<usize> = Vec::new();

        for (idx, raw) in input.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            let parse_err = |message: String| OntologyError::Parse {
                line: line_no,
                message,
            };
            match words[0] {
                "concept" => {
                    let (name, rest) = match words.get(1) {
                        Some(n) => (n.to_string(), &words[2..]),
                        None => return Err(parse_err("concept needs a name".into())),
                    };
                    if ontology.by_name.contains_key(&name) {
                        return Err(OntologyError::DuplicateConcept {
                            line: line_no,
                            name,
                        });
                    }
                    let mut parent = None;
                    let mut kind = None;
                    let mut i = 0;
                    while i < rest.len() {
                        match rest[i] {
                            "parent" => {
                                parent = Some(
                                    rest.get(i + 1)
                                        .ok_or_else(|| parse_err("parent needs a name".into()))?
                                        .to_string(),
                                );
                                i += 2;
                            }
                            "kind" => {
                                kind = Some(match rest.get(i + 1).copied() {
                                    Some("CityFeature") => ConceptKind::CityFeature,
                                    Some("TransportationActivity") => {
                                        ConceptKind::TransportationActivity
                                    }
                                    Some("SubFeature") => ConceptKind::SubFeature,
                                    other => {
                                        return Err(parse_err(format!(
                                            "unknown concept kind {other:?}"
                                        )))
                                    }
                                });
                                i += 2;
                            }
                            other => {
                                return Err(parse_err(format!("unexpected token `{other}`")));
                            }
                        }
                    }
                    let kind =
                        kind.ok_or_else(|| parse_err("concept needs `kind <kind>`".into()))?;
                    let index = ontology.concepts.len();
                    ontology.by_name.insert(name.clone(), index);
                    pending_keys.push((line_no, index, name_stems(&name)));
                    ontology.concepts.push(Concept {
                        name,
                        parent,
                        kind,
                        synonyms: Vec::new(),
                    });
                }
                "synonym" => {
                    if words.len() < 3 {
                        return Err(parse_err("synonym needs a concept and words".into()));
                    }
                    let concept = words[1];
                    let index = *ontology
                        .by_name
                        .get(concept)
                        .ok_or_else(|| parse_err(format!("unknown concept `{concept}`")))?;
                    let raw_words: Vec<String> =
                        words[2..].iter().map(|w| w.to_lowercase()).collect();
                    let stemmed: Vec<String> = words[2..].iter().map(|w| stem(w)).collect();
                    ontology.concepts[index].synonyms.push(stemmed.clone());
                    pending_keys.push((line_no, index, raw_words));
                    pending_keys.push((line_no, index, stemmed));
                }
                "property" => {
                    let name = words
                        .get(1)
                        .ok_or_else(|| parse_err("property needs a name".into()))?
                        .to_string();
                    let range = match words.get(2) {
                        Some(&"range") => Some(
                            words
                                .get(3)
                                .ok_or_else(|| parse_err("range needs a datatype".into()))?
                                .to_string(),
                        ),
                        Some(other) => {
                            return Err(parse_err(format!("unexpected token `{other}`")));
                        }
                        None => None,
                    };
                    ontology.properties.push(PropertyDef { name, range });
                }
                "datatype" => {
                    if words.len() != 6 || words[2] != "term" {
                        return Err(parse_err(
                            "expected `datatype <Name> term <T> <lo> <hi>`".into(),
                        ));
                    }
                    let lo: f64 = words[4]
                        .parse()
                        .map_err(|e| parse_err(format!("bad interval bound: {e}")))?;
                    let hi: f64 = words[5]
                        .parse()
                        .map_err(|e| parse_err(format!("bad interval bound: {e}")))?;
                    if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi {
                        return Err(parse_err(format!(
                            "interval [{lo}, {hi}] must sit inside [0, 1]"
                        )));
                    }
                    ontology
                        .datatypes
                        .entry(words[1].to_string())
                        .or_insert_with(|| FuzzyDatatype {
                            name: words[1].to_string(),
                            term_intervals: BTreeMap::new(),
                        })
                        .term_intervals
                        .insert(words[3].to_string(), (lo, hi));
                }
                "relation" => {
                    if words.len() != 6 || words[4] != "degree" {
                        return Err(parse_err(
                            "expected `relation <subj> <pred> <term> degree <d>`".into(),
                        ));
                    }
                    let degree: f64 = words[5]
                        .parse()
                        .map_err(|e| parse_err(format!("bad degree: {e}")))?;
                    if !(0.0..=1.0).contains(&degree) {
                        return Err(OntologyError::DegreeOutOfRange {
                            line: line_no,
                            degree,
                        });
                    }
                    ontology.relations.push(FuzzyRelation {
                        subject: words[1].to_string(),
                        predicate: words[2].to_string(),
                        object: words[3].to_string(),
                        degree,
                    });
                    relation_lines.push(line_no);
                }
                other => {
                    return Err(parse_err(format!("unknown directive `{other}`")));
                }
            }
        }

        for (line, index, key) in pending_keys {
            if key.is_empty() {
                continue;
            }
            ontology.max_key_len = ontology.max_key_len.max(key.len());
            if let Some(&existing) = ontology.match_index.get(&key) {
                if existing != index {
                    return Err(OntologyError::AmbiguousSynonym {
                        line,
                        key: key.join(" "),
                        existing: ontology.concepts[existing].name.clone(),
                    });
                }
            } else {
                ontology.match_index.insert(key, index);
            }
        }

        ontology.validate()?;
        Ok(ontology)
    }

    pub fn load(path: &Path) -> Result<Self, OntologyError> {
        let input = fs::read_to_string(path).map_err(|source| OntologyError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&input)
    }

    fn validate(&self) -> Result<(), OntologyError> {
        for concept in &self.concepts {
            if let Some(parent) = &concept.parent {
                if !self.by_name.contains_key(parent) {
                    return Err(OntologyError::UnknownParent {
                        child: concept.name.clone(),
                        parent: parent.clone(),
                    });
                }
            }
        }
        // Walk parent chains; a chain longer than the concept count is a cycle.
        for concept in &self.concepts {
            let mut steps = 0;
            let mut current = concept;
            while let Some(parent) = &current.parent {
                steps += 1;
                if steps > self.concepts.len() {
                    return Err(OntologyError::CycleDetected {
                        name: concept.name.clone(),
                    });
                }
                current = &self.concepts[self.by_name[parent]];
            }
        }
        for relation in &self.relations {
            if !self.by_name.contains_key(&relation.subject) {
                return Err(OntologyError::UnknownReference {
                    what: "concept",
                    name: relation.subject.clone(),
                });
            }
            let property = self
                .properties
                .iter()
                .find(|p| p.name == relation.predicate)
                .ok_or_else(|| OntologyError::UnknownReference {
                    what: "property",
                    name: relation.predicate.clone(),
                })?;
            if let Some(range) = &property.range {
                let datatype =
                    self.datatypes
                        .get(range)
                        .ok_or_else(|| OntologyError::UnknownReference {
                            what: "datatype",
                            name: range.clone(),
                        })?;
                if !datatype.term_intervals.contains_key(&relation.object) {
                    return Err(OntologyError::UnknownTerm {
                        datatype: range.clone(),
                        term: relation.object.clone(),
                    });
                }
            }
        }
        for datatype in self.datatypes.values() {
            let polarity_terms = datatype
                .term_intervals
                .keys()
                .filter(|t| POLARITY_TERMS.contains(&t.as_str()))
                .count();
            if polarity_terms > 0 && polarity_terms < POLARITY_TERMS.len() {
                return Err(OntologyError::IncompletePolarity(datatype.name.clone()));
            }
        }
        Ok(())
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn concept(&self, name: &str) -> Option<&Concept> {
        self.by_name.get(name).map(|&i| &self.concepts[i])
    }

    /// The distinct literal values used by relations and fuzzy datatypes.
    pub fn values(&self) -> BTreeSet<&str> {
        self.relations
            .iter()
            .map(|r| r.object.as_str())
            .chain(
                self.datatypes
                    .values()
                    .flat_map(|d| d.term_intervals.keys().map(String::as_str)),
            )
            .collect()
    }

    /// Longest-match lookup over concept names and synonyms, scanning start
    /// positions left to right. A returned match is never a proper prefix of
    /// a longer match at the same start.
    pub fn find_concept(&self, stems: &[String]) -> Option<&Concept> {
        self.find_concept_spans(stems)
            .into_iter()
            .next()
            .map(|(_, c)| c)
    }

    /// All non-overlapping matches, greedy left-to-right, longest first.
    pub fn find_concept_spans(&self, stems: &[String]) -> Vec<(std::ops::Range<usize>, &Concept)> {
        let mut spans = Vec::new();
        let mut start = 0;
        while start < stems.len() {
            let longest = self.max_key_len.min(stems.len() - start);
            let mut matched = None;
            for len in (1..=longest).rev() {
                if let Some(&idx) = self.match_index.get(&stems[start..start + len]) {
                    matched = Some((len, idx));
                    break;
                }
            }
            if let Some((len, idx)) = matched {
                spans.push((start..start + len, &self.concepts[idx]));
                start += len;
            } else {
                start += 1;
            }
        }
        spans
    }

    /// Direct children in declaration order.
    pub fn subfeatures(&self, name: &str) -> Result<Vec<&Concept>, OntologyError> {
        if !self.by_name.contains_key(name) {
            return Err(OntologyError::UnknownConcept(name.to_string()));
        }
        Ok(self
            .concepts
            .iter()
            .filter(|c| c.parent.as_deref() == Some(name))
            .collect())
    }

    /// Crisp interval membership: 1.0 iff `x` lies inside the closed interval
    /// declared for `term`. Graded membership lives in [`crate::fuzzy`].
    pub fn membership(&self, datatype: &str, term: &str, x: f64) -> Result<f64, OntologyError> {
        let dt = self
            .datatypes
            .get(datatype)
            .ok_or_else(|| OntologyError::UnknownReference {
                what: "datatype",
                name: datatype.to_string(),
            })?;
        let &(lo, hi) = dt
            .term_intervals
            .get(term)
            .ok_or_else(|| OntologyError::UnknownTerm {
                datatype: datatype.to_string(),
                term: term.to_string(),
            })?;
        Ok(if (lo..=hi).contains(&x) { 1.0 } else { 0.0 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRAFFIC: &str = "\
concept Traffic kind TransportationActivity
concept Jammed parent Traffic kind SubFeature
concept Slow parent Traffic kind SubFeature
concept Traffic_collision parent Traffic kind SubFeature
concept Heavy parent Traffic kind SubFeature
";

    #[test]
    fn loads_a_parent_with_four_children() {
        let o = FuzzyOntology::parse(TRAFFIC).unwrap();
        assert_eq!(o.concepts().len(), 5);
        let children = o.subfeatures("Traffic").unwrap();
        let names: Vec<&str> = children.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, vec!["Jammed", "Slow", "Traffic_collision", "Heavy"]);
        assert!(o.subfeatures("Jammed").unwrap().is_empty());
    }

    #[test]
    fn empty_file_is_a_valid_empty_ontology() {
        let o = FuzzyOntology::parse("").unwrap();
        assert!(o.concepts().is_empty());
    }

    #[test]
    fn out_of_range_degree_is_rejected() {
        let input = "\
concept Parks kind CityFeature
concept Park_ticket parent Parks kind SubFeature
property has_rate
relation Park_ticket has_rate high degree 1.3
";
        match FuzzyOntology::parse(input).unwrap_err() {
            OntologyError::DegreeOutOfRange { degree, .. } => assert_eq!(degree, 1.3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn fuzzy_relation_with_degree_in_range_loads() {
        let input = "\
concept Parks kind CityFeature
concept Park_ticket parent Parks kind SubFeature
property has_rate range rate_level
datatype rate_level term low 0.0 0.33
datatype rate_level term high 0.66 1.0
relation Park_ticket has_rate high degree 0.7
";
        let o = FuzzyOntology::parse(input).unwrap();
        assert_eq!(o.relations.len(), 1);
        assert_eq!(o.relations[0].degree, 0.7);
        let values = o.values();
        assert!(values.contains("high") && values.contains("low"));
    }

    #[test]
    fn unknown_parent_and_cycles_are_rejected() {
        let err = FuzzyOntology::parse("concept A parent Missing kind CityFeature\n").unwrap_err();
        assert!(matches!(err, OntologyError::UnknownParent { .. }));

        let cyclic = "\
concept A parent B kind CityFeature
concept B parent A kind CityFeature
";
        assert!(matches!(
            FuzzyOntology::parse(cyclic).unwrap_err(),
            OntologyError::CycleDetected { .. }
        ));
    }

    fn city_ontology() -> FuzzyOntology {
        FuzzyOntology::parse(
            "\
concept Parks kind CityFeature
synonym Parks park
concept Bus_station kind CityFeature
synonym Bus_station bus station
concept Vehicle kind TransportationActivity
synonym Vehicle bus
concept Road kind TransportationActivity
concept Closed parent Road kind SubFeature
datatype polarity term SN 0.0 0.25
datatype polarity term Neg 0.25 0.5
datatype polarity term Neu 0.5 0.5
datatype polarity term P 0.5 0.75
datatype polarity term SP 0.75 1.0
",
        )
        .unwrap()
    }

    fn stems_of(words: &[&str]) -> Vec<String> {
        words.iter().map(|w| stem(w)).collect()
    }

    #[test]
    fn find_concept_matches_names_and_synonyms() {
        let o = city_ontology();
        assert_eq!(o.find_concept(&stems_of(&["park"])).unwrap().name, "Parks");
        assert!(o.find_concept(&stems_of(&["zebra"])).is_none());
    }

    #[test]
    fn two_token_synonym_beats_one_token() {
        let o = city_ontology();
        // "bus" alone is a Vehicle synonym, but "bus station" must win.
        let found = o.find_concept(&stems_of(&["bus", "station"])).unwrap();
        assert_eq!(found.name, "Bus_station");
        let found = o.find_concept(&stems_of(&["bus"])).unwrap();
        assert_eq!(found.name, "Vehicle");
    }

    #[test]
    fn raw_synonym_forms_match_before_stemming_too() {
        let o = city_ontology();
        let raw: Vec<String> = vec!["bus".into(), "station".into()];
        assert_eq!(o.find_concept(&raw).unwrap().name, "Bus_station");
    }

    #[test]
    fn spans_are_non_overlapping_left_to_right() {
        let o = city_ontology();
        let stems = stems_of(&["road", "bus", "station", "park"]);
        let spans = o.find_concept_spans(&stems);
        let names: Vec<(&str, std::ops::Range<usize>)> = spans
            .iter()
            .map(|(r, c)| (c.name.as_str(), r.clone()))
            .collect();
        assert_eq!(
            names,
            vec![("Road", 0..1), ("Bus_station", 1..3), ("Parks", 3..4)]
        );
    }

    #[test]
    fn membership_is_crisp_interval_lookup() {
        let o = city_ontology();
        assert_eq!(o.membership("polarity", "SP", 0.9).unwrap(), 1.0);
        assert_eq!(o.membership("polarity", "SN", 0.9).unwrap(), 0.0);
        assert_eq!(o.membership("polarity", "Neu", 0.5).unwrap(), 1.0);
        assert!(matches!(
            o.membership("polarity", "Huge", 0.5),
            Err(OntologyError::UnknownTerm { .. })
        ));
    }

    #[test]
    fn partial_polarity_datatype_is_rejected() {
        let input = "datatype polarity term SN 0.0 0.25\n";
        assert!(matches!(
            FuzzyOntology::parse(input).unwrap_err(),
            OntologyError::IncompletePolarity(_)
        ));
    }

    #[test]
    fn every_child_appears_in_its_parents_subfeatures() {
        let o = FuzzyOntology::parse(TRAFFIC).unwrap();
        for concept in o.concepts() {
            if let Some(parent) = &concept.parent {
                let children = o.subfeatures(parent).unwrap();
                assert!(
                    children.iter().any(|c| c.name == concept.name),
                    "{} missing from subfeatures of {parent}",
                    concept.name
                );
            }
        }
    }

    #[test]
    fn ambiguous_synonyms_are_rejected() {
        let input = "\
concept Parks kind CityFeature
synonym Parks green
concept Environments kind CityFeature
synonym Environments green
";
        assert!(matches!(
            FuzzyOntology::parse(input).unwrap_err(),
            OntologyError::AmbiguousSynonym { .. }
        ));
    }
}
