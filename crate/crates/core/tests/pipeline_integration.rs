//! Pipeline integration: a small corpus written to disk, loaded through the
//! config machinery, and driven end to end via the library API.

use std::fs;
use std::path::Path;

use polarmap_core::fuzzy::Polarity;
use polarmap_core::pipeline::{Pipeline, PipelineError, RunConfig};
use polarmap_core::swrl::Fact;
use polarmap_core::term::{SpeedTerm, Term};

const CORPUS: &str = r#"{"id":"t1","text":"Road is closed due to accident in Quezon.","source":"tweet","city":"Quezon","gold_labels":{"Road":"SN","Accident":"SN"}}
{"id":"t2","text":"Vehicles are very slow on the highway.","source":"tweet","city":"Quezon","gold_labels":{"Vehicle":"SN","Road":"SN"}}
{"id":"t3","text":"Park is very clean and the location is good.","source":"review","city":"Quezon","gold_labels":{"Parks":"Neu","Location":"P"}}
{"id":"t4","text":"Sunny afternoon for a picnic.","source":"tweet","city":"Quezon"}
{"id":"t5","text":"New-York has a lot of facilities but crowded.","source":"review","city":"New York","gold_labels":{"New_York":"Neg"}}
"#;

fn write_fixture_dir(dir: &Path) {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    for entry in fs::read_dir(&data).unwrap() {
        let entry = entry.unwrap();
        fs::copy(entry.path(), dir.join(entry.file_name())).unwrap();
    }
    fs::write(dir.join("demo_corpus.jsonl"), CORPUS).unwrap();
}

fn load(dir: &Path) -> Pipeline {
    let config = RunConfig::load(&dir.join("config.txt")).unwrap();
    Pipeline::load(config).unwrap()
}

#[test]
fn analyze_pairs_features_scores_them_and_derives_causes() {
    let dir = tempfile::tempdir().unwrap();
    write_fixture_dir(dir.path());
    let pipeline = load(dir.path());
    let result = pipeline.analyze(1, Some("2026-01-01T00:00:00Z")).unwrap();

    // t4 matches no query; t5 is filtered by the Quezon city setting.
    assert_eq!(result.documents_analyzed, 3);
    let names: Vec<&str> = result
        .map
        .features
        .iter()
        .map(|f| f.name.as_str())
        .collect();
    assert_eq!(
        names,
        vec!["Accident", "Location", "Parks", "Road", "Vehicle"]
    );

    let road = result
        .map
        .features
        .iter()
        .find(|f| f.name == "Road")
        .unwrap();
    assert_eq!(road.term, "SN");
    assert!(road
        .causes
        .iter()
        .any(|c| c.name == "Accident" && c.kind == "jam_cause"));

    // The very-slow vehicles plus the strongly negative accident fired the
    // jam rule.
    assert!(result.derived_facts.contains(&Fact::TrafficIsJammedBy {
        subject: "Road".into(),
        cause: "Accident".into(),
    }));
    assert!(result.map.is_consistent());
    assert_eq!(result.map.generated_at, "2026-01-01T00:00:00Z");
}

#[test]
fn speed_facts_come_from_vehicle_opinion_words() {
    let dir = tempfile::tempdir().unwrap();
    write_fixture_dir(dir.path());
    let pipeline = load(dir.path());
    let pairs_doc = pipeline
        .corpus
        .documents
        .iter()
        .find(|d| d.id == "t2")
        .unwrap();
    let processed = pipeline.process_document(pairs_doc);
    // "very slow" is pre-joined before cleaning, so the phrase survives
    // article removal and maps to the VerySlow speed term.
    let has_joined = processed
        .clauses
        .iter()
        .flat_map(|c| &c.tokens)
        .any(|t| t.surface == "very_slow");
    assert!(has_joined);
    assert_eq!(
        pipeline.speed_terms.lookup("very_slow"),
        Some(SpeedTerm::VerySlow)
    );
}

#[test]
fn evaluate_reports_per_feature_metrics() {
    let dir = tempfile::tempdir().unwrap();
    write_fixture_dir(dir.path());
    let pipeline = load(dir.path());
    let report = pipeline.evaluate(1).unwrap();
    let features: Vec<&str> = report.rows.iter().map(|r| r.feature.as_str()).collect();
    assert_eq!(
        features,
        vec!["Accident", "Location", "Parks", "Road", "Vehicle"]
    );
    for row in &report.rows {
        assert_eq!(row.precision, Some(100.0), "{} precision", row.feature);
        assert_eq!(row.recall, Some(100.0), "{} recall", row.feature);
    }
    assert_eq!(report.average.precision, Some(100.0));
}

#[test]
fn predictions_are_per_document_and_undetermined_features_stay_unlabeled() {
    let dir = tempfile::tempdir().unwrap();
    write_fixture_dir(dir.path());
    let pipeline = load(dir.path());
    let predictions = pipeline.predict_documents(1).unwrap();
    assert_eq!(predictions["t1"]["Road"], Some(Term::StronglyNegative));
    assert_eq!(predictions["t1"]["Accident"], Some(Term::StronglyNegative));
    assert_eq!(predictions["t3"]["Parks"], Some(Term::Neutral));
    assert!(!predictions.contains_key("t4"));
}

#[test]
fn city_polarity_follows_the_feature_values() {
    let dir = tempfile::tempdir().unwrap();
    write_fixture_dir(dir.path());
    let pipeline = load(dir.path());
    let result = pipeline.analyze(1, Some("2026-01-01T00:00:00Z")).unwrap();
    let inputs: Vec<polarmap_core::swrl::FeaturePolarity> = result
        .map
        .features
        .iter()
        .map(|f| polarmap_core::swrl::FeaturePolarity {
            feature: f.name.clone(),
            value: f.value,
            sentences: f.sentence_count,
        })
        .collect();
    match polarmap_core::swrl::city_polarity(&inputs) {
        Polarity::Determined { value, term } => {
            assert_eq!(Some(value), result.map.city_polarity.value);
            assert_eq!(term.label(), result.map.city_polarity.term);
        }
        Polarity::Undetermined => panic!("city must classify"),
    }
}

#[test]
fn missing_input_file_is_reported_with_its_key() {
    let dir = tempfile::tempdir().unwrap();
    write_fixture_dir(dir.path());
    fs::remove_file(dir.path().join("mf_bank.txt")).unwrap();
    let config = RunConfig::load(&dir.path().join("config.txt")).unwrap();
    match Pipeline::load(config).unwrap_err() {
        PipelineError::MissingFile { key, path } => {
            assert_eq!(key, "mf_bank");
            assert!(path.ends_with("mf_bank.txt"));
        }
        other => panic!("unexpected {other:?}"),
    }
}
