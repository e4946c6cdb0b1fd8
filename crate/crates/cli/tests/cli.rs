//! Command-line behavior: exit codes, output files, and the replicate
//! subcommand's fixture handling.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use polarmap_core::replicate::REPLICATION_RULES;

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn polarmap(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polarmap"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

#[test]
fn analyze_writes_the_polarity_map_files() {
    let out = tempfile::tempdir().unwrap();
    let config = data_dir().join("config.txt");
    let output = polarmap(
        &[
            "analyze",
            "--config",
            config.to_str().unwrap(),
            "--out",
            out.path().to_str().unwrap(),
            "--fixed-clock",
            "2026-01-01T00:00:00Z",
        ],
        out.path(),
    );
    assert_eq!(output.status.code(), Some(0));
    let json_path = out.path().join("polarity_map.json");
    let text_path = out.path().join("polarity_map.txt");
    assert!(json_path.is_file() && text_path.is_file());
    let written = std::fs::read(&json_path).unwrap();
    assert_eq!(written, output.stdout, "file and stdout must agree");
    let rendered = std::fs::read_to_string(&text_path).unwrap();
    assert!(rendered.contains("City: Quezon"), "{rendered}");
}

#[test]
fn missing_ontology_file_exits_2_naming_the_path() {
    let dir = tempfile::tempdir().unwrap();
    // Copy the bundled config directory, then drop the ontology.
    for entry in std::fs::read_dir(data_dir()).unwrap() {
        let entry = entry.unwrap();
        std::fs::copy(entry.path(), dir.path().join(entry.file_name())).unwrap();
    }
    std::fs::remove_file(dir.path().join("ontology.txt")).unwrap();
    let config = dir.path().join("config.txt");
    let output = polarmap(
        &["analyze", "--config", config.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("ontology.txt"), "{stderr}");
}

#[test]
fn corpus_with_no_matching_city_produces_an_empty_map() {
    let out = tempfile::tempdir().unwrap();
    let config = data_dir().join("config.txt");
    let output = polarmap(
        &[
            "analyze",
            "--config",
            config.to_str().unwrap(),
            "--city",
            "Atlantis",
            "--fixed-clock",
            "2026-01-01T00:00:00Z",
        ],
        out.path(),
    );
    assert_eq!(
        output.status.code(),
        Some(0),
        "empty result is not an error"
    );
    let map =
        polarmap_core::report::PolarityMap::from_json(std::str::from_utf8(&output.stdout).unwrap())
            .unwrap();
    assert!(map.features.is_empty());
    assert_eq!(map.city_polarity.term, "undetermined");
}

#[test]
fn city_flag_overrides_the_config() {
    let out = tempfile::tempdir().unwrap();
    let config = data_dir().join("config.txt");
    let output = polarmap(
        &[
            "analyze",
            "--config",
            config.to_str().unwrap(),
            "--city",
            "New York",
            "--fixed-clock",
            "2026-01-01T00:00:00Z",
        ],
        out.path(),
    );
    assert_eq!(output.status.code(), Some(0));
    let map =
        polarmap_core::report::PolarityMap::from_json(std::str::from_utf8(&output.stdout).unwrap())
            .unwrap();
    assert_eq!(map.city, "New York");
    let new_york = map.features.iter().find(|f| f.name == "New_York");
    assert!(new_york.is_some(), "New_York feature expected");
}

#[test]
fn eval_writes_metrics_files() {
    let out = tempfile::tempdir().unwrap();
    let config = data_dir().join("config.txt");
    let output = polarmap(
        &[
            "eval",
            "--config",
            config.to_str().unwrap(),
            "--out",
            out.path().to_str().unwrap(),
        ],
        out.path(),
    );
    assert_eq!(output.status.code(), Some(0));
    let csv = std::fs::read_to_string(out.path().join("metrics.csv")).unwrap();
    assert!(csv.starts_with("feature,P,R,Ac,FM\n"));
    assert!(csv.lines().last().unwrap().starts_with("Average,"));
    assert!(out.path().join("metrics.txt").is_file());
}

#[test]
fn eval_without_gold_labels_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(data_dir()).unwrap() {
        let entry = entry.unwrap();
        std::fs::copy(entry.path(), dir.path().join(entry.file_name())).unwrap();
    }
    // Strip every gold_labels field.
    let corpus_path = dir.path().join("demo_corpus.jsonl");
    let stripped: String = std::fs::read_to_string(&corpus_path)
        .unwrap()
        .lines()
        .map(|line| {
            let mut value: serde_json::Value = serde_json::from_str(line).unwrap();
            value.as_object_mut().unwrap().remove("gold_labels");
            value.to_string()
        })
        .collect::<Vec<_>>()
        .join("\n");
    std::fs::write(&corpus_path, stripped).unwrap();
    let config = dir.path().join("config.txt");
    let output = polarmap(&["eval", "--config", config.to_str().unwrap()], dir.path());
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("gold"), "{stderr}");
}

#[test]
fn malformed_fixed_clock_exits_2() {
    let out = tempfile::tempdir().unwrap();
    let config = data_dir().join("config.txt");
    let output = polarmap(
        &[
            "analyze",
            "--config",
            config.to_str().unwrap(),
            "--fixed-clock",
            "yesterday",
        ],
        out.path(),
    );
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("fixed-clock"), "{stderr}");
}

#[test]
fn replicate_passes_with_no_data_files_present() {
    // Run from an empty directory: the checks use embedded fixtures only,
    // so a tampered or missing membership bank cannot affect them.
    let empty = tempfile::tempdir().unwrap();
    let output = polarmap(&["replicate"], empty.path());
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert_eq!(stdout.matches("[PASS]").count(), 4, "{stdout}");
    assert!(stdout.contains("replication: PASS"), "{stdout}");
}

#[test]
fn replicate_with_edited_ip_fails_with_expected_vs_actual() {
    let dir = tempfile::tempdir().unwrap();
    let edited = REPLICATION_RULES.replace("IP 0.25", "IP 0.3");
    let rules_path = dir.path().join("edited_rules.txt");
    std::fs::write(&rules_path, edited).unwrap();
    let output = polarmap(
        &["replicate", "--rules", rules_path.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(output.status.code(), Some(1), "golden failure exits 1");
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("[FAIL] road polarity"), "{stdout}");
    assert!(stdout.contains("expected"), "{stdout}");
    assert!(stdout.contains("0.1751"), "{stdout}");
}

#[test]
fn polarity_map_round_trips_through_its_reader() {
    let out = tempfile::tempdir().unwrap();
    let config = data_dir().join("config.txt");
    let output = polarmap(
        &[
            "analyze",
            "--config",
            config.to_str().unwrap(),
            "--fixed-clock",
            "2026-01-01T00:00:00Z",
        ],
        out.path(),
    );
    let text = std::str::from_utf8(&output.stdout).unwrap();
    let map = polarmap_core::report::PolarityMap::from_json(text).unwrap();
    let reparsed = polarmap_core::report::PolarityMap::from_json(&map.to_json()).unwrap();
    assert_eq!(map, reparsed);
    assert!(map.is_consistent());
}
