//! Per-feature evaluation against gold labels: confusion counts, precision,
//! recall, accuracy, and F-measure.
//!
//! For a feature and a document: a prediction equal to the gold term is a
//! true positive; a prediction where gold names no such feature is a false
//! positive; a gold label with no (or an undetermined) prediction is a false
//! negative; a prediction differing from the gold term counts as both a
//! false positive and a false negative; documents mentioning the feature in
//! neither are true negatives.

use std::collections::{BTreeMap, BTreeSet};

use crate::term::Term;
use crate::text::format_truncated;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Confusion {
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
    pub tn: usize,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("metric undefined: denominator is zero")]
    UndefinedMetric,
    #[error("no document in the corpus carries gold labels")]
    MissingGoldLabels,
}

/// Percentage of retrieved items that are relevant: `100 * tp / (tp + fp)`.
pub fn precision(c: &Confusion) -> Result<f64, EvalError> {
    ratio(c.tp, c.tp + c.fp).map(|r| 100.0 * r)
}

/// Percentage of relevant items that are retrieved: `100 * tp / (tp + fn)`.
pub fn recall(c: &Confusion) -> Result<f64, EvalError> {
    ratio(c.tp, c.tp + c.fn_).map(|r| 100.0 * r)
}

/// Ratio of correct decisions over all four cells.
pub fn accuracy(c: &Confusion) -> Result<f64, EvalError> {
    ratio(c.tp + c.tn, c.tp + c.fp + c.fn_ + c.tn)
}

/// Harmonic mean of precision and recall (in the same percent scale).
pub fn fmeasure(p: f64, r: f64) -> Result<f64, EvalError> {
    if p + r == 0.0 {
        return Err(EvalError::UndefinedMetric);
    }
    Ok(2.0 * p * r / (p + r))
}

fn ratio(num: usize, den: usize) -> Result<f64, EvalError> {
    if den == 0 {
        Err(EvalError::UndefinedMetric)
    } else {
        Ok(num as f64 / den as f64)
    }
}

/// Gold labels per document: feature name -> term.
pub type GoldLabels = BTreeMap<String, BTreeMap<String, Term>>;
/// Predictions per document: feature name -> Some(term) or None when the
/// pipeline saw the feature but could not classify it.
pub type Predictions = BTreeMap<String, BTreeMap<String, Option<Term>>>;

#[derive(Debug, Clone)]
pub struct FeatureMetrics {
    pub feature: String,
    pub confusion: Confusion,
    pub documents_with_feature: usize,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub accuracy: Option<f64>,
    pub fmeasure: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct EvalReport {
    pub rows: Vec<FeatureMetrics>,
    pub average: FeatureMetrics,
}

/// Evaluates predictions against gold labels, per feature, over every
/// document that carries gold labels.
pub fn evaluate(gold: &GoldLabels, predicted: &Predictions) -> Result<EvalReport, EvalError> {
    if gold.is_empty() {
        return Err(EvalError::MissingGoldLabels);
    }
    let mut features: BTreeSet<&String> = BTreeSet::new();
    for labels in gold.values() {
        features.extend(labels.keys());
    }
    for (doc, labels) in predicted {
        if gold.contains_key(doc) {
            features.extend(labels.keys());
        }
    }

    let mut rows = Vec::new();
    for feature in features {
        let mut confusion = Confusion::default();
        let mut documents_with_feature = 0;
        for (doc, labels) in gold {
            let gold_term = labels.get(feature);
            let predicted_term = predicted.get(doc).and_then(|p| p.get(feature)).copied();
            if gold_term.is_some() || matches!(predicted_term, Some(Some(_))) {
                documents_with_feature += 1;
            }
            match (gold_term, predicted_term) {
                (Some(g), Some(Some(p))) if *g == p => confusion.tp += 1,
                (Some(_), Some(Some(_))) => {
                    confusion.fp += 1;
                    confusion.fn_ += 1;
                }
                (Some(_), Some(None)) | (Some(_), None) => confusion.fn_ += 1,
                (None, Some(Some(_))) => confusion.fp += 1,
                (None, Some(None)) | (None, None) => confusion.tn += 1,
            }
        }
        let p = precision(&confusion).ok();
        let r = recall(&confusion).ok();
        let fm = match (p, r) {
            (Some(p), Some(r)) => fmeasure(p, r).ok(),
            _ => None,
        };
        rows.push(FeatureMetrics {
            feature: feature.clone(),
            confusion,
            documents_with_feature,
            precision: p,
            recall: r,
            accuracy: accuracy(&confusion).ok(),
            fmeasure: fm,
        });
    }

    let average = average_row(&rows);
    Ok(EvalReport { rows, average })
}

fn mean(values: impl Iterator<Item = Option<f64>>) -> Option<f64> {
    let defined: Vec<f64> = values.flatten().collect();
    if defined.is_empty() {
        None
    } else {
        Some(defined.iter().sum::<f64>() / defined.len() as f64)
    }
}

/// Unweighted mean across features, per metric, skipping undefined cells.
fn average_row(rows: &[FeatureMetrics]) -> FeatureMetrics {
    FeatureMetrics {
        feature: "Average".into(),
        confusion: Confusion::default(),
        documents_with_feature: rows.iter().map(|r| r.documents_with_feature).sum(),
        precision: mean(rows.iter().map(|r| r.precision)),
        recall: mean(rows.iter().map(|r| r.recall)),
        accuracy: mean(rows.iter().map(|r| r.accuracy)),
        fmeasure: mean(rows.iter().map(|r| r.fmeasure)),
    }
}

fn cell(value: Option<f64>, decimals: usize) -> String {
    match value {
        Some(v) => format_truncated(v, decimals),
        None => "-".into(),
    }
}

impl EvalReport {
    /// CSV with columns feature, P, R, Ac, FM plus an Average row.
    pub fn to_csv(&self, decimals: usize) -> String {
        let mut out = String::from("feature,P,R,Ac,FM\n");
        for row in self.rows.iter().chain(std::iter::once(&self.average)) {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                row.feature,
                cell(row.precision, decimals),
                cell(row.recall, decimals),
                cell(row.accuracy, decimals),
                cell(row.fmeasure, decimals),
            ));
        }
        out
    }

    /// Aligned text table with a sentence-count column.
    pub fn to_table(&self, decimals: usize) -> String {
        let name_width = self
            .rows
            .iter()
            .map(|r| r.feature.len())
            .chain(std::iter::once("Average".len()))
            .chain(std::iter::once("Feature".len()))
            .max()
            .unwrap_or(8);
        let mut out = format!(
            "{:<name_width$}  {:>5}  {:>8}  {:>8}  {:>8}  {:>8}\n",
            "Feature", "Docs", "P", "R", "Ac", "FM"
        );
        for row in self.rows.iter().chain(std::iter::once(&self.average)) {
            out.push_str(&format!(
                "{:<name_width$}  {:>5}  {:>8}  {:>8}  {:>8}  {:>8}\n",
                row.feature,
                row.documents_with_feature,
                cell(row.precision, decimals),
                cell(row.recall, decimals),
                cell(row.accuracy, decimals),
                cell(row.fmeasure, decimals),
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn precision_basics() {
        let perfect = Confusion {
            tp: 1,
            fp: 0,
            fn_: 0,
            tn: 0,
        };
        assert_eq!(precision(&perfect).unwrap(), 100.0);
        let half = Confusion {
            tp: 50,
            fp: 50,
            fn_: 0,
            tn: 0,
        };
        assert_eq!(precision(&half).unwrap(), 50.0);
        let empty = Confusion::default();
        assert_eq!(precision(&empty), Err(EvalError::UndefinedMetric));
    }

    #[test]
    fn accuracy_of_a_balanced_confusion_is_half() {
        let c = Confusion {
            tp: 1,
            fp: 1,
            fn_: 1,
            tn: 1,
        };
        assert_eq!(accuracy(&c).unwrap(), 0.5);
    }

    #[test]
    fn fmeasure_follows_the_harmonic_formula() {
        // Direct arithmetic: 2 * 98.08 * 77.52 / (98.08 + 77.52).
        let expected = 15206.3232 / 175.6;
        let fm = fmeasure(98.08, 77.52).unwrap();
        assert!((fm - expected).abs() < 1e-9);
        assert_eq!(format_truncated(fm, 2), "86.59");
    }

    #[test]
    fn fmeasure_of_equal_inputs_is_the_input() {
        assert_eq!(fmeasure(64.0, 64.0).unwrap(), 64.0);
    }

    fn label(pairs: &[(&str, Term)]) -> BTreeMap<String, Term> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    fn prediction(pairs: &[(&str, Option<Term>)]) -> BTreeMap<String, Option<Term>> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn perfect_predictions_score_one_hundred_everywhere() {
        let mut gold = GoldLabels::new();
        let mut predicted = Predictions::new();
        for i in 0..4 {
            let doc = format!("d{i}");
            gold.insert(doc.clone(), label(&[("Road", Term::StronglyNegative)]));
            predicted.insert(doc, prediction(&[("Road", Some(Term::StronglyNegative))]));
        }
        let report = evaluate(&gold, &predicted).unwrap();
        let road = &report.rows[0];
        assert_eq!(road.precision, Some(100.0));
        assert_eq!(road.recall, Some(100.0));
        assert_eq!(road.accuracy, Some(1.0));
        assert_eq!(road.fmeasure, Some(100.0));
    }

    #[test]
    fn all_wrong_terms_leave_precision_zero_and_accuracy_below_one() {
        let mut gold = GoldLabels::new();
        let mut predicted = Predictions::new();
        for i in 0..3 {
            let doc = format!("d{i}");
            gold.insert(doc.clone(), label(&[("Road", Term::Positive)]));
            predicted.insert(doc, prediction(&[("Road", Some(Term::Negative))]));
        }
        let report = evaluate(&gold, &predicted).unwrap();
        let road = &report.rows[0];
        assert_eq!(road.precision, Some(0.0));
        assert!(road.accuracy.unwrap() < 1.0);
    }

    #[test]
    fn planted_errors_match_a_hand_computed_confusion() {
        // 20 documents, one feature, three plants: d15 predicts the wrong
        // term, d16 misses its gold label, d17 predicts where gold has
        // nothing. d18/d19 are correctly unlabeled.
        let mut gold = GoldLabels::new();
        let mut predicted = Predictions::new();
        for i in 0..15 {
            let doc = format!("d{i:02}");
            gold.insert(doc.clone(), label(&[("Parks", Term::Positive)]));
            predicted.insert(doc, prediction(&[("Parks", Some(Term::Positive))]));
        }
        gold.insert("d15".into(), label(&[("Parks", Term::Positive)]));
        predicted.insert("d15".into(), prediction(&[("Parks", Some(Term::Negative))]));
        gold.insert("d16".into(), label(&[("Parks", Term::Positive)]));
        predicted.insert("d16".into(), prediction(&[]));
        gold.insert("d17".into(), label(&[]));
        predicted.insert("d17".into(), prediction(&[("Parks", Some(Term::Neutral))]));
        gold.insert("d18".into(), label(&[]));
        predicted.insert("d18".into(), prediction(&[]));
        gold.insert("d19".into(), label(&[]));
        predicted.insert("d19".into(), prediction(&[]));

        let report = evaluate(&gold, &predicted).unwrap();
        let parks = &report.rows[0];
        // Hand count: tp=15 (d00..d14); d15 adds fp+fn; d16 fn; d17 fp;
        // d18, d19 tn.
        assert_eq!(
            parks.confusion,
            Confusion {
                tp: 15,
                fp: 2,
                fn_: 2,
                tn: 2
            }
        );
        // P = R = 100 * 15/17; Ac = 17/21; FM = harmonic mean of equals.
        let expected_pr = 100.0 * 15.0 / 17.0;
        assert!((parks.precision.unwrap() - expected_pr).abs() < 1e-9);
        assert!((parks.recall.unwrap() - expected_pr).abs() < 1e-9);
        assert!((parks.accuracy.unwrap() - 17.0 / 21.0).abs() < 1e-9);
        assert!((parks.fmeasure.unwrap() - expected_pr).abs() < 1e-9);
    }

    #[test]
    fn undetermined_predictions_count_as_misses() {
        let mut gold = GoldLabels::new();
        let mut predicted = Predictions::new();
        gold.insert("d0".into(), label(&[("Road", Term::Negative)]));
        predicted.insert("d0".into(), prediction(&[("Road", None)]));
        let report = evaluate(&gold, &predicted).unwrap();
        assert_eq!(report.rows[0].confusion.fn_, 1);
        assert_eq!(report.rows[0].confusion.fp, 0);
    }

    #[test]
    fn empty_gold_is_an_error() {
        assert_eq!(
            evaluate(&GoldLabels::new(), &Predictions::new()).unwrap_err(),
            EvalError::MissingGoldLabels
        );
    }

    #[test]
    fn csv_has_one_row_per_feature_plus_average() {
        let mut gold = GoldLabels::new();
        let mut predicted = Predictions::new();
        gold.insert(
            "d0".into(),
            label(&[("Road", Term::Negative), ("Parks", Term::Positive)]),
        );
        predicted.insert(
            "d0".into(),
            prediction(&[
                ("Road", Some(Term::Negative)),
                ("Parks", Some(Term::Positive)),
            ]),
        );
        let report = evaluate(&gold, &predicted).unwrap();
        let csv = report.to_csv(2);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "feature,P,R,Ac,FM");
        assert_eq!(lines.len(), 4);
        assert!(lines[3].starts_with("Average,"));
    }

    proptest! {
        #[test]
        fn metric_ranges_and_harmonic_bound(
            tp in 0usize..40, fp in 0usize..40, fn_ in 0usize..40, tn in 0usize..40
        ) {
            let c = Confusion { tp, fp, fn_, tn };
            if let (Ok(p), Ok(r)) = (precision(&c), recall(&c)) {
                prop_assert!((0.0..=100.0).contains(&p));
                prop_assert!((0.0..=100.0).contains(&r));
                if let Ok(fm) = fmeasure(p, r) {
                    prop_assert!(fm <= (p + r) / 2.0 + 1e-9);
                    if (p - r).abs() < 1e-12 {
                        prop_assert!((fm - p).abs() < 1e-9);
                    }
                }
            }
            if let Ok(ac) = accuracy(&c) {
                prop_assert!((0.0..=1.0).contains(&ac));
            }
        }

        #[test]
        fn doubling_every_cell_changes_nothing(
            tp in 0usize..20, fp in 0usize..20, fn_ in 0usize..20, tn in 0usize..20
        ) {
            let c = Confusion { tp, fp, fn_, tn };
            let doubled = Confusion { tp: tp * 2, fp: fp * 2, fn_: fn_ * 2, tn: tn * 2 };
            prop_assert_eq!(precision(&c).ok(), precision(&doubled).ok());
            prop_assert_eq!(recall(&c).ok(), recall(&doubled).ok());
            prop_assert_eq!(accuracy(&c).ok(), accuracy(&doubled).ok());
        }
    }
}
