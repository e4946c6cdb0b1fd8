//! The fuzzy inference layer: triangular membership functions, rule
//! evaluation with min-fitness, fitness-weighted aggregation, and interval
//! classification into the five polarity terms.
//!
//! For a fired rule `i`, `output[i] = fitness[i] * ip[i]`, and the final
//! polarity is the fitness-weighted mean of the outputs:
//! `sum(output[i] * fitness[i]) / sum(fitness[i])`.

mod rules;

pub use rules::{parse_rules, FuzzyRule, RuleSlot, SlotPattern};

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::extract::FeatureOpinion;
use crate::term::Term;

#[derive(Debug, thiserror::Error)]
pub enum FuzzyError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("degenerate membership function: a = b = c = {0}")]
    DegenerateMf(f64),
    #[error("membership function needs a <= b <= c, got ({a}, {b}, {c})")]
    UnorderedMf { a: f64, b: f64, c: f64 },
    #[error("rule file line {line}: {message}")]
    RuleParse { line: usize, message: String },
    #[error("membership bank line {line}: {message}")]
    BankParse { line: usize, message: String },
    #[error("polarity value {0} is outside [0, 1]")]
    OutOfRange(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shoulder {
    None,
    Left,
    Right,
}

/// Triangular membership function with optional shoulder clamping for the
/// end terms of a bank.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangularMf {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub shoulder: Shoulder,
}

impl TriangularMf {
    pub fn new(a: f64, b: f64, c: f64, shoulder: Shoulder) -> Result<Self, FuzzyError> {
        if a == b && b == c {
            return Err(FuzzyError::DegenerateMf(a));
        }
        if !(a <= b && b <= c) {
            return Err(FuzzyError::UnorderedMf { a, b, c });
        }
        Ok(Self { a, b, c, shoulder })
    }

    /// Piecewise-linear membership degree in [0, 1].
    pub fn mu(&self, x: f64) -> f64 {
        if x == self.b {
            return 1.0;
        }
        if x < self.b {
            if self.shoulder == Shoulder::Left {
                1.0
            } else if x <= self.a {
                0.0
            } else {
                (x - self.a) / (self.b - self.a)
            }
        } else if self.shoulder == Shoulder::Right {
            1.0
        } else if x >= self.c {
            0.0
        } else {
            (self.c - x) / (self.c - self.b)
        }
    }
}

/// One membership function per polarity term.
#[derive(Debug, Clone)]
pub struct MfBank {
    terms: BTreeMap<Term, TriangularMf>,
}

impl MfBank {
    /// The default bank: peaks at each term's representative point, feet at
    /// the neighboring peaks, shoulders on the two end terms.
    pub fn default_bank() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(
            Term::StronglyNegative,
            TriangularMf::new(0.0, 0.125, 0.375, Shoulder::Left).unwrap(),
        );
        terms.insert(
            Term::Negative,
            TriangularMf::new(0.125, 0.375, 0.5, Shoulder::None).unwrap(),
        );
        terms.insert(
            Term::Neutral,
            TriangularMf::new(0.375, 0.5, 0.625, Shoulder::None).unwrap(),
        );
        terms.insert(
            Term::Positive,
            TriangularMf::new(0.5, 0.625, 0.875, Shoulder::None).unwrap(),
        );
        terms.insert(
            Term::StronglyPositive,
            TriangularMf::new(0.625, 0.875, 1.0, Shoulder::Right).unwrap(),
        );
        Self { terms }
    }

    /// Parses `term <name> <a> <b> <c> [shoulder-left|shoulder-right]` lines.
    pub fn parse(input: &str) -> Result<Self, FuzzyError> {
        let mut terms = BTreeMap::new();
        for (idx, raw) in input.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            let err = |message: String| FuzzyError::BankParse {
                line: line_no,
                message,
            };
            if words.len() < 5 || words[0] != "term" {
                return Err(err("expected `term <name> <a> <b> <c> [shoulder]`".into()));
            }
            let term: Term = words[1].parse().map_err(|e| err(format!("{e}")))?;
            let nums: Result<Vec<f64>, _> = words[2..5].iter().map(|w| w.parse()).collect();
            let nums = nums.map_err(|e| err(format!("bad number: {e}")))?;
            let shoulder = match words.get(5) {
                None => Shoulder::None,
                Some(&"shoulder-left") => Shoulder::Left,
                Some(&"shoulder-right") => Shoulder::Right,
                Some(other) => return Err(err(format!("unknown flag `{other}`"))),
            };
            let mf = TriangularMf::new(nums[0], nums[1], nums[2], shoulder)?;
            terms.insert(term, mf);
        }
        if terms.is_empty() {
            return Ok(Self::default_bank());
        }
        Ok(Self { terms })
    }

    pub fn load(path: &Path) -> Result<Self, FuzzyError> {
        let input = fs::read_to_string(path).map_err(|source| FuzzyError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&input)
    }

    pub fn mf(&self, term: Term) -> Option<&TriangularMf> {
        self.terms.get(&term)
    }
}

/// Membership degree of `scalar` in every term of the bank.
pub fn fuzzify(scalar: f64, bank: &MfBank) -> BTreeMap<Term, f64> {
    bank.terms
        .iter()
        .map(|(&term, mf)| (term, mf.mu(scalar)))
        .collect()
}

/// Minimum antecedent degree.
pub fn rule_fitness(degrees: &[f64]) -> f64 {
    degrees.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Polarity of the fired rules: `sum(fitness^2 * ip) / sum(fitness)`.
/// Returns `None` when no rule fired with positive fitness.
pub fn aggregate(fired: &[(f64, f64)]) -> Option<f64> {
    let positive: Vec<&(f64, f64)> = fired.iter().filter(|(fitness, _)| *fitness > 0.0).collect();
    if positive.is_empty() {
        return None;
    }
    let numerator: f64 = positive.iter().map(|(f, ip)| f * ip * f).sum();
    let denominator: f64 = positive.iter().map(|(f, _)| f).sum();
    Some(numerator / denominator)
}

/// Interval classification: SN = [0, 0.25), Neg = [0.25, 0.5), Neu = {0.5},
/// P = (0.5, 0.75], SP = (0.75, 1]. Boundaries resolve toward the more
/// neutral term.
pub fn classify_interval(value: f64) -> Result<Term, FuzzyError> {
    if !(0.0..=1.0).contains(&value) {
        return Err(FuzzyError::OutOfRange(value));
    }
    Ok(if value < 0.25 {
        Term::StronglyNegative
    } else if value < 0.5 {
        Term::Negative
    } else if value == 0.5 {
        Term::Neutral
    } else if value <= 0.75 {
        Term::Positive
    } else {
        Term::StronglyPositive
    })
}

/// Defuzzified polarity, or the undetermined sentinel when no rule fired.
#[derive(Debug, Clone, PartialEq)]
pub enum Polarity {
    Determined { value: f64, term: Term },
    Undetermined,
}

impl Polarity {
    pub fn value(&self) -> Option<f64> {
        match self {
            Polarity::Determined { value, .. } => Some(*value),
            Polarity::Undetermined => None,
        }
    }

    pub fn term(&self) -> Option<Term> {
        match self {
            Polarity::Determined { term, .. } => Some(*term),
            Polarity::Undetermined => None,
        }
    }
}

/// One fired rule in a result trace.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleFiring {
    pub rule_id: String,
    pub fitness: f64,
    pub output: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolarityResult {
    pub polarity: Polarity,
    pub trace: Vec<RuleFiring>,
}

/// Fuzzifies each opinion word, evaluates every satisfiable rule, aggregates
/// the firings, and classifies the result. Negated words contribute the
/// mirrored scalar `1 - x`.
pub fn feature_polarity(
    pair: &FeatureOpinion,
    rules: &[FuzzyRule],
    bank: &MfBank,
) -> Result<PolarityResult, FuzzyError> {
    evaluate_words(&pair.opinion_words, rules, bank)
}

/// Rule evaluation over a plain opinion-word list; the pipeline pools words
/// from many clauses of one feature and calls this directly.
pub fn evaluate_words(
    words: &[crate::extract::OpinionWord],
    rules: &[FuzzyRule],
    bank: &MfBank,
) -> Result<PolarityResult, FuzzyError> {
    let scalars: Vec<(usize, f64)> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (i, if w.negated { 1.0 - w.scalar } else { w.scalar }))
        .collect();

    let mut trace = Vec::new();
    for rule in rules {
        // Per slot: candidate (word index, degree) bindings.
        let mut slot_candidates: Vec<Vec<(usize, f64)>> = Vec::with_capacity(rule.antecedent.len());
        for slot in &rule.antecedent {
            let mut candidates = Vec::new();
            for &(i, scalar) in &scalars {
                let matches_slot = match &slot.slot {
                    SlotPattern::Any => true,
                    SlotPattern::Word(name) => {
                        words[i].stem == *name || words[i].surface.eq_ignore_ascii_case(name)
                    }
                };
                if !matches_slot {
                    continue;
                }
                let degree = match slot.mu_override {
                    Some(mu) => mu,
                    None => bank.mf(slot.term).map_or(0.0, |mf| mf.mu(scalar)),
                };
                if degree > 0.0 {
                    candidates.push((i, degree));
                }
            }
            slot_candidates.push(candidates);
        }
        if slot_candidates.iter().any(|c| c.is_empty()) {
            continue;
        }
        // One firing per combination of slot bindings; named slots bind a
        // single word, so replication rules fire exactly once.
        for combo in cartesian(&slot_candidates) {
            let degrees: Vec<f64> = combo.iter().map(|&(_, d)| d).collect();
            let fitness = rule_fitness(&degrees);
            if fitness > 0.0 {
                trace.push(RuleFiring {
                    rule_id: rule.id.clone(),
                    fitness,
                    output: fitness * rule.ip,
                });
            }
        }
    }

    let fired: Vec<(f64, f64)> = trace
        .iter()
        .map(|f| (f.fitness, f.output / f.fitness))
        .collect();
    let polarity = match aggregate(&fired) {
        Some(value) => Polarity::Determined {
            value,
            term: classify_interval(value)?,
        },
        None => {
            trace.clear();
            Polarity::Undetermined
        }
    };
    Ok(PolarityResult { polarity, trace })
}

fn cartesian(candidates: &[Vec<(usize, f64)>]) -> Vec<Vec<(usize, f64)>> {
    let mut combos: Vec<Vec<(usize, f64)>> = vec![Vec::new()];
    for slot in candidates {
        let mut next = Vec::with_capacity(combos.len() * slot.len());
        for combo in &combos {
            for &binding in slot {
                let mut extended = combo.clone();
                extended.push(binding);
                next.push(extended);
            }
        }
        combos = next;
    }
    combos
}

pub fn load_rules(path: &Path) -> Result<Vec<FuzzyRule>, FuzzyError> {
    let input = fs::read_to_string(path).map_err(|source| FuzzyError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_rules(&input)
}

/// The default rule bank: one wildcard rule per term, each firing at the
/// term's representative input polarity.
pub fn default_rules() -> Vec<FuzzyRule> {
    Term::ALL
        .iter()
        .map(|&term| FuzzyRule {
            id: term.label().to_lowercase(),
            antecedent: vec![RuleSlot {
                slot: SlotPattern::Any,
                term,
                mu_override: None,
            }],
            consequent: term,
            ip: term.representative(),
        })
        .collect()
}
