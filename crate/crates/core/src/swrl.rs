//! Forward-chaining evaluation of causal/propagation rules over classified
//! feature polarities: jam-cause attribution, cross-feature propagation, and
//! city-level aggregation.
//!
//! Rule file syntax (atoms separated by commas or `AND`):
//!
//! ```text
//! rule <id>: IF Accident(?B), Road(?A), OpinionOf(?B, SN), Speed(?C, VerySlow)
//!            THEN OpinionOf(?D, SN), PolarityIs(?A, SN), TrafficIsJammedBy(?A, ?B)
//! ```
//!
//! A class atom `Name(?V)` binds the variable to the class name itself, so
//! `Accident(?B)` grounds `?B` to `Accident`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::path::Path;

use crate::fuzzy::{classify_interval, Polarity};
use crate::ontology::FuzzyOntology;
use crate::term::{SpeedTerm, Term};

/// A ground fact. `OpinionOf`, `PolarityIs`, and `Speed` are functional in
/// their subject: one object per (predicate, subject).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fact {
    OpinionOf { subject: String, term: Term },
    PolarityIs { subject: String, term: Term },
    Speed { subject: String, term: SpeedTerm },
    TrafficIsJammedBy { subject: String, cause: String },
}

impl Fact {
    /// Key identifying the functional slot this fact fills, if any.
    fn functional_key(&self) -> Option<(u8, &str)> {
        match self {
            Fact::OpinionOf { subject, .. } => Some((0, subject)),
            Fact::PolarityIs { subject, .. } => Some((1, subject)),
            Fact::Speed { subject, .. } => Some((2, subject)),
            Fact::TrafficIsJammedBy { .. } => None,
        }
    }
}

impl std::fmt::Display for Fact {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Fact::OpinionOf { subject, term } => write!(f, "OpinionOf({subject}, {term})"),
            Fact::PolarityIs { subject, term } => write!(f, "PolarityIs({subject}, {term})"),
            Fact::Speed { subject, term } => write!(f, "Speed({subject}, {term})"),
            Fact::TrafficIsJammedBy { subject, cause } => {
                write!(f, "TrafficIsJammedBy({subject}, {cause})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arg {
    Var(String),
    Const(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AtomPattern {
    /// `ClassName(?V)`: binds the variable to the class name.
    Class {
        class: String,
        var: String,
    },
    OpinionOf {
        subject: Arg,
        term: Term,
    },
    PolarityIs {
        subject: Arg,
        term: Term,
    },
    Speed {
        subject: Arg,
        term: SpeedTerm,
    },
    TrafficIsJammedBy {
        subject: Arg,
        cause: Arg,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CausalRule {
    pub id: String,
    pub antecedent: Vec<AtomPattern>,
    pub consequent: Vec<AtomPattern>,
}

#[derive(Debug, thiserror::Error)]
pub enum SwrlError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("causal rule line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("rule `{rule}` uses unbound variable `{var}` in its consequent")]
    UnboundVariable { rule: String, var: String },
    #[error("conflicting derivations: {}", conflicts.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("; "))]
    Conflict { conflicts: Vec<ConflictInfo> },
    #[error("inconsistent input facts: {fact_a} vs {fact_b}")]
    InconsistentInput { fact_a: String, fact_b: String },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConflictInfo {
    pub subject: String,
    pub rule_a: String,
    pub fact_a: String,
    pub rule_b: String,
    pub fact_b: String,
}

impl std::fmt::Display for ConflictInfo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "rule `{}` derives {} but rule `{}` derives {}",
            self.rule_a, self.fact_a, self.rule_b, self.fact_b
        )
    }
}

/// Result of running the rules to fixpoint.
#[derive(Debug, Clone)]
pub struct Derivation {
    /// Facts added by the rules (never includes input facts).
    pub derived: BTreeSet<Fact>,
    /// Inputs plus derived facts.
    pub all_facts: BTreeSet<Fact>,
    /// Rounds taken to reach the fixpoint.
    pub iterations: usize,
}

type Bindings = BTreeMap<String, String>;

fn bind(bindings: &mut Bindings, arg: &Arg, value: &str) -> bool {
    match arg {
        Arg::Const(c) => c == value,
        Arg::Var(v) => match bindings.get(v) {
            Some(existing) => existing == value,
            None => {
                bindings.insert(v.clone(), value.to_string());
                true
            }
        },
    }
}

fn match_atom(pattern: &AtomPattern, fact: &Fact, bindings: &Bindings) -> Option<Bindings> {
    let mut next = bindings.clone();
    let ok = match (pattern, fact) {
        (
            AtomPattern::OpinionOf { subject, term },
            Fact::OpinionOf {
                subject: s,
                term: t,
            },
        ) => term == t && bind(&mut next, subject, s),
        (
            AtomPattern::PolarityIs { subject, term },
            Fact::PolarityIs {
                subject: s,
                term: t,
            },
        ) => term == t && bind(&mut next, subject, s),
        (
            AtomPattern::Speed { subject, term },
            Fact::Speed {
                subject: s,
                term: t,
            },
        ) => term == t && bind(&mut next, subject, s),
        (
            AtomPattern::TrafficIsJammedBy { subject, cause },
            Fact::TrafficIsJammedBy {
                subject: s,
                cause: c,
            },
        ) => bind(&mut next, subject, s) && bind(&mut next, cause, c),
        _ => false,
    };
    ok.then_some(next)
}

fn solve(
    atoms: &[AtomPattern],
    facts: &BTreeSet<Fact>,
    bindings: Bindings,
    out: &mut Vec<Bindings>,
) {
    let Some((first, rest)) = atoms.split_first() else {
        out.push(bindings);
        return;
    };
    if let AtomPattern::Class { class, var } = first {
        let mut next = bindings.clone();
        if bind(&mut next, &Arg::Var(var.clone()), class) {
            solve(rest, facts, next, out);
        }
        return;
    }
    for fact in facts {
        if let Some(next) = match_atom(first, fact, &bindings) {
            solve(rest, facts, next, out);
        }
    }
}

fn instantiate(pattern: &AtomPattern, bindings: &Bindings, rule: &str) -> Result<Fact, SwrlError> {
    let resolve = |arg: &Arg| -> Result<String, SwrlError> {
        match arg {
            Arg::Const(c) => Ok(c.clone()),
            Arg::Var(v) => bindings
                .get(v)
                .cloned()
                .ok_or_else(|| SwrlError::UnboundVariable {
                    rule: rule.to_string(),
                    var: v.clone(),
                }),
        }
    };
    Ok(match pattern {
        AtomPattern::Class { class, .. } => {
            // Class atoms in a consequent would assert typing; not supported.
            return Err(SwrlError::UnboundVariable {
                rule: rule.to_string(),
                var: class.clone(),
            });
        }
        AtomPattern::OpinionOf { subject, term } => Fact::OpinionOf {
            subject: resolve(subject)?,
            term: *term,
        },
        AtomPattern::PolarityIs { subject, term } => Fact::PolarityIs {
            subject: resolve(subject)?,
            term: *term,
        },
        AtomPattern::Speed { subject, term } => Fact::Speed {
            subject: resolve(subject)?,
            term: *term,
        },
        AtomPattern::TrafficIsJammedBy { subject, cause } => Fact::TrafficIsJammedBy {
            subject: resolve(subject)?,
            cause: resolve(cause)?,
        },
    })
}

/// Forward chaining to fixpoint. Derived facts never overwrite input facts;
/// two rules deriving different objects for one functional slot is an error
/// listing every conflict, independent of rule order.
pub fn apply_rules(inputs: &BTreeSet<Fact>, rules: &[CausalRule]) -> Result<Derivation, SwrlError> {
    // Input consistency: one object per functional (predicate, subject).
    let mut slots: HashMap<(u8, String), Fact> = HashMap::new();
    for fact in inputs {
        if let Some((pred, subject)) = fact.functional_key() {
            if let Some(existing) = slots.insert((pred, subject.to_string()), fact.clone()) {
                if existing != *fact {
                    return Err(SwrlError::InconsistentInput {
                        fact_a: existing.to_string(),
                        fact_b: fact.to_string(),
                    });
                }
            }
        }
    }

    let mut all_facts = inputs.clone();
    let mut derived: BTreeSet<Fact> = BTreeSet::new();
    let mut provenance: HashMap<Fact, String> = HashMap::new();
    let mut iterations = 0;

    loop {
        // One round: evaluate every rule against the same snapshot.
        let mut round: Vec<(Fact, String)> = Vec::new();
        for rule in rules {
            let mut solutions = Vec::new();
            solve(
                &rule.antecedent,
                &all_facts,
                Bindings::new(),
                &mut solutions,
            );
            for bindings in solutions {
                for pattern in &rule.consequent {
                    let fact = instantiate(pattern, &bindings, &rule.id)?;
                    if !all_facts.contains(&fact) {
                        round.push((fact, rule.id.clone()));
                    }
                }
            }
        }

        let mut conflicts: Vec<ConflictInfo> = Vec::new();
        let mut fresh: BTreeSet<Fact> = BTreeSet::new();
        for (fact, rule_id) in round {
            let Some((pred, subject)) = fact.functional_key() else {
                provenance
                    .entry(fact.clone())
                    .or_insert_with(|| rule_id.clone());
                fresh.insert(fact);
                continue;
            };
            let subject = subject.to_string();
            match slots.get(&(pred, subject.clone())) {
                Some(existing) if *existing != fact => {
                    // Input facts win silently; clashes between two rules
                    // are conflicts.
                    if let Some(earlier_rule) = provenance.get(existing) {
                        conflicts.push(ConflictInfo {
                            subject,
                            rule_a: earlier_rule.clone(),
                            fact_a: existing.to_string(),
                            rule_b: rule_id,
                            fact_b: fact.to_string(),
                        });
                    }
                }
                Some(_) => {}
                None => {
                    // Same-round duplicate derivations of one slot.
                    if let Some(clash) = fresh
                        .iter()
                        .find(|f| f.functional_key() == fact.functional_key() && **f != fact)
                    {
                        conflicts.push(ConflictInfo {
                            subject,
                            rule_a: provenance[clash].clone(),
                            fact_a: clash.to_string(),
                            rule_b: rule_id,
                            fact_b: fact.to_string(),
                        });
                    } else {
                        provenance
                            .entry(fact.clone())
                            .or_insert_with(|| rule_id.clone());
                        fresh.insert(fact);
                    }
                }
            }
        }
        if !conflicts.is_empty() {
            conflicts.sort();
            conflicts.dedup();
            return Err(SwrlError::Conflict { conflicts });
        }
        if fresh.is_empty() {
            break;
        }
        iterations += 1;
        for fact in fresh {
            if let Some((pred, subject)) = fact.functional_key() {
                slots.insert((pred, subject.to_string()), fact.clone());
            }
            derived.insert(fact.clone());
            all_facts.insert(fact);
        }
    }

    Ok(Derivation {
        derived,
        all_facts,
        iterations,
    })
}

/// Per-feature inputs to city aggregation.
#[derive(Debug, Clone)]
pub struct FeaturePolarity {
    pub feature: String,
    pub value: Option<f64>,
    pub sentences: usize,
}

/// City polarity: the sentence-count-weighted mean of the determined feature
/// values, classified by interval. Unanimous feature terms yield that term
/// because means cannot leave the shared interval.
pub fn city_polarity(features: &[FeaturePolarity]) -> Polarity {
    let determined: Vec<(f64, f64)> = features
        .iter()
        .filter_map(|f| f.value.map(|v| (v, f.sentences as f64)))
        .collect();
    if determined.is_empty() {
        return Polarity::Undetermined;
    }
    let total_weight: f64 = determined.iter().map(|(_, w)| w).sum();
    let value = if total_weight > 0.0 {
        determined.iter().map(|(v, w)| v * w).sum::<f64>() / total_weight
    } else {
        determined.iter().map(|(v, _)| v).sum::<f64>() / determined.len() as f64
    };
    match classify_interval(value) {
        Ok(term) => Polarity::Determined { value, term },
        Err(_) => Polarity::Undetermined,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum CauseKind {
    /// A subfeature classified SN or Neg, with its term.
    SubfeaturePolarity(Term),
    /// Named by a TrafficIsJammedBy fact.
    JamCause,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cause {
    pub name: String,
    pub kind: CauseKind,
}

/// Causes of a negative feature: its subfeatures with SN/Neg polarity facts,
/// plus anything a TrafficIsJammedBy fact blames. Features that are not
/// SN/Neg have no cause report.
pub fn cause_report(
    feature: &str,
    feature_term: Option<Term>,
    facts: &BTreeSet<Fact>,
    ontology: &FuzzyOntology,
) -> Vec<Cause> {
    if !matches!(
        feature_term,
        Some(Term::StronglyNegative) | Some(Term::Negative)
    ) {
        return Vec::new();
    }
    let mut causes = Vec::new();
    if let Ok(children) = ontology.subfeatures(feature) {
        for child in children {
            let term = facts.iter().find_map(|f| match f {
                Fact::OpinionOf { subject, term } | Fact::PolarityIs { subject, term }
                    if subject == &child.name =>
                {
                    Some(*term)
                }
                _ => None,
            });
            if let Some(term @ (Term::StronglyNegative | Term::Negative)) = term {
                causes.push(Cause {
                    name: child.name.clone(),
                    kind: CauseKind::SubfeaturePolarity(term),
                });
            }
        }
    }
    for fact in facts {
        if let Fact::TrafficIsJammedBy { subject, cause } = fact {
            if subject == feature {
                causes.push(Cause {
                    name: cause.clone(),
                    kind: CauseKind::JamCause,
                });
            }
        }
    }
    causes.sort();
    causes.dedup();
    causes
}

/// Word -> speed term table used to turn vehicle opinion words into `Speed`
/// facts. Keys are normalized through the stemmer on load.
#[derive(Debug, Clone, Default)]
pub struct SpeedTermTable {
    entries: BTreeMap<String, SpeedTerm>,
}

impl SpeedTermTable {
    pub fn parse(input: &str) -> Result<Self, SwrlError> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in input.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let word = parts.next().unwrap_or_default();
            let term: SpeedTerm = parts
                .next()
                .ok_or_else(|| SwrlError::Parse {
                    line: idx + 1,
                    message: "expected `word<TAB>term`".into(),
                })?
                .parse()
                .map_err(|e| SwrlError::Parse {
                    line: idx + 1,
                    message: format!("{e}"),
                })?;
            entries.insert(word.to_lowercase(), term);
            entries.insert(crate::preprocess::stem(word), term);
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self, SwrlError> {
        let input = fs::read_to_string(path).map_err(|source| SwrlError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&input)
    }

    pub fn lookup(&self, word: &str) -> Option<SpeedTerm> {
        self.entries.get(&word.to_lowercase()).copied()
    }
}

pub fn parse_causal_rules(input: &str) -> Result<Vec<CausalRule>, SwrlError> {
    let mut rules = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        rules.push(parse_causal_rule_line(line, line_no)?);
    }
    Ok(rules)
}

pub fn load_causal_rules(path: &Path) -> Result<Vec<CausalRule>, SwrlError> {
    let input = fs::read_to_string(path).map_err(|source| SwrlError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_causal_rules(&input)
}

fn parse_causal_rule_line(line: &str, line_no: usize) -> Result<CausalRule, SwrlError> {
    let err = |message: String| SwrlError::Parse {
        line: line_no,
        message,
    };
    let rest = line
        .strip_prefix("rule ")
        .ok_or_else(|| err("line must start with `rule <id>:`".into()))?;
    let (id, rest) = rest
        .split_once(':')
        .ok_or_else(|| err("missing `:` after rule id".into()))?;
    let id = id.trim().to_string();
    let rest = rest.trim();
    let rest = rest
        .strip_prefix("IF ")
        .ok_or_else(|| err("expected `IF`".into()))?;
    let (antecedent_text, consequent_text) = rest
        .split_once(" THEN ")
        .ok_or_else(|| err("expected `THEN`".into()))?;

    let antecedent = parse_atoms(antecedent_text, line_no)?;
    let consequent = parse_atoms(consequent_text, line_no)?;
    if antecedent.is_empty() || consequent.is_empty() {
        return Err(err("rule needs both antecedent and consequent atoms".into()));
    }

    // Every consequent variable must be bound by the antecedent.
    let mut bound: BTreeSet<&str> = BTreeSet::new();
    for atom in &antecedent {
        collect_vars(atom, &mut bound);
    }
    let mut used: BTreeSet<&str> = BTreeSet::new();
    for atom in &consequent {
        collect_vars(atom, &mut used);
    }
    if let Some(unbound) = used.difference(&bound).next() {
        return Err(SwrlError::UnboundVariable {
            rule: id,
            var: unbound.to_string(),
        });
    }

    Ok(CausalRule {
        id,
        antecedent,
        consequent,
    })
}

fn collect_vars<'a>(atom: &'a AtomPattern, out: &mut BTreeSet<&'a str>) {
    let mut push = |arg: &'a Arg| {
        if let Arg::Var(v) = arg {
            out.insert(v.as_str());
        }
    };
    match atom {
        AtomPattern::Class { var, .. } => {
            out.insert(var.as_str());
        }
        AtomPattern::OpinionOf { subject, .. } | AtomPattern::PolarityIs { subject, .. } => {
            push(subject)
        }
        AtomPattern::Speed { subject, .. } => push(subject),
        AtomPattern::TrafficIsJammedBy { subject, cause } => {
            push(subject);
            push(cause);
        }
    }
}

fn parse_atoms(text: &str, line_no: usize) -> Result<Vec<AtomPattern>, SwrlError> {
    let err = |message: String| SwrlError::Parse {
        line: line_no,
        message,
    };
    let mut atoms = Vec::new();
    // Atoms are `Name(args)` separated by commas or AND; split on `)`.
    for chunk in text.split(')') {
        let chunk = chunk
            .trim()
            .trim_start_matches(',')
            .trim_start_matches("AND")
            .trim();
        if chunk.is_empty() {
            continue;
        }
        let (name, args_text) = chunk
            .split_once('(')
            .ok_or_else(|| err(format!("bad atom `{chunk}`")))?;
        let name = name.trim();
        let args: Vec<&str> = args_text.split(',').map(str::trim).collect();
        let arg_of = |s: &str| -> Arg {
            match s.strip_prefix('?') {
                Some(var) => Arg::Var(var.to_string()),
                None => Arg::Const(s.to_string()),
            }
        };
        let atom = match name {
            "OpinionOf" | "PolarityIs" => {
                if args.len() != 2 {
                    return Err(err(format!("{name} needs 2 arguments")));
                }
                let term: Term = args[1].parse().map_err(|e| err(format!("{e}")))?;
                if name == "OpinionOf" {
                    AtomPattern::OpinionOf {
                        subject: arg_of(args[0]),
                        term,
                    }
                } else {
                    AtomPattern::PolarityIs {
                        subject: arg_of(args[0]),
                        term,
                    }
                }
            }
            "Speed" => {
                if args.len() != 2 {
                    return Err(err("Speed needs 2 arguments".into()));
                }
                AtomPattern::Speed {
                    subject: arg_of(args[0]),
                    term: args[1].parse().map_err(|e| err(format!("{e}")))?,
                }
            }
            "TrafficIsJammedBy" => {
                if args.len() != 2 {
                    return Err(err("TrafficIsJammedBy needs 2 arguments".into()));
                }
                AtomPattern::TrafficIsJammedBy {
                    subject: arg_of(args[0]),
                    cause: arg_of(args[1]),
                }
            }
            class => {
                if args.len() != 1 {
                    return Err(err(format!("class atom `{class}` needs 1 variable")));
                }
                match arg_of(args[0]) {
                    Arg::Var(var) => AtomPattern::Class {
                        class: class.to_string(),
                        var,
                    },
                    Arg::Const(_) => {
                        return Err(err(format!("class atom `{class}` needs a variable")));
                    }
                }
            }
        };
        atoms.push(atom);
    }
    Ok(atoms)
}
