//! Fuzzy rule file parsing.
//!
//! Line syntax:
//!
//! ```text
//! rule <id>: IF <slot> IS <term> [MU <degree>] [AND ...] THEN <term> [IP <value>]
//! ```
//!
//! A slot of `*` matches any opinion word; any other name matches the word
//! with that stem or surface. `MU` pins the slot's membership degree instead
//! of evaluating the bank. When `IP` is omitted, the consequent term's
//! representative point is used.

use crate::term::Term;

use super::FuzzyError;

#[derive(Debug, Clone, PartialEq)]
pub enum SlotPattern {
    /// Matches every opinion word in the pair.
    Any,
    /// Matches the opinion word with this stem (or surface form).
    Word(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RuleSlot {
    pub slot: SlotPattern,
    pub term: Term,
    pub mu_override: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyRule {
    pub id: String,
    pub antecedent: Vec<RuleSlot>,
    pub consequent: Term,
    pub ip: f64,
}

pub fn parse_rules(input: &str) -> Result<Vec<FuzzyRule>, FuzzyError> {
    let mut rules = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        rules.push(parse_rule_line(line, line_no)?);
    }
    Ok(rules)
}

fn parse_rule_line(line: &str, line_no: usize) -> Result<FuzzyRule, FuzzyError> {
    let err = |message: String| FuzzyError::RuleParse {
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
    if id.is_empty() {
        return Err(err("empty rule id".into()));
    }

    let rest = rest.trim();
    let rest = rest
        .strip_prefix("IF ")
        .ok_or_else(|| err("expected `IF` after rule id".into()))?;
    let (antecedent_text, consequent_text) = rest
        .split_once(" THEN ")
        .ok_or_else(|| err("expected `THEN`".into()))?;

    let mut antecedent = Vec::new();
    for clause in antecedent_text.split(" AND ") {
        let words: Vec<&str> = clause.split_whitespace().collect();
        if words.len() < 3 || words[1] != "IS" {
            return Err(err(format!(
                "bad antecedent `{clause}`; expected `<slot> IS <term>`"
            )));
        }
        let slot = if words[0] == "*" {
            SlotPattern::Any
        } else {
            SlotPattern::Word(words[0].to_lowercase())
        };
        let term: Term = words[2].parse().map_err(|e| err(format!("{e}")))?;
        let mu_override = match words.get(3) {
            None => None,
            Some(&"MU") => Some(
                words
                    .get(4)
                    .ok_or_else(|| err("MU needs a value".into()))?
                    .parse::<f64>()
                    .map_err(|e| err(format!("bad MU value: {e}")))?,
            ),
            Some(other) => return Err(err(format!("unexpected token `{other}`"))),
        };
        antecedent.push(RuleSlot {
            slot,
            term,
            mu_override,
        });
    }
    if antecedent.is_empty() {
        return Err(err("empty antecedent".into()));
    }

    let words: Vec<&str> = consequent_text.split_whitespace().collect();
    if words.is_empty() {
        return Err(err("missing consequent term".into()));
    }
    let consequent: Term = words[0].parse().map_err(|e| err(format!("{e}")))?;
    let ip = match words.get(1) {
        None => consequent.representative(),
        Some(&"IP") => {
            let value: f64 = words
                .get(2)
                .ok_or_else(|| err("IP needs a value".into()))?
                .parse()
                .map_err(|e| err(format!("bad IP value: {e}")))?;
            if !(0.0..=1.0).contains(&value) {
                return Err(err(format!("IP {value} is outside [0, 1]")));
            }
            value
        }
        Some(other) => return Err(err(format!("unexpected token `{other}`"))),
    };

    Ok(FuzzyRule {
        id,
        antecedent,
        consequent,
        ip,
    })
}
