//! Boolean keyword queries for corpus retrieval.
//!
//! Grammar: a comma is a top-level OR, `AND` / `OR` keywords combine operands
//! (AND binds tighter), parentheses group, and adjacent keywords are an
//! implicit AND (queries like `slow traffic AND accident` mean
//! `(slow AND traffic) AND accident`). `radius:` and `centroid:` operands are
//! parsed and dropped: offline corpora carry no geodata.
//!
//! A keyword matches a document iff it occurs as a whole token,
//! case-insensitively, in the raw (pre-stemming) text.

use std::fmt;
use std::fs;
use std::path::Path;

use crate::corpus::Document;
use crate::text;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryAst {
    Keyword(String),
    And(Vec<QueryAst>),
    Or(Vec<QueryAst>),
}

#[derive(Debug, thiserror::Error)]
pub enum QueryError {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path} line {line}: {source}")]
    InFile {
        path: String,
        line: usize,
        #[source]
        source: Box<QueryError>,
    },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    And,
    Or,
    Comma,
    LParen,
    RParen,
    Geo,
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, QueryError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        match c {
            ',' => {
                tokens.push((i, Tok::Comma));
                i += 1;
            }
            '(' => {
                tokens.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                tokens.push((i, Tok::RParen));
                i += 1;
            }
            _ => {
                let start = i;
                while i < chars.len()
                    && !chars[i].is_whitespace()
                    && !matches!(chars[i], ',' | '(' | ')')
                {
                    i += 1;
                }
                let mut word: String = chars[start..i].iter().collect();
                // Geo operands may carry a parenthesized argument:
                // centroid:(40.7,-74.0). Swallow it whole.
                let lower = word.to_lowercase();
                if (lower.starts_with("radius:") || lower.starts_with("centroid:"))
                    && i < chars.len()
                    && chars[i] == '('
                {
                    while i < chars.len() && chars[i] != ')' {
                        i += 1;
                    }
                    if i == chars.len() {
                        return Err(QueryError::Syntax {
                            position: start,
                            message: "unterminated geo operand".into(),
                        });
                    }
                    i += 1;
                    word = chars[start..i].iter().collect();
                }
                let lower = word.to_lowercase();
                let tok = if lower == "and" {
                    Tok::And
                } else if lower == "or" {
                    Tok::Or
                } else if lower.starts_with("radius:") || lower.starts_with("centroid:") {
                    Tok::Geo
                } else {
                    Tok::Word(word)
                };
                tokens.push((start, tok));
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    input_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.input_len)
    }

    fn bump(&mut self) -> Option<Tok> {
        let tok = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        tok
    }

    fn error(&self, message: impl Into<String>) -> QueryError {
        QueryError::Syntax {
            position: self.position(),
            message: message.into(),
        }
    }

    // query := or_expr (',' or_expr)*
    fn query(&mut self) -> Result<QueryAst, QueryError> {
        let mut branches = vec![self.or_expr()?];
        while self.peek() == Some(&Tok::Comma) {
            self.bump();
            branches.push(self.or_expr()?);
        }
        Ok(flatten_or(branches))
    }

    // or_expr := and_expr (OR and_expr)*
    fn or_expr(&mut self) -> Result<QueryAst, QueryError> {
        let mut branches = vec![self.and_expr()?];
        while self.peek() == Some(&Tok::Or) {
            self.bump();
            branches.push(self.and_expr()?);
        }
        Ok(flatten_or(branches))
    }

    // and_expr := primary (AND? primary)*   (adjacency is implicit AND)
    fn and_expr(&mut self) -> Result<QueryAst, QueryError> {
        let mut operands = vec![self.primary()?];
        loop {
            match self.peek() {
                Some(Tok::And) => {
                    self.bump();
                    operands.push(self.primary()?);
                }
                Some(Tok::Word(_)) | Some(Tok::LParen) | Some(Tok::Geo) => {
                    operands.push(self.primary()?);
                }
                _ => break,
            }
        }
        operands.retain(|ast| !is_geo_marker(ast));
        match operands.len() {
            0 => Err(self.error("operand consists only of geo terms")),
            1 => Ok(operands.into_iter().next().unwrap()),
            _ => Ok(QueryAst::And(operands)),
        }
    }

    fn primary(&mut self) -> Result<QueryAst, QueryError> {
        match self.bump() {
            Some(Tok::Word(word)) => {
                let trimmed = word.trim();
                if trimmed.is_empty() {
                    Err(self.error("empty keyword"))
                } else {
                    Ok(QueryAst::Keyword(trimmed.to_lowercase()))
                }
            }
            Some(Tok::Geo) => Ok(GEO_MARKER.clone()),
            Some(Tok::LParen) => {
                let inner = self.query()?;
                if self.peek() == Some(&Tok::RParen) {
                    self.bump();
                    Ok(inner)
                } else {
                    Err(self.error("expected `)`"))
                }
            }
            Some(Tok::RParen) => Err(QueryError::Syntax {
                position: self.tokens[self.pos - 1].0,
                message: "unbalanced `)`".into(),
            }),
            Some(Tok::And) | Some(Tok::Or) | Some(Tok::Comma) => Err(QueryError::Syntax {
                position: self.tokens[self.pos - 1].0,
                message: "dangling operator".into(),
            }),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

// Ignored geo operands parse to a marker that is filtered out of And lists.
static GEO_MARKER: QueryAst = QueryAst::Keyword(String::new());

fn is_geo_marker(ast: &QueryAst) -> bool {
    matches!(ast, QueryAst::Keyword(k) if k.is_empty())
}

fn flatten_or(mut branches: Vec<QueryAst>) -> QueryAst {
    if branches.len() == 1 {
        branches.pop().unwrap()
    } else {
        QueryAst::Or(branches)
    }
}

/// Parses one query line into an AST.
pub fn parse_query(input: &str) -> Result<QueryAst, QueryError> {
    if input.trim().is_empty() {
        return Err(QueryError::Syntax {
            position: 0,
            message: "empty query".into(),
        });
    }
    let tokens = lex(input)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        input_len: input.len(),
    };
    let ast = parser.query()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(ast)
}

/// Loads a query file: one query per line, `#` comments.
pub fn load_queries(path: &Path) -> Result<Vec<QueryAst>, QueryError> {
    let input = fs::read_to_string(path).map_err(|source| QueryError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut queries = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let ast = parse_query(line).map_err(|source| QueryError::InFile {
            path: path.display().to_string(),
            line: idx + 1,
            source: Box::new(source),
        })?;
        queries.push(ast);
    }
    Ok(queries)
}

/// Evaluates a query against a document's raw text.
pub fn match_query(query: &QueryAst, doc: &Document) -> bool {
    match_text(query, &doc.text)
}

/// Whole-token, case-insensitive boolean evaluation.
pub fn match_text(query: &QueryAst, raw_text: &str) -> bool {
    let tokens: std::collections::HashSet<String> =
        text::tokenize_lower(raw_text).into_iter().collect();
    eval(query, &tokens)
}

fn eval(query: &QueryAst, tokens: &std::collections::HashSet<String>) -> bool {
    match query {
        QueryAst::Keyword(k) => tokens.contains(k),
        QueryAst::And(children) => children.iter().all(|c| eval(c, tokens)),
        QueryAst::Or(children) => children.iter().any(|c| eval(c, tokens)),
    }
}

impl fmt::Display for QueryAst {
    /// Canonical printer: `parse(print(q))` reproduces the AST.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryAst::Keyword(k) => f.write_str(k),
            QueryAst::And(children) => {
                for (i, child) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" AND ")?;
                    }
                    if matches!(child, QueryAst::Or(_)) {
                        write!(f, "({child})")?;
                    } else {
                        write!(f, "{child}")?;
                    }
                }
                Ok(())
            }
            QueryAst::Or(children) => {
                for (i, child) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" OR ")?;
                    }
                    if matches!(child, QueryAst::Or(_)) {
                        write!(f, "({child})")?;
                    } else {
                        write!(f, "{child}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Source;
    use proptest::prelude::*;

    fn doc(text: &str) -> Document {
        Document {
            id: "d".into(),
            text: text.into(),
            source: Source::Tweet,
            city: "x".into(),
            gold_labels: None,
        }
    }

    #[test]
    fn parses_keywords_with_precedence() {
        let ast = parse_query("accident AND (car OR vehicle)").unwrap();
        assert_eq!(
            ast,
            QueryAst::And(vec![
                QueryAst::Keyword("accident".into()),
                QueryAst::Or(vec![
                    QueryAst::Keyword("car".into()),
                    QueryAst::Keyword("vehicle".into()),
                ]),
            ])
        );
    }

    #[test]
    fn and_binds_tighter_than_or() {
        let ast = parse_query("a AND b OR c").unwrap();
        assert_eq!(
            ast,
            QueryAst::Or(vec![
                QueryAst::And(vec![
                    QueryAst::Keyword("a".into()),
                    QueryAst::Keyword("b".into()),
                ]),
                QueryAst::Keyword("c".into()),
            ])
        );
    }

    #[test]
    fn comma_is_top_level_or() {
        let ast = parse_query("traffic AND accident, car AND collision").unwrap();
        match ast {
            QueryAst::Or(branches) => assert_eq!(branches.len(), 2),
            other => panic!("expected Or, got {other:?}"),
        }
    }

    #[test]
    fn single_keyword_query() {
        assert_eq!(
            parse_query("traffic").unwrap(),
            QueryAst::Keyword("traffic".into())
        );
    }

    #[test]
    fn adjacent_words_are_implicit_and() {
        let ast = parse_query("slow traffic AND accident").unwrap();
        assert_eq!(
            ast,
            QueryAst::And(vec![
                QueryAst::Keyword("slow".into()),
                QueryAst::Keyword("traffic".into()),
                QueryAst::Keyword("accident".into()),
            ])
        );
    }

    #[test]
    fn dangling_operator_is_an_error_at_end_of_input() {
        let err = parse_query("car AND").unwrap_err();
        match err {
            QueryError::Syntax { position, .. } => assert_eq!(position, 7),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unbalanced_parens_are_errors() {
        assert!(parse_query("(car OR bus").is_err());
        assert!(parse_query("car OR bus)").is_err());
    }

    #[test]
    fn geo_operands_parse_and_are_ignored() {
        let ast = parse_query("traffic AND radius:10km").unwrap();
        assert_eq!(ast, QueryAst::Keyword("traffic".into()));
        let ast = parse_query("centroid:(40.7,-74.0) AND accident").unwrap();
        assert_eq!(ast, QueryAst::Keyword("accident".into()));
        assert!(parse_query("radius:10km").is_err());
    }

    #[test]
    fn matching_is_whole_token_case_insensitive() {
        let q = parse_query("accident AND (car OR vehicle)").unwrap();
        assert!(match_query(&q, &doc("Car accident on highway 5")));
        assert!(!match_query(&q, &doc("sunny day in the park")));
        let car = parse_query("car").unwrap();
        assert!(!match_query(&car, &doc("cars everywhere")));
    }

    fn ast_strategy() -> impl Strategy<Value = QueryAst> {
        let keyword = prop::sample::select(vec!["road", "car", "jam", "bus", "park"])
            .prop_map(|k| QueryAst::Keyword(k.to_string()));
        keyword.prop_recursive(3, 24, 4, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 2..4).prop_map(QueryAst::And),
                prop::collection::vec(inner, 2..4).prop_map(QueryAst::Or),
            ]
        })
    }

    fn text_strategy() -> impl Strategy<Value = String> {
        prop::collection::vec(
            prop::sample::select(vec!["road", "car", "jam", "bus", "park", "sun"]),
            0..6,
        )
        .prop_map(|words| words.join(" "))
    }

    proptest! {
        #[test]
        fn boolean_laws_hold(a in ast_strategy(), b in ast_strategy(), text in text_strategy()) {
            let d = doc(&text);
            let or = QueryAst::Or(vec![a.clone(), b.clone()]);
            let and = QueryAst::And(vec![a.clone(), b.clone()]);
            prop_assert_eq!(match_query(&or, &d), match_query(&a, &d) || match_query(&b, &d));
            prop_assert_eq!(match_query(&and, &d), match_query(&a, &d) && match_query(&b, &d));
        }

        #[test]
        fn printer_round_trips(ast in ast_strategy()) {
            let printed = ast.to_string();
            let reparsed = parse_query(&printed).unwrap();
            prop_assert_eq!(reparsed.to_string(), printed);
        }
    }
}
