//! Line-oriented poset text format.
//!
//! ```text
//! # the diamond
//! elem z a b w
//! z < a
//! z < b
//! a < w
//! b < w
//! ```
//!
//! `elem` lines declare elements (order matters: it is the tie-break order
//! for linear extensions). `x < y` lines declare order pairs; pairs implied
//! by transitivity are allowed. `#` starts a comment.

use std::fmt::Write as _;

use thiserror::Error;

use crate::poset::{Poset, PosetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based line number.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected `elem <labels>` or `<label> < <label>`, found `{0}`")]
    Syntax(String),
    #[error("invalid label `{0}`")]
    InvalidLabel(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

fn valid_label(label: &str) -> bool {
    !label.is_empty() && !label.contains(|c: char| c.is_whitespace() || c == '<' || c == '#')
}

/// Parses the poset text format.
pub fn parse_poset(text: &str) -> Result<Poset, ParseError> {
    let mut labels: Vec<(String, usize)> = Vec::new();
    let mut pairs: Vec<(String, String, usize)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        if content.starts_with("elem") && tokens.next() == Some("elem") {
            for label in tokens {
                if !valid_label(label) {
                    return Err(ParseError {
                        line,
                        kind: ParseErrorKind::InvalidLabel(label.to_owned()),
                    });
                }
                if labels.iter().any(|(l, _)| l == label) {
                    return Err(ParseError {
                        line,
                        kind: PosetError::DuplicateLabel(label.to_owned()).into(),
                    });
                }
                labels.push((label.to_owned(), line));
            }
            continue;
        }
        let syntax = || ParseError {
            line,
            kind: ParseErrorKind::Syntax(content.to_owned()),
        };
        let (lhs, rhs) = content.split_once('<').ok_or_else(syntax)?;
        let (lhs, rhs) = (lhs.trim(), rhs.trim());
        if !valid_label(lhs) || !valid_label(rhs) {
            return Err(syntax());
        }
        for label in [lhs, rhs] {
            if !labels.iter().any(|(l, _)| l == label) {
                return Err(ParseError {
                    line,
                    kind: PosetError::UnknownLabel(label.to_owned()).into(),
                });
            }
        }
        pairs.push((lhs.to_owned(), rhs.to_owned(), line));
    }

    let names: Vec<&str> = labels.iter().map(|(l, _)| l.as_str()).collect();
    let edges: Vec<(&str, &str)> = pairs.iter().map(|(a, b, _)| (a.as_str(), b.as_str())).collect();
    Poset::from_covers(&names, &edges).map_err(|err| {
        let line = match &err {
            // report the first pair line with both ends on the cycle
            PosetError::Cycle(stuck) => pairs
                .iter()
                .find(|(a, b, _)| stuck.contains(a) && stuck.contains(b))
                .map_or(0, |p| p.2),
            PosetError::TooManyElements(_) => labels.last().map_or(0, |l| l.1),
            _ => 0,
        };
        ParseError {
            line,
            kind: err.into(),
        }
    })
}

/// Renders a poset in the text format, one cover pair per line.
pub fn format_poset(poset: &Poset) -> String {
    let mut out = String::from("elem");
    for label in poset.labels() {
        out.push(' ');
        out.push_str(label);
    }
    out.push('\n');
    for (x, y) in poset.cover_pairs() {
        let _ = writeln!(out, "{} < {}", poset.label(x), poset.label(y));
    }
    out
}
