//! Keyword-in-context listings.

use std::str::FromStr;

use serde::Serialize;

use crate::textio::{tokenize, Corpus};
use crate::{LexError, Result};

pub const DEFAULT_WIDTH: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConcordanceLine {
    pub left_context: String,
    pub keyword: String,
    pub right_context: String,
    /// Empty at the start of the text.
    pub left_neighbor: String,
    /// Empty at the end of the text.
    pub right_neighbor: String,
    pub source_offset: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SortKey {
    #[default]
    LeftWord,
    RightWord,
    Position,
}

impl FromStr for SortKey {
    type Err = LexError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" | "left-word" => Ok(SortKey::LeftWord),
            "right" | "right-word" => Ok(SortKey::RightWord),
            "position" | "pos" => Ok(SortKey::Position),
            other => Err(LexError::arg(format!(
                "unknown sort key {other:?} (expected left, right or position)"
            ))),
        }
    }
}

fn flatten(s: &str) -> String {
    s.chars().map(|c| if c.is_whitespace() { ' ' } else { c }).collect()
}

fn tail_chars(s: &str, n: usize) -> &str {
    if n == 0 {
        return "";
    }
    match s.char_indices().rev().nth(n - 1) {
        Some((i, _)) => &s[i..],
        None => s,
    }
}

fn head_chars(s: &str, n: usize) -> &str {
    match s.char_indices().nth(n) {
        Some((i, _)) => &s[..i],
        None => s,
    }
}

/// One line per occurrence of `target`, with up to `width` characters of
/// context on each side (whitespace flattened to spaces). Ties under the
/// chosen sort key fall back to text position.
pub fn concordance(corpus: &Corpus, target: &str, width: usize, sort: SortKey) -> Result<Vec<ConcordanceLine>> {
    if width == 0 {
        return Err(LexError::arg("context width must be at least 1"));
    }
    let target_tokens = tokenize(target);
    let target = match target_tokens.as_slice() {
        [t] if t.offset == 0 && t.end == target.len() => t.text.as_str(),
        _ => return Err(LexError::arg(format!("{target:?} is not a single word token"))),
    };

    let text = &corpus.raw_text;
    let tokens = &corpus.tokens;
    let mut lines: Vec<ConcordanceLine> = tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| t.text == target)
        .map(|(i, t)| {
            let neighbor = |j: Option<usize>| {
                j.and_then(|j| tokens.get(j))
                    .map(|t| t.text.clone())
                    .unwrap_or_default()
            };
            ConcordanceLine {
                left_context: flatten(tail_chars(&text[..t.offset], width)),
                keyword: text[t.offset..t.end].to_string(),
                right_context: flatten(head_chars(&text[t.end..], width)),
                left_neighbor: neighbor(i.checked_sub(1)),
                right_neighbor: neighbor(Some(i + 1)),
                source_offset: t.offset,
            }
        })
        .collect();

    match sort {
        SortKey::LeftWord => {
            lines.sort_by(|a, b| (&a.left_neighbor, a.source_offset).cmp(&(&b.left_neighbor, b.source_offset)))
        }
        SortKey::RightWord => {
            lines.sort_by(|a, b| (&a.right_neighbor, a.source_offset).cmp(&(&b.right_neighbor, b.source_offset)))
        }
        SortKey::Position => lines.sort_by_key(|l| l.source_offset),
    }
    Ok(lines)
}
