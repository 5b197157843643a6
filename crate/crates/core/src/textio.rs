//! Loading wordlists and etexts, and the three views of prose the rest of
//! the crate works from: paragraph spans, word tokens and a letters-only
//! sequence.
//!
//! Only the ASCII letters `a-z`/`A-Z` count as letters. Everything else,
//! including accented characters, is treated as a separator. Offsets are
//! byte offsets into the original `&str`.

use std::fs;
use std::ops::Range;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::{LexError, Result};

/// Dictionary words in file order, lowercased.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WordList {
    pub words: Vec<String>,
    pub source_path: PathBuf,
    /// Non-blank lines rejected because they contained something other
    /// than a letter.
    pub dropped: usize,
}

impl WordList {
    /// Builds a wordlist from in-memory lines, applying the same
    /// normalization as [`load_wordlist`].
    pub fn from_lines<'a, I>(lines: I, source_path: impl Into<PathBuf>) -> Self
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut words = Vec::new();
        let mut dropped = 0;
        for line in lines {
            let entry = line.trim();
            if entry.is_empty() {
                continue;
            }
            if entry.bytes().all(|b| b.is_ascii_alphabetic()) {
                words.push(entry.to_ascii_lowercase());
            } else {
                dropped += 1;
            }
        }
        WordList {
            words,
            source_path: source_path.into(),
            dropped,
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }
}

/// Reads a one-word-per-line file (LF or CRLF).
pub fn load_wordlist(path: impl AsRef<Path>) -> Result<WordList> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| LexError::io(path, e))?;
    let text = String::from_utf8_lossy(&bytes);
    Ok(WordList::from_lines(text.lines(), path))
}

/// Reads a whole text file. Invalid UTF-8 sequences are replaced, which is
/// harmless since only ASCII letters matter downstream.
pub fn read_text(path: impl AsRef<Path>) -> Result<String> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| LexError::io(path, e))?;
    Ok(match String::from_utf8(bytes) {
        Ok(s) => s,
        Err(e) => String::from_utf8_lossy(e.as_bytes()).into_owned(),
    })
}

const START_MARKER: &str = "*** START OF";
const END_MARKER: &str = "*** END OF";

/// Result of [`strip_gutenberg`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stripped<'a> {
    pub body: &'a str,
    /// A start marker was found without a matching end marker.
    pub missing_end: bool,
}

/// Returns the text strictly between the Project Gutenberg `*** START OF`
/// and `*** END OF` marker lines. Markers are recognised by line prefix,
/// case-sensitively. Text without markers is returned unchanged.
pub fn strip_gutenberg(text: &str) -> Stripped<'_> {
    let mut body_start = None;
    let mut body_end = None;
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        if body_start.is_none() && line.starts_with(START_MARKER) {
            body_start = Some(offset + line.len());
        } else if line.starts_with(END_MARKER) {
            body_end = Some(offset);
            break;
        }
        offset += line.len();
    }
    let start = body_start.unwrap_or(0);
    let end = body_end.unwrap_or(text.len()).max(start);
    let mut body = &text[start..end];
    if body_end.is_some() {
        body = body.strip_suffix('\n').unwrap_or(body);
        body = body.strip_suffix('\r').unwrap_or(body);
    }
    Stripped {
        body,
        missing_end: body_start.is_some() && body_end.is_none(),
    }
}

/// Byte spans of paragraphs: maximal runs of non-blank lines. A span runs
/// from the first character of its first line to the end of its last line,
/// excluding the line terminator.
pub fn segment_paragraphs(text: &str) -> Vec<Range<usize>> {
    let mut spans = Vec::new();
    let mut current: Option<Range<usize>> = None;
    let mut offset = 0;
    for raw in text.split_inclusive('\n') {
        let line = raw.trim_end_matches('\n').trim_end_matches('\r');
        if line.trim().is_empty() {
            spans.extend(current.take());
        } else {
            let end = offset + line.len();
            match current.as_mut() {
                Some(span) => span.end = end,
                None => current = Some(offset..end),
            }
        }
        offset += raw.len();
    }
    spans.extend(current);
    spans
}

/// A lowercased word, the byte offset of its first character and the
/// offset just past its last one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Token {
    pub text: String,
    pub offset: usize,
    pub end: usize,
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

/// Splits text into lowercase words made of ASCII letters. An apostrophe
/// between two letters joins them and is then dropped, so `Scrooge's`
/// becomes `scrooges`; any other character ends the word.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut current: Option<Token> = None;
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if c.is_ascii_alphabetic() {
            let token = current.get_or_insert_with(|| Token {
                text: String::new(),
                offset: i,
                end: i,
            });
            token.text.push(c.to_ascii_lowercase());
            token.end = i + 1;
        } else if is_apostrophe(c) && current.is_some() && chars.peek().is_some_and(|&(_, n)| n.is_ascii_alphabetic()) {
            continue;
        } else {
            tokens.extend(current.take());
        }
    }
    tokens.extend(current);
    tokens
}

/// Letters `a-z` (case-folded) as codes 0-25, each with its byte offset.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LetterSequence {
    pub letters: Vec<u8>,
    pub offsets: Vec<usize>,
}

impl LetterSequence {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Index of the first letter at or after byte `offset`.
    pub fn index_at_or_after(&self, offset: usize) -> usize {
        self.offsets.partition_point(|&o| o < offset)
    }

    /// The letters rendered back as a lowercase string.
    pub fn to_letter_string(&self) -> String {
        self.letters.iter().map(|&l| letter_char(l)).collect()
    }
}

pub fn letter_code(c: char) -> Option<u8> {
    c.is_ascii_alphabetic().then(|| c.to_ascii_lowercase() as u8 - b'a')
}

pub fn letter_char(code: u8) -> char {
    (b'a' + code) as char
}

pub fn letters_of(text: &str) -> LetterSequence {
    let mut seq = LetterSequence::default();
    for (i, b) in text.bytes().enumerate() {
        if b.is_ascii_alphabetic() {
            seq.letters.push(b.to_ascii_lowercase() - b'a');
            seq.offsets.push(i);
        }
    }
    seq
}

/// Raw text together with its paragraph and token views.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub raw_text: String,
    pub paragraphs: Vec<Range<usize>>,
    pub tokens: Vec<Token>,
}

impl Corpus {
    pub fn new(raw_text: impl Into<String>) -> Self {
        let raw_text = raw_text.into();
        let paragraphs = segment_paragraphs(&raw_text);
        let tokens = tokenize(&raw_text);
        Corpus {
            raw_text,
            paragraphs,
            tokens,
        }
    }

    /// Loads an etext, dropping Gutenberg boilerplate when `strip` is set.
    /// The flag in the result reports a start marker without an end marker.
    pub fn load(path: impl AsRef<Path>, strip: bool) -> Result<(Self, bool)> {
        let text = read_text(path)?;
        if strip {
            let stripped = strip_gutenberg(&text);
            Ok((Corpus::new(stripped.body), stripped.missing_end))
        } else {
            Ok((Corpus::new(text), false))
        }
    }

    pub fn letters(&self) -> LetterSequence {
        letters_of(&self.raw_text)
    }

    pub fn paragraph_text(&self, index: usize) -> &str {
        &self.raw_text[self.paragraphs[index].clone()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn wordlist_normalizes_and_drops() {
        let wl = WordList::from_lines("Cat\r\ndog\nbee\n\ndon't\n".lines(), "mem");
        assert_eq!(wl.words, ["cat", "dog", "bee"]);
        assert_eq!(wl.dropped, 1);
    }

    #[test]
    fn wordlist_keeps_duplicates_and_order() {
        let wl = WordList::from_lines(["b", "a", "b"], "mem");
        assert_eq!(wl.words, ["b", "a", "b"]);
    }

    #[test]
    fn load_wordlist_reports_path_on_missing_file() {
        let err = load_wordlist("/no/such/wordlist.txt").unwrap_err();
        assert!(err.to_string().contains("/no/such/wordlist.txt"));
    }

    #[test]
    fn empty_wordlist_file_is_not_an_error() {
        let f = tempfile::NamedTempFile::new().unwrap();
        let wl = load_wordlist(f.path()).unwrap();
        assert!(wl.is_empty());
    }

    #[test]
    fn gutenberg_markers() {
        let s = strip_gutenberg("*** START OF X ***\nBODY\n*** END OF X ***");
        assert_eq!(s.body, "BODY");
        assert!(!s.missing_end);

        let s = strip_gutenberg("header\r\n*** START OF THE PROJECT GUTENBERG EBOOK A CHRISTMAS CAROL ***\r\nline one\r\nline two\r\n*** END OF THE PROJECT GUTENBERG EBOOK A CHRISTMAS CAROL ***\r\nlicense");
        assert_eq!(s.body, "line one\r\nline two");

        let plain = "no markers here\n";
        assert_eq!(strip_gutenberg(plain).body, plain);

        let s = strip_gutenberg("junk\n*** START OF Y ***\nrest\nof text");
        assert_eq!(s.body, "rest\nof text");
        assert!(s.missing_end);

        // case-sensitive prefix
        let lower = "*** start of x ***\nBODY";
        assert_eq!(strip_gutenberg(lower).body, lower);
    }

    #[test]
    fn paragraphs() {
        let t = "A\n\nB";
        let p = segment_paragraphs(t);
        assert_eq!(p.len(), 2);

        let t = "A\nB\n\n\nC";
        let p = segment_paragraphs(t);
        assert_eq!(p.iter().map(|r| &t[r.clone()]).collect::<Vec<_>>(), ["A\nB", "C"]);

        assert!(segment_paragraphs("").is_empty());
        assert!(segment_paragraphs("  \n\t\n").is_empty());

        let t = "one  \r\ntwo\r\n   \r\nthree\r\n";
        let p = segment_paragraphs(t);
        assert_eq!(
            p.iter().map(|r| &t[r.clone()]).collect::<Vec<_>>(),
            ["one  \r\ntwo", "three"]
        );
    }

    fn words(text: &str) -> Vec<String> {
        tokenize(text).into_iter().map(|t| t.text).collect()
    }

    #[test]
    fn tokenize_examples() {
        assert_eq!(words("Throw up!"), ["throw", "up"]);
        assert_eq!(words("Scrooge's"), ["scrooges"]);
        assert_eq!(words("Marley\u{2019}s ghost"), ["marleys", "ghost"]);
        assert_eq!(words("add up to one-fourth"), ["add", "up", "to", "one", "fourth"]);
        assert_eq!(words("'tis the dogs' day"), ["tis", "the", "dogs", "day"]);
        assert_eq!(words("café au lait"), ["caf", "au", "lait"]);
        let toks = tokenize("  Hello, World");
        assert_eq!(toks[0].offset, 2);
        assert_eq!(toks[1].offset, 9);
    }

    #[test]
    fn letters_examples() {
        let s = letters_of("Ab, c!");
        assert_eq!(s.letters, [0, 1, 2]);
        assert_eq!(s.offsets, [0, 1, 4]);
        assert!(letters_of("").is_empty());
    }

    #[test]
    fn shipped_window_quote_letter_count() {
        let text = include_str!("../data/carol_window.txt");
        assert_eq!(letters_of(text).len(), 702);
    }

    proptest! {
        #[test]
        fn letters_round_trip(s in "[a-zA-Z0-9 ,.'!\n\u{e9}\u{2019}-]{0,200}") {
            let seq = letters_of(&s);
            let expected: String = s
                .chars()
                .filter(|c| c.is_ascii_alphabetic())
                .map(|c| c.to_ascii_lowercase())
                .collect();
            prop_assert_eq!(seq.to_letter_string(), expected);
            prop_assert!(seq.offsets.windows(2).all(|w| w[0] < w[1]));
            for (&l, &o) in seq.letters.iter().zip(&seq.offsets) {
                prop_assert_eq!(letter_code(s[o..].chars().next().unwrap()), Some(l));
            }
        }

        #[test]
        fn tokens_are_clean(s in "[a-zA-Z ,.'!\n-]{0,200}") {
            let toks = tokenize(&s);
            let joined = toks.iter().map(|t| t.text.as_str()).collect::<Vec<_>>().join(" ");
            prop_assert!(joined.chars().all(|c| c == ' ' || c.is_ascii_lowercase()));
            for t in &toks {
                let first = s[t.offset..].chars().next().unwrap();
                prop_assert_eq!(first.to_ascii_lowercase(), t.text.chars().next().unwrap());
            }
        }

        #[test]
        fn paragraphs_reconstruct_content(
            paras in proptest::collection::vec(
                proptest::collection::vec("[a-z][a-z ]{0,10}", 1..4), 0..6),
            gaps in proptest::collection::vec("\n[ \t]{0,2}\n(\n)?", 6),
        ) {
            let mut text = String::new();
            for (i, lines) in paras.iter().enumerate() {
                if i > 0 {
                    text.push_str(&gaps[i]);
                }
                text.push_str(&lines.join("\n"));
            }
            let spans = segment_paragraphs(&text);
            prop_assert_eq!(spans.len(), paras.len());
            prop_assert!(spans.windows(2).all(|w| w[0].end < w[1].start));
            let from_spans: Vec<&str> = spans.iter().flat_map(|r| text[r.clone()].lines()).collect();
            let non_blank: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
            prop_assert_eq!(from_spans, non_blank);
        }
    }
}
