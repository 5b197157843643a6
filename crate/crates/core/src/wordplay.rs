//! Crossword, hangman and substring queries over a [`WordList`].
//!
//! A [`LetterPattern`] compiles to one 26-bit mask of allowed letters per
//! position; a word matches when it has the right length and every letter
//! falls inside its position's mask. Results keep wordlist order.

use std::collections::BTreeMap;
use std::fmt;

use crate::textio::{letter_char, WordList};
use crate::{LexError, Result};

const ALL_LETTERS: u32 = (1 << 26) - 1;

/// A set of letters `a-z` stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct LetterSet(u32);

impl LetterSet {
    pub const EMPTY: LetterSet = LetterSet(0);
    pub const ALL: LetterSet = LetterSet(ALL_LETTERS);

    /// Parses letters such as `"taoin"`. Case is ignored; anything that is
    /// not an ASCII letter is an error.
    pub fn parse(letters: &str) -> Result<Self> {
        let mut set = LetterSet::EMPTY;
        for c in letters.chars() {
            let code = letter_index(c)?;
            set.insert(code);
        }
        Ok(set)
    }

    pub fn insert(&mut self, code: u8) {
        self.0 |= 1 << code;
    }

    pub fn contains(self, code: u8) -> bool {
        self.0 & (1 << code) != 0
    }

    pub fn union(self, other: LetterSet) -> LetterSet {
        LetterSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: LetterSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn complement(self) -> LetterSet {
        LetterSet(!self.0 & ALL_LETTERS)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = u8> {
        (0..26u8).filter(move |&c| self.contains(c))
    }
}

impl FromIterator<u8> for LetterSet {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        let mut set = LetterSet::EMPTY;
        for c in iter {
            set.insert(c);
        }
        set
    }
}

impl fmt::Debug for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(letter_char).collect();
        write!(f, "{{{s}}}")
    }
}

fn letter_index(c: char) -> Result<u8> {
    if c.is_ascii_alphabetic() {
        Ok(c.to_ascii_lowercase() as u8 - b'a')
    } else {
        Err(LexError::arg(format!("{c:?} is not a letter a-z")))
    }
}

/// Positional constraints on a word of known length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterPattern {
    length: usize,
    fixed: BTreeMap<usize, u8>,
    excluded: LetterSet,
}

impl LetterPattern {
    /// `fixed` maps 0-based positions to letters; `excluded` letters are
    /// forbidden at every position not in `fixed`.
    pub fn new(length: usize, fixed: &[(usize, char)], excluded: LetterSet) -> Result<Self> {
        if length == 0 {
            return Err(LexError::arg("pattern length must be positive"));
        }
        let mut map = BTreeMap::new();
        for &(pos, c) in fixed {
            if pos >= length {
                return Err(LexError::arg(format!(
                    "fixed position {pos} is outside a word of length {length}"
                )));
            }
            let code = letter_index(c)?;
            if let Some(prev) = map.insert(pos, code) {
                if prev != code {
                    return Err(LexError::arg(format!(
                        "position {pos} fixed to both {:?} and {c:?}",
                        letter_char(prev)
                    )));
                }
            }
        }
        Ok(LetterPattern {
            length,
            fixed: map,
            excluded,
        })
    }

    /// Hangman pattern: revealed letters are added to `missed`, because a
    /// revealed letter shows at every position where it occurs.
    pub fn hangman(length: usize, fixed: &[(usize, char)], missed: LetterSet) -> Result<Self> {
        let mut pattern = Self::new(length, fixed, missed)?;
        pattern.excluded = pattern.excluded.union(pattern.revealed());
        Ok(pattern)
    }

    /// Parses crossword notation: letters for known cells, `.` for unknown.
    pub fn parse_crossword(pattern: &str) -> Result<Self> {
        let fixed = parse_cells(pattern, '.')?;
        Self::new(pattern.chars().count(), &fixed, LetterSet::EMPTY)
    }

    /// Parses hangman notation: letters for revealed cells, `_` for hidden.
    pub fn parse_hangman(pattern: &str, missed: &str) -> Result<Self> {
        let fixed = parse_cells(pattern, '_')?;
        Self::hangman(pattern.chars().count(), &fixed, LetterSet::parse(missed)?)
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn fixed(&self) -> impl Iterator<Item = (usize, char)> + '_ {
        self.fixed.iter().map(|(&p, &c)| (p, letter_char(c)))
    }

    pub fn excluded(&self) -> LetterSet {
        self.excluded
    }

    pub fn revealed(&self) -> LetterSet {
        self.fixed.values().copied().collect()
    }

    /// Checks that every revealed letter is also excluded elsewhere.
    pub fn check_hangman(&self) -> Result<()> {
        match self.revealed().iter().find(|&c| !self.excluded.contains(c)) {
            None => Ok(()),
            Some(c) => Err(LexError::arg(format!(
                "revealed letter {:?} must also be excluded from the hidden positions",
                letter_char(c)
            ))),
        }
    }

    fn compile(&self) -> Vec<u32> {
        let open = self.excluded.complement().0;
        (0..self.length)
            .map(|pos| self.fixed.get(&pos).map_or(open, |&c| 1 << c))
            .collect()
    }
}

fn parse_cells(pattern: &str, unknown: char) -> Result<Vec<(usize, char)>> {
    let mut fixed = Vec::new();
    for (pos, c) in pattern.chars().enumerate() {
        if c == unknown {
            continue;
        }
        if !c.is_ascii_alphabetic() {
            return Err(LexError::arg(format!(
                "pattern {pattern:?}: expected a letter or {unknown:?} at position {pos}, found {c:?}"
            )));
        }
        fixed.push((pos, c));
    }
    Ok(fixed)
}

struct CompiledPattern {
    masks: Vec<u32>,
}

impl CompiledPattern {
    fn matches(&self, word: &str) -> bool {
        word.len() == self.masks.len()
            && word
                .bytes()
                .zip(&self.masks)
                .all(|(b, &mask)| b.is_ascii_lowercase() && mask & (1 << (b - b'a')) != 0)
    }
}

fn search<'w>(wordlist: &'w WordList, pattern: &LetterPattern) -> Vec<&'w str> {
    let compiled = CompiledPattern {
        masks: pattern.compile(),
    };
    wordlist.iter().filter(|w| compiled.matches(w)).collect()
}

/// Words of `length` letters agreeing with every fixed cell.
pub fn crossword_search<'w>(wordlist: &'w WordList, length: usize, fixed: &[(usize, char)]) -> Result<Vec<&'w str>> {
    let pattern = LetterPattern::new(length, fixed, LetterSet::EMPTY)?;
    Ok(search(wordlist, &pattern))
}

/// Words matching the fixed cells whose hidden cells avoid every excluded
/// letter. The pattern must satisfy [`LetterPattern::check_hangman`].
pub fn hangman_search<'w>(wordlist: &'w WordList, pattern: &LetterPattern) -> Result<Vec<&'w str>> {
    pattern.check_hangman()?;
    Ok(search(wordlist, pattern))
}

/// Words containing `needle` as a contiguous substring.
pub fn substring_search<'w>(wordlist: &'w WordList, needle: &str) -> Result<Vec<&'w str>> {
    if needle.is_empty() {
        return Err(LexError::arg("substring must not be empty"));
    }
    if let Some(c) = needle.chars().find(|c| !c.is_ascii_alphabetic()) {
        return Err(LexError::arg(format!("substring contains non-letter {c:?}")));
    }
    let needle = needle.to_ascii_lowercase();
    Ok(wordlist.iter().filter(|w| w.contains(&needle)).collect())
}
