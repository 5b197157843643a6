//! Pangrammatic windows: stretches of text that contain every letter.
//!
//! A window starts at some letter and ends as soon as the 26th distinct
//! letter turns up, so the final letter never occurs earlier in the window.
//! [`sample_windows`] draws such windows from a corpus and
//! [`simulate_iid`] draws the same statistic from independent letters with
//! the corpus's frequencies, for comparison via [`histogram`].

use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::alphastat::{replicate_rng, simulate_full_collection, LetterFrequencyTable, ALPHABET};
use crate::textio::{letter_char, letter_code, Corpus, LetterSequence};
use crate::{LexError, Result};

const ALL_SEEN: u32 = (1 << ALPHABET) - 1;

pub const DEFAULT_BIN_WIDTH: u64 = 250;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PangramWindow {
    pub start_letter_index: usize,
    /// Letters in the window, or letters scanned before the text ran out
    /// when the window is incomplete.
    pub length: usize,
    /// Letter whose first appearance completed the window.
    pub last_letter: Option<char>,
    pub complete: bool,
}

/// Scans forward from letter `start` until all 26 letters have been seen.
pub fn scan_window(seq: &LetterSequence, start: usize) -> Result<PangramWindow> {
    if start >= seq.len() {
        return Err(LexError::arg(format!(
            "start {start} is outside a sequence of {} letters",
            seq.len()
        )));
    }
    let mut seen = 0u32;
    for (i, &l) in seq.letters[start..].iter().enumerate() {
        seen |= 1 << l;
        if seen == ALL_SEEN {
            return Ok(PangramWindow {
                start_letter_index: start,
                length: i + 1,
                last_letter: Some(letter_char(l)),
                complete: true,
            });
        }
    }
    Ok(PangramWindow {
        start_letter_index: start,
        length: seq.len() - start,
        last_letter: None,
        complete: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleSource {
    Corpus,
    Iid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthSample {
    pub lengths: Vec<u64>,
    pub source: SampleSource,
    pub seed: u64,
}

impl LengthSample {
    pub fn mean(&self) -> f64 {
        self.lengths.iter().sum::<u64>() as f64 / self.lengths.len() as f64
    }

    /// Fraction of lengths strictly greater than `threshold`.
    pub fn fraction_above(&self, threshold: u64) -> f64 {
        self.lengths.iter().filter(|&&l| l > threshold).count() as f64 / self.lengths.len() as f64
    }

    /// One length per line.
    pub fn to_csv(&self) -> String {
        self.lengths.iter().map(|l| format!("{l}\n")).collect()
    }

    /// Reads one positive integer per line; blank lines are skipped.
    pub fn parse_csv(text: &str, source: SampleSource, path: &std::path::Path) -> Result<Self> {
        let mut lengths = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let value = line.split(',').next().unwrap_or(line).trim();
            let len = value.parse().map_err(|_| {
                LexError::format(path, i + 1, format!("{value:?} is not a non-negative integer length"))
            })?;
            lengths.push(len);
        }
        Ok(LengthSample {
            lengths,
            source,
            seed: 0,
        })
    }
}

/// Where corpus windows may begin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StartMode {
    /// The first letter of a uniformly chosen paragraph.
    #[default]
    Paragraph,
    /// A uniformly chosen letter anywhere in the text.
    Letter,
}

impl FromStr for StartMode {
    type Err = LexError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paragraph" => Ok(StartMode::Paragraph),
            "letter" => Ok(StartMode::Letter),
            _ => Err(LexError::arg(format!("unknown start mode {s:?} (paragraph or letter)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindowSample {
    pub sample: LengthSample,
    /// Attempts that ran off the end of the text and were redrawn.
    pub discarded: u64,
}

/// Draws `n` complete windows from `corpus`. Each replicate keeps picking a
/// start (with replacement) until the scan completes before the end of the
/// text; no wraparound.
pub fn sample_windows(corpus: &Corpus, n: usize, seed: u64, mode: StartMode) -> Result<WindowSample> {
    if n == 0 {
        return Err(LexError::arg("number of windows must be at least 1"));
    }
    let seq = corpus.letters();
    let starts: Vec<usize> = match mode {
        StartMode::Paragraph => corpus
            .paragraphs
            .iter()
            .filter_map(|p| {
                let i = seq.index_at_or_after(p.start);
                (i < seq.len() && seq.offsets[i] < p.end).then_some(i)
            })
            .collect(),
        StartMode::Letter => (0..seq.len()).collect(),
    };
    if starts.is_empty() {
        return Err(LexError::arg("corpus has no paragraph containing a letter"));
    }

    // A start completes iff every letter still occurs at or after it, i.e.
    // it is no later than the earliest of the 26 last occurrences.
    let mut last = [None::<usize>; ALPHABET];
    for (i, &l) in seq.letters.iter().enumerate() {
        last[l as usize] = Some(i);
    }
    let latest_ok = match last.iter().copied().collect::<Option<Vec<_>>>() {
        Some(v) => v.into_iter().min().expect("26 letters"),
        None => {
            let missing: String = (0..ALPHABET as u8)
                .filter(|&l| last[l as usize].is_none())
                .map(letter_char)
                .collect();
            return Err(LexError::arg(format!(
                "corpus never uses the letter(s) {missing:?}, so no window can complete"
            )));
        }
    };
    if starts.iter().all(|&s| s > latest_ok) {
        return Err(LexError::arg("no start position yields a complete window"));
    }

    let max_attempts = (n as u64).saturating_mul(100);
    let results: Vec<Result<(u64, u64)>> = (0..n as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = replicate_rng(seed, r);
            let mut failures = 0u64;
            loop {
                let start = starts[rng.random_range(0..starts.len())];
                let w = scan_window(&seq, start)?;
                if w.complete {
                    return Ok((w.length as u64, failures));
                }
                failures += 1;
                if failures >= max_attempts {
                    return Err(LexError::arg(format!(
                        "{failures} consecutive scans ran off the end of the text"
                    )));
                }
            }
        })
        .collect();

    let mut lengths = Vec::with_capacity(n);
    let mut discarded = 0;
    for r in results {
        let (len, fails) = r?;
        lengths.push(len);
        discarded += fails;
    }
    Ok(WindowSample {
        sample: LengthSample {
            lengths,
            source: SampleSource::Corpus,
            seed,
        },
        discarded,
    })
}

/// Lengths of `n` pangrams built from independent letters drawn with the
/// table's proportions.
pub fn simulate_iid(freqs: &LetterFrequencyTable, n: usize, seed: u64) -> Result<LengthSample> {
    if let Some(i) = freqs.counts.iter().position(|&c| c == 0) {
        return Err(LexError::arg(format!(
            "letter {:?} has zero frequency; an i.i.d. pangram would never finish",
            letter_char(i as u8)
        )));
    }
    let p = freqs.probability_vector()?;
    Ok(LengthSample {
        lengths: simulate_full_collection(&p, n, seed)?,
        source: SampleSource::Iid,
        seed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Histogram {
    pub bin_width: u64,
    /// `(lower_bound, count)` for every bin from 0 to the one holding the
    /// maximum.
    pub bins: Vec<(u64, u64)>,
}

impl Histogram {
    /// `bin_lower,count` lines.
    pub fn to_csv(&self) -> String {
        self.bins.iter().map(|(lo, c)| format!("{lo},{c}\n")).collect()
    }

    /// Lower bound of the fullest bin (the first one on ties).
    pub fn mode_bin(&self) -> u64 {
        self.bins
            .iter()
            .fold((0, 0), |best, &(lo, c)| if c > best.1 { (lo, c) } else { best })
            .0
    }
}

pub fn histogram(sample: &LengthSample, bin_width: u64) -> Result<Histogram> {
    if bin_width == 0 {
        return Err(LexError::arg("bin width must be at least 1"));
    }
    let max = *sample
        .lengths
        .iter()
        .max()
        .ok_or_else(|| LexError::arg("cannot bin an empty sample"))?;
    let mut counts = vec![0u64; (max / bin_width) as usize + 1];
    for &l in &sample.lengths {
        counts[(l / bin_width) as usize] += 1;
    }
    Ok(Histogram {
        bin_width,
        bins: counts
            .into_iter()
            .enumerate()
            .map(|(k, c)| (k as u64 * bin_width, c))
            .collect(),
    })
}

/// Spacing of one letter through a sequence.
///
/// Gaps are measured in letter positions: `internal_gaps` holds the
/// differences between consecutive occurrences, `head_gap` the letters
/// before the first occurrence and `tail_gap` those after the last.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapStats {
    pub letter: char,
    pub count: usize,
    pub head_gap: usize,
    pub internal_gaps: Vec<usize>,
    pub tail_gap: usize,
    /// Largest of all gaps; the sequence length when the letter is absent.
    pub max_gap: usize,
}

impl GapStats {
    /// `max_gap` relative to `1/p`, the mean spacing if letters were drawn
    /// independently with probability `p`.
    pub fn ratio_to_iid(&self, p: f64) -> f64 {
        self.max_gap as f64 * p
    }
}

pub fn letter_gap_stats(seq: &LetterSequence, letter: char) -> Result<GapStats> {
    let code = letter_code(letter).ok_or_else(|| LexError::arg(format!("{letter:?} is not a letter a-z")))?;
    let positions: Vec<usize> = seq
        .letters
        .iter()
        .enumerate()
        .filter(|(_, &l)| l == code)
        .map(|(i, _)| i)
        .collect();
    let letter = letter_char(code);
    let (Some(&first), Some(&last)) = (positions.first(), positions.last()) else {
        return Ok(GapStats {
            letter,
            count: 0,
            head_gap: seq.len(),
            internal_gaps: Vec::new(),
            tail_gap: seq.len(),
            max_gap: seq.len(),
        });
    };
    let internal_gaps: Vec<usize> = positions.windows(2).map(|w| w[1] - w[0]).collect();
    let head_gap = first;
    let tail_gap = seq.len() - 1 - last;
    let max_gap = internal_gaps
        .iter()
        .copied()
        .chain([head_gap, tail_gap])
        .max()
        .unwrap_or(0);
    Ok(GapStats {
        letter,
        count: positions.len(),
        head_gap,
        internal_gaps,
        tail_gap,
        max_gap,
    })
}
