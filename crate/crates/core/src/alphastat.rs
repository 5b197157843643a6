//! Letter frequencies and coupon collecting with unequal probabilities.
//!
//! With `p_i` the chance of drawing coupon `i`, the expected number of
//! draws to see every coupon at least once is
//!
//! ```text
//! E(N_full) = ∫_0^∞ 1 - Π_i (1 - exp(-p_i t)) dt
//! ```
//!
//! which [`expected_full_collection`] evaluates by adaptive quadrature. The
//! birthday problem (draws until some coupon repeats) is estimated by
//! simulation in [`expected_first_repeat`], with the analogous integral
//! `∫_0^∞ Π_i (1 + p_i t) exp(-p_i t) dt` available as a cross-check.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::numeric::{integrate_adaptive, NeumaierSum};
use crate::textio::{letter_char, LetterSequence};
use crate::{LexError, Result};

pub const ALPHABET: usize = 26;

/// Letter counts and proportions over `a-z`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LetterFrequencyTable {
    pub counts: [u64; ALPHABET],
    pub total: u64,
    pub proportions: [f64; ALPHABET],
}

impl LetterFrequencyTable {
    pub fn from_counts(counts: [u64; ALPHABET]) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(LexError::arg("letter counts are all zero"));
        }
        let proportions = counts.map(|c| c as f64 / total as f64);
        Ok(LetterFrequencyTable {
            counts,
            total,
            proportions,
        })
    }

    /// `letter,count,proportion` lines, `a` to `z`, proportion to six
    /// decimal places.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(26 * 20);
        for (i, (&count, &p)) in self.counts.iter().zip(&self.proportions).enumerate() {
            out.push_str(&format!("{},{},{:.6}\n", letter_char(i as u8), count, p));
        }
        out
    }

    /// Parses the CSV written by [`to_csv`](Self::to_csv). Proportions are
    /// recomputed from the counts; a third column, if present, is ignored.
    pub fn parse_csv(text: &str, path: &Path) -> Result<Self> {
        let mut counts = [0u64; ALPHABET];
        let mut seen = 0;
        for (lineno, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())) {
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split(',').map(str::trim);
            let letter = fields.next().unwrap_or_default();
            let count = fields
                .next()
                .ok_or_else(|| LexError::format(path, lineno, "expected `letter,count[,proportion]`"))?;
            if seen == ALPHABET {
                return Err(LexError::format(path, lineno, "more than 26 letter rows"));
            }
            let expected = letter_char(seen as u8).to_string();
            if !letter.eq_ignore_ascii_case(&expected) {
                return Err(LexError::format(
                    path,
                    lineno,
                    format!("expected letter {expected:?}, found {letter:?}"),
                ));
            }
            counts[seen] = count.parse().map_err(|_| {
                LexError::format(path, lineno, format!("count {count:?} is not a non-negative integer"))
            })?;
            seen += 1;
        }
        if seen != ALPHABET {
            return Err(LexError::format(
                path,
                0,
                format!("expected 26 letter rows, found {seen}"),
            ));
        }
        Self::from_counts(counts).map_err(|e| LexError::format(path, 0, e.to_string()))
    }

    pub fn probability_vector(&self) -> Result<ProbabilityVector> {
        ProbabilityVector::from_counts(&self.counts)
    }
}

pub fn letter_frequencies(seq: &LetterSequence) -> Result<LetterFrequencyTable> {
    if seq.is_empty() {
        return Err(LexError::arg("letter sequence is empty"));
    }
    let mut counts = [0u64; ALPHABET];
    for &l in &seq.letters {
        counts[l as usize] += 1;
    }
    LetterFrequencyTable::from_counts(counts)
}

pub fn load_letter_frequencies(path: impl AsRef<Path>) -> Result<LetterFrequencyTable> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| LexError::io(path, e))?;
    LetterFrequencyTable::parse_csv(&text, path)
}

/// Categorical probabilities summing to one. Entries may be zero (a
/// category that never occurs); routines that need every category to
/// occur reject such vectors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbabilityVector {
    probs: Vec<f64>,
}

impl ProbabilityVector {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(LexError::arg("probability vector is empty"));
        }
        if let Some((i, p)) = probs.iter().enumerate().find(|(_, p)| !p.is_finite() || **p < 0.0) {
            return Err(LexError::arg(format!(
                "probability {i} is {p}, not a finite non-negative number"
            )));
        }
        let sum: NeumaierSum = probs.iter().copied().collect();
        if (sum.value() - 1.0).abs() > 1e-9 {
            return Err(LexError::arg(format!("probabilities sum to {}, not 1", sum.value())));
        }
        Ok(ProbabilityVector { probs })
    }

    /// Normalizes non-negative weights.
    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(LexError::arg("counts are all zero"));
        }
        Self::new(counts.iter().map(|&c| c as f64 / total as f64).collect())
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(LexError::arg("need at least one category"));
        }
        Ok(ProbabilityVector {
            probs: vec![1.0 / n as f64; n],
        })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Indices of zero-probability categories.
    pub fn zero_categories(&self) -> Vec<usize> {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, &p)| p == 0.0)
            .map(|(i, _)| i)
            .collect()
    }

    fn require_positive(&self) -> Result<()> {
        match self.zero_categories().first() {
            None => Ok(()),
            Some(i) => Err(LexError::arg(format!(
                "category {i} has probability 0, so a full collection never completes"
            ))),
        }
    }

    fn sampler(&self) -> WeightedIndex<f64> {
        WeightedIndex::new(&self.probs).expect("validated probability vector")
    }
}

/// Stop rule for a collection: `distinct` coupon types each seen at least
/// `repeats` times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CollectorTarget {
    pub distinct: usize,
    pub repeats: u32,
}

impl CollectorTarget {
    pub fn new(distinct: usize, repeats: u32, categories: usize) -> Result<Self> {
        if distinct == 0 || repeats == 0 {
            return Err(LexError::arg("collector target needs distinct >= 1 and repeats >= 1"));
        }
        if distinct > categories {
            return Err(LexError::arg(format!(
                "cannot require {distinct} distinct types out of {categories}"
            )));
        }
        Ok(CollectorTarget { distinct, repeats })
    }

    /// Every type at least once.
    pub fn full(categories: usize) -> Self {
        CollectorTarget {
            distinct: categories,
            repeats: 1,
        }
    }

    /// Some type twice: the birthday problem.
    pub fn first_repeat() -> Self {
        CollectorTarget {
            distinct: 1,
            repeats: 2,
        }
    }
}

/// RNG for replicate `replicate` of a run seeded with `seed`: the same
/// ChaCha key, one stream per replicate.
pub fn replicate_rng(seed: u64, replicate: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replicate);
    rng
}

/// Draws until `target` is met; returns the number of draws.
fn collect_once(sampler: &WeightedIndex<f64>, target: CollectorTarget, seen: &mut [u32], rng: &mut ChaCha8Rng) -> u64 {
    seen.fill(0);
    let mut done = 0;
    let mut draws = 0u64;
    loop {
        let i = sampler.sample(rng);
        draws += 1;
        seen[i] += 1;
        if seen[i] == target.repeats {
            done += 1;
            if done == target.distinct {
                return draws;
            }
        }
    }
}

/// Simulates `reps` independent collections, returning the draw count of
/// each in replicate order. The result depends only on `(p, target, reps,
/// seed)`, not on the rayon thread count.
pub fn simulate_collection(p: &ProbabilityVector, target: CollectorTarget, reps: usize, seed: u64) -> Result<Vec<u64>> {
    let reachable = p.probs.iter().filter(|&&x| x > 0.0).count();
    if target.distinct > reachable {
        return Err(LexError::arg(format!(
            "only {reachable} categories have positive probability; cannot collect {}",
            target.distinct
        )));
    }
    let sampler = p.sampler();
    Ok((0..reps as u64)
        .into_par_iter()
        .map_init(
            || vec![0u32; p.len()],
            |seen, r| collect_once(&sampler, target, seen, &mut replicate_rng(seed, r)),
        )
        .collect())
}

/// Draw counts needed to see every category at least once.
pub fn simulate_full_collection(p: &ProbabilityVector, reps: usize, seed: u64) -> Result<Vec<u64>> {
    if reps == 0 {
        return Err(LexError::arg("reps must be at least 1"));
    }
    p.require_positive()?;
    simulate_collection(p, CollectorTarget::full(p.len()), reps, seed)
}

/// Expected draws to collect every category, by quadrature of the
/// Poissonized integral to about 1e-8 relative error.
pub fn expected_full_collection(p: &ProbabilityVector) -> Result<f64> {
    p.require_positive()?;
    let probs = p.probs();
    let p_min = probs.iter().copied().fold(f64::INFINITY, f64::min);
    let p_max = probs.iter().copied().fold(0.0, f64::max);

    // The integrand is at most Σ exp(-p_i t), so the tail past T is at most
    // Σ exp(-p_i T) / p_i. The answer is at least 1/p_min.
    let tail = |t: f64| probs.iter().map(|&q| (-q * t).exp() / q).sum::<f64>();
    let floor = 1.0 / p_min;
    let mut horizon = floor;
    while tail(horizon) >= 1e-9 * floor {
        horizon *= 1.5;
    }

    let integrand = |t: f64| {
        let log_all_seen: f64 = probs.iter().map(|&q| (-(-q * t).exp_m1()).ln()).sum();
        -log_all_seen.exp_m1()
    };
    let mut breaks = Vec::new();
    let mut b = 1.0 / p_max;
    while b < horizon {
        breaks.push(b);
        b *= 2.0;
    }
    Ok(integrate_adaptive(integrand, 0.0, horizon, &breaks, 1e-10).value)
}

/// Expected draws until some category repeats, from the integral
/// `∫ Π (1 + p_i t) e^{-p_i t} dt`. Zero-probability categories contribute
/// a factor of one.
pub fn expected_first_repeat_integral(p: &ProbabilityVector) -> f64 {
    let probs: Vec<f64> = p.probs().iter().copied().filter(|&q| q > 0.0).collect();
    let log_g = |t: f64| probs.iter().map(|&q| (q * t).ln_1p() - q * t).sum::<f64>();
    // -ln g has increasing derivative r(t) = Σ q² t / (1 + q t), so the tail
    // beyond T is at most g(T) / r(T).
    let rate = |t: f64| probs.iter().map(|&q| q * q * t / (1.0 + q * t)).sum::<f64>();
    let p_max = probs.iter().copied().fold(0.0, f64::max);
    let mut horizon = 1.0 / p_max;
    while log_g(horizon).exp() / rate(horizon) > 1e-13 {
        horizon *= 1.5;
    }
    let mut breaks = Vec::new();
    let mut b = 1.0 / p_max;
    while b < horizon {
        breaks.push(b);
        b *= 2.0;
    }
    integrate_adaptive(|t| log_g(t).exp(), 0.0, horizon, &breaks, 1e-11).value
}

/// Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub reps: usize,
}

impl McEstimate {
    pub fn from_sample(sample: &[u64]) -> Self {
        let n = sample.len() as f64;
        let mean = sample.iter().map(|&x| x as f64).collect::<NeumaierSum>().value() / n;
        let var = if sample.len() > 1 {
            sample
                .iter()
                .map(|&x| (x as f64 - mean).powi(2))
                .collect::<NeumaierSum>()
                .value()
                / (n - 1.0)
        } else {
            0.0
        };
        McEstimate {
            estimate: mean,
            std_error: (var / n).sqrt(),
            reps: sample.len(),
        }
    }
}

/// Monte Carlo estimate of the expected number of draws until some
/// category is drawn a second time.
pub fn expected_first_repeat(p: &ProbabilityVector, reps: usize, seed: u64) -> Result<McEstimate> {
    if reps == 0 {
        return Err(LexError::arg("reps must be at least 1"));
    }
    let sample = simulate_collection(p, CollectorTarget::first_repeat(), reps, seed)?;
    Ok(McEstimate::from_sample(&sample))
}

pub const DAYS_IN_YEAR: usize = 365;

/// Births (or any events) per day of a 365-day year.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DayCounts {
    /// `counts[d]` is day `d + 1`.
    pub counts: Vec<u64>,
    /// 1-based days with a zero count.
    pub zero_days: Vec<usize>,
}

impl DayCounts {
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let mut counts: Vec<Option<u64>> = vec![None; DAYS_IN_YEAR];
        let mut records = 0;
        let mut first = true;
        for (lineno, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let header = first && !line.starts_with(|c: char| c.is_ascii_digit());
            first = false;
            if header {
                continue;
            }
            let (day, count) = line
                .split_once(',')
                .ok_or_else(|| LexError::format(path, lineno, "expected `day,count`"))?;
            let day: usize = day
                .trim()
                .parse()
                .ok()
                .filter(|d| (1..=DAYS_IN_YEAR).contains(d))
                .ok_or_else(|| LexError::format(path, lineno, format!("day {day:?} is not in 1..=365")))?;
            let count: u64 = count.trim().parse().map_err(|_| {
                LexError::format(path, lineno, format!("count {count:?} is not a non-negative integer"))
            })?;
            if counts[day - 1].replace(count).is_some() {
                return Err(LexError::format(path, lineno, format!("day {day} appears twice")));
            }
            records += 1;
        }
        if records != DAYS_IN_YEAR {
            return Err(LexError::format(
                path,
                0,
                format!("expected {DAYS_IN_YEAR} day records, found {records}"),
            ));
        }
        let counts: Vec<u64> = counts.into_iter().map(|c| c.expect("all days present")).collect();
        let zero_days = (1..=DAYS_IN_YEAR).filter(|&d| counts[d - 1] == 0).collect();
        Ok(DayCounts { counts, zero_days })
    }

    /// Day probabilities. Zero days stay zero; full-collection routines
    /// reject them, first-repeat routines accept them.
    pub fn probability_vector(&self) -> Result<ProbabilityVector> {
        ProbabilityVector::from_counts(&self.counts)
    }
}

/// Reads a `day,count` file with exactly one record for each of days
/// 1-365. A leading header line and `#` comments are skipped.
pub fn load_day_counts(path: impl AsRef<Path>) -> Result<DayCounts> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| LexError::io(path, e))?;
    DayCounts::parse(&text, path)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Weekday {
    Sunday,
    Monday,
    Tuesday,
    Wednesday,
    Thursday,
    Friday,
    Saturday,
}

impl Weekday {
    pub const ALL: [Weekday; 7] = [
        Weekday::Sunday,
        Weekday::Monday,
        Weekday::Tuesday,
        Weekday::Wednesday,
        Weekday::Thursday,
        Weekday::Friday,
        Weekday::Saturday,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_weekend(self) -> bool {
        matches!(self, Weekday::Saturday | Weekday::Sunday)
    }
}

impl FromStr for Weekday {
    type Err = LexError;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        Weekday::ALL
            .into_iter()
            .find(|d| {
                let name = format!("{d:?}").to_ascii_lowercase();
                lower == name || (lower.len() >= 3 && name.starts_with(&lower))
            })
            .or_else(|| lower.parse::<usize>().ok().and_then(|i| Weekday::ALL.get(i).copied()))
            .ok_or_else(|| LexError::arg(format!("unknown weekday {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeekdaySummary {
    /// Mean count per weekday, Sunday first.
    pub means: [f64; 7],
    /// Lower of the Saturday/Sunday means over the average of the five
    /// weekday means.
    pub weekend_ratio: f64,
}

pub fn weekday_summary(day_counts: &[u64], weekday_of_day1: Weekday) -> WeekdaySummary {
    let mut sums = [0.0f64; 7];
    let mut days = [0u32; 7];
    for (d, &c) in day_counts.iter().enumerate() {
        let w = (weekday_of_day1.index() + d) % 7;
        sums[w] += c as f64;
        days[w] += 1;
    }
    let means: [f64; 7] = std::array::from_fn(|w| if days[w] > 0 { sums[w] / days[w] as f64 } else { 0.0 });
    let weekend_min = means[Weekday::Saturday.index()].min(means[Weekday::Sunday.index()]);
    let weekday_mean = (1..=5).map(|w| means[w]).sum::<f64>() / 5.0;
    WeekdaySummary {
        means,
        weekend_ratio: weekend_min / weekday_mean,
    }
}
