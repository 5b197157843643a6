#![allow(dead_code)]

use std::path::PathBuf;

use lexstat::collocation::{ContingencyTable2x2, TIE_TOLERANCE};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut c = BigUint::one();
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    c
}

/// `num / den` rounded to f64, for any magnitude an f64 can hold.
pub fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let shift = den.bits() as i64 - num.bits() as i64 + 80;
    let q = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    q.to_f64().unwrap() * 2f64.powi(-shift as i32)
}

pub struct ExactFisher {
    pub p_left: f64,
    pub p_right: f64,
    pub p_two_sided: f64,
    pub point_prob: f64,
    pub pmf_sum: f64,
}

/// Fisher's test by exact integer arithmetic. Every outcome's weight is
/// `C(col1, k) C(col2, row1 - k)`, built by an exact recurrence; all share
/// the denominator `C(total, row1)`.
pub fn exact_fisher(t: &ContingencyTable2x2) -> ExactFisher {
    let (n, k_succ, total) = (t.row1(), t.col1(), t.total());
    let fail = total - k_succ;
    let lo = (n + k_succ).saturating_sub(total);
    let hi = n.min(k_succ);
    let mut weights = Vec::new();
    let mut w = binomial(k_succ, lo) * binomial(fail, n - lo);
    for k in lo..=hi {
        weights.push(w.clone());
        if k < hi {
            w = w * (k_succ - k) * (n - k) / ((k + 1) * (fail + k + 1 - n));
        }
    }
    let den = binomial(total, n);
    let obs = &weights[(t.c11 - lo) as usize];

    // w <= obs * (1 + tol), with tol as an exact rational
    let scale = BigUint::from(10u64).pow(12);
    let bound = obs * (&scale + BigUint::from((TIE_TOLERANCE * 1e12).round() as u64));
    let mut left = BigUint::zero();
    let mut right = BigUint::zero();
    let mut two = BigUint::zero();
    let mut all = BigUint::zero();
    for (i, w) in weights.iter().enumerate() {
        let k = lo + i as u64;
        if k <= t.c11 {
            left += w;
        }
        if k >= t.c11 {
            right += w;
        }
        if w * &scale <= bound {
            two += w;
        }
        all += w;
    }
    ExactFisher {
        p_left: ratio_to_f64(&left, &den),
        p_right: ratio_to_f64(&right, &den),
        p_two_sided: ratio_to_f64(&two, &den),
        point_prob: ratio_to_f64(obs, &den),
        pmf_sum: ratio_to_f64(&all, &den),
    }
}

/// Random table with total in `1..=max_total`, cells drawn by random cuts.
pub fn random_table(rng: &mut ChaCha8Rng, max_total: u64) -> ContingencyTable2x2 {
    let total = rng.random_range(1..=max_total);
    let mut cuts = [
        rng.random_range(0..=total),
        rng.random_range(0..=total),
        rng.random_range(0..=total),
    ];
    cuts.sort_unstable();
    ContingencyTable2x2::new(cuts[0], cuts[1] - cuts[0], cuts[2] - cuts[1], total - cuts[2])
}

pub fn harmonic(n: usize) -> f64 {
    (1..=n).rev().map(|k| 1.0 / k as f64).sum()
}

/// Expected draws until a repeat among `n` equally likely days:
/// `Σ_{k>=0} P(no repeat in k draws)`.
pub fn uniform_first_repeat(n: usize) -> f64 {
    let mut total = 0.0;
    let mut survive = 1.0;
    for k in 0..=n {
        total += survive;
        survive *= (n - k) as f64 / n as f64;
    }
    total
}

/// A crossword or hangman query in plain form.
#[derive(Debug, Clone)]
pub struct Query {
    pub length: usize,
    pub fixed: Vec<(usize, char)>,
    pub excluded: Vec<char>,
}

/// Position-by-position check, written without bitmasks.
pub fn brute_force(words: &[String], q: &Query) -> Vec<String> {
    words
        .iter()
        .filter(|w| {
            let chars: Vec<char> = w.chars().collect();
            if chars.len() != q.length {
                return false;
            }
            (0..q.length).all(|pos| match q.fixed.iter().find(|(p, _)| *p == pos) {
                Some(&(_, c)) => chars[pos] == c.to_ascii_lowercase(),
                None => !q.excluded.contains(&chars[pos]),
            })
        })
        .cloned()
        .collect()
}

/// Wordlist over a small alphabet so random patterns actually hit.
pub fn random_words(rng: &mut ChaCha8Rng, count: usize, alphabet: &[u8]) -> Vec<String> {
    (0..count)
        .map(|_| {
            let len = rng.random_range(1..=8);
            (0..len)
                .map(|_| alphabet[rng.random_range(0..alphabet.len())] as char)
                .collect()
        })
        .collect()
}

pub fn random_query(rng: &mut ChaCha8Rng, alphabet: &[u8], hangman: bool) -> Query {
    let length = rng.random_range(1..=8);
    let mut fixed = Vec::new();
    for pos in 0..length {
        if rng.random_bool(0.3) {
            fixed.push((pos, alphabet[rng.random_range(0..alphabet.len())] as char));
        }
    }
    let mut excluded = Vec::new();
    if hangman {
        for &c in alphabet {
            let c = c as char;
            if !fixed.iter().any(|&(_, f)| f == c) && rng.random_bool(0.25) {
                excluded.push(c);
            }
        }
        // revealed letters cannot appear in hidden cells
        excluded.extend(fixed.iter().map(|&(_, c)| c));
    }
    Query {
        length,
        fixed,
        excluded,
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
