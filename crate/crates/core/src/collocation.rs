//! Bigram contingency tables and Fisher's exact test.
//!
//! Table layout, for the ordered pair `(w1, w2)` over adjacent tokens:
//!
//! ```text
//!               w1 first    not w1      row sums
//! w2 second       c11         c12         c1.
//! not w2          c21         c22         c2.
//! column sums     c.1         c.2         c..
//! ```
//!
//! Under independence, `c11` given the margins is hypergeometric: `c..`
//! bigrams of which `c.1` start with `w1`, `c1.` of them drawn.

use serde::Serialize;

use crate::numeric::{format_sig, ln_hypergeom, sum_ascending};
use crate::textio::Token;
use crate::{LexError, Result};

/// Relative slack when deciding whether an outcome is "no more probable"
/// than the observed one in the two-sided p-value.
pub const TIE_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ContingencyTable2x2 {
    pub c11: u64,
    pub c12: u64,
    pub c21: u64,
    pub c22: u64,
}

impl ContingencyTable2x2 {
    pub fn new(c11: u64, c12: u64, c21: u64, c22: u64) -> Self {
        Self { c11, c12, c21, c22 }
    }

    /// Parses `"c11,c12,c21,c22"`. Thousands separators are not accepted.
    pub fn parse(s: &str) -> Result<Self> {
        let cells: Vec<u64> = s
            .split(',')
            .map(|c| {
                c.trim()
                    .parse()
                    .map_err(|_| LexError::arg(format!("table cell {c:?} is not a non-negative integer")))
            })
            .collect::<Result<_>>()?;
        match cells[..] {
            [c11, c12, c21, c22] => Ok(Self::new(c11, c12, c21, c22)),
            _ => Err(LexError::arg(format!(
                "expected four comma-separated cells, got {}",
                cells.len()
            ))),
        }
    }

    pub fn row1(&self) -> u64 {
        self.c11 + self.c12
    }

    pub fn row2(&self) -> u64 {
        self.c21 + self.c22
    }

    pub fn col1(&self) -> u64 {
        self.c11 + self.c21
    }

    pub fn col2(&self) -> u64 {
        self.c12 + self.c22
    }

    pub fn total(&self) -> u64 {
        self.c11 + self.c12 + self.c21 + self.c22
    }

    /// Range of `c11` values compatible with the margins.
    pub fn support(&self) -> std::ops::RangeInclusive<u64> {
        let (n, k, total) = (self.row1(), self.col1(), self.total());
        (n + k).saturating_sub(total)..=n.min(k)
    }
}

/// Counts adjacent ordered token pairs against `(w1, w2)`. There are no
/// sentence breaks: every consecutive pair is one bigram.
pub fn bigram_contingency(tokens: &[Token], w1: &str, w2: &str) -> Result<ContingencyTable2x2> {
    if tokens.len() < 2 {
        return Err(LexError::arg("need at least two tokens to form a bigram"));
    }
    let mut t = ContingencyTable2x2::new(0, 0, 0, 0);
    for pair in tokens.windows(2) {
        let first = pair[0].text == w1;
        let second = pair[1].text == w2;
        match (first, second) {
            (true, true) => t.c11 += 1,
            (false, true) => t.c12 += 1,
            (true, false) => t.c21 += 1,
            (false, false) => t.c22 += 1,
        }
    }
    Ok(t)
}

/// `c1. × c.1 / c..`, the mean of `c11` under independence.
pub fn expected_cell(table: &ContingencyTable2x2) -> Result<f64> {
    let total = table.total();
    if total == 0 {
        return Err(LexError::arg("contingency table is all zeros"));
    }
    Ok(table.row1() as f64 * table.col1() as f64 / total as f64)
}

/// Natural log of the hypergeometric probability of `k` successes in
/// `draws` draws from a population of `total` containing `successes`.
pub fn hypergeom_log_pmf(k: u64, total: u64, successes: u64, draws: u64) -> Result<f64> {
    if successes > total || draws > total {
        return Err(LexError::arg(format!(
            "hypergeometric parameters out of range: total={total}, successes={successes}, draws={draws}"
        )));
    }
    Ok(ln_hypergeom(k, successes, total - successes, draws))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FisherResult {
    /// P(c11 <= observed)
    pub p_left: f64,
    /// P(c11 >= observed)
    pub p_right: f64,
    /// Sum over outcomes no more probable than the observed one.
    pub p_two_sided: f64,
    pub expected_c11: f64,
    /// P(c11 == observed)
    pub point_prob: f64,
}

/// Fisher's exact test on a 2×2 table.
///
/// Each outcome's probability is evaluated in log space, so nothing
/// overflows at totals around 10^6. Tails are summed smallest-first with
/// compensation.
pub fn fisher_exact(table: &ContingencyTable2x2) -> Result<FisherResult> {
    let expected_c11 = expected_cell(table)?;
    let total = table.total();
    let successes = table.col1();
    let draws = table.row1();
    let observed = table.c11;

    let support = table.support();
    let lo = *support.start();
    let log_pmf: Vec<f64> = support
        .map(|j| ln_hypergeom(j, successes, total - successes, draws))
        .collect();
    let pmf: Vec<f64> = log_pmf.iter().map(|l| l.exp()).collect();
    let idx = (observed - lo) as usize;
    let point_prob = pmf[idx];
    let cutoff = point_prob * (1.0 + TIE_TOLERANCE);

    let mut left: Vec<f64> = pmf[..=idx].to_vec();
    let mut right: Vec<f64> = pmf[idx..].to_vec();
    let mut two: Vec<f64> = pmf.iter().copied().filter(|&p| p <= cutoff).collect();

    let clamp = |p: f64| p.clamp(0.0, 1.0);
    Ok(FisherResult {
        p_left: clamp(sum_ascending(&mut left)),
        p_right: clamp(sum_ascending(&mut right)),
        p_two_sided: clamp(sum_ascending(&mut two)),
        expected_c11,
        point_prob,
    })
}

/// Bigram table for `(w1, w2)` plus its Fisher test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CollocationReport {
    pub table: ContingencyTable2x2,
    pub fisher: FisherResult,
}

pub fn collocation_report(tokens: &[Token], w1: &str, w2: &str) -> Result<CollocationReport> {
    let table = bigram_contingency(tokens, w1, w2)?;
    let fisher = fisher_exact(&table)?;
    Ok(CollocationReport { table, fisher })
}

impl CollocationReport {
    /// Human-readable summary with `digits` significant digits.
    pub fn render(&self, w1: &str, w2: &str, digits: usize) -> String {
        let t = &self.table;
        let f = &self.fisher;
        let w = 12usize.max(w1.len() + 2).max(w2.len() + 2);
        let mut out = String::new();
        out.push_str(&format!(
            "{:<w$}{:>w$}{:>w$}{:>w$}\n",
            "",
            w1,
            format!("-{w1}"),
            "Row sums"
        ));
        out.push_str(&format!("{:<w$}{:>w$}{:>w$}{:>w$}\n", w2, t.c11, t.c12, t.row1()));
        out.push_str(&format!(
            "{:<w$}{:>w$}{:>w$}{:>w$}\n",
            format!("-{w2}"),
            t.c21,
            t.c22,
            t.row2()
        ));
        out.push_str(&format!(
            "{:<w$}{:>w$}{:>w$}{:>w$}\n",
            "Col sums",
            t.col1(),
            t.col2(),
            t.total()
        ));
        for (name, v) in [
            ("expected_c11", f.expected_c11),
            ("p_left", f.p_left),
            ("p_right", f.p_right),
            ("p_two_sided", f.p_two_sided),
        ] {
            out.push_str(&format!("{name:<13}{}\n", format_sig(v, digits)));
        }
        out
    }
}
