//! One PASS / FAIL / SKIP line per acceptance criterion.
//!
//! Criteria 1, 2 and 8 need texts that cannot be shipped here; point
//! `LEXSTAT_MOBY_WORDLIST` at the Moby crossword list (`crosswd.txt`) and
//! `LEXSTAT_CAROL` at a Project Gutenberg etext of A Christmas Carol to run
//! them.

mod common;

use std::time::{Duration, Instant};

use common::{brute_force, data_path, exact_fisher, random_query, random_table, random_words, rel_err, rng};
use common::{harmonic, uniform_first_repeat};
use lexstat::alphastat::{
    expected_first_repeat, expected_full_collection, letter_frequencies, load_day_counts, load_letter_frequencies,
    simulate_full_collection, weekday_summary, McEstimate, ProbabilityVector, Weekday,
};
use lexstat::collocation::{fisher_exact, hypergeom_log_pmf, ContingencyTable2x2};
use lexstat::numeric::sum_ascending;
use lexstat::pangram::{histogram, sample_windows, scan_window, simulate_iid, StartMode};
use lexstat::textio::{letters_of, load_wordlist, Corpus, WordList};
use lexstat::wordplay::{crossword_search, hangman_search, LetterPattern, LetterSet};

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

use Outcome::{Fail, Pass, Skip};

type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Pass(detail)
    } else {
        Fail(detail)
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let outcome = f();
    let took = start.elapsed();
    let note = |d: String| format!("{d} [{:.2}s, limit {}s]", took.as_secs_f64(), limit.as_secs());
    match outcome {
        Pass(d) if took > limit => Fail(note(d)),
        Pass(d) => Pass(note(d)),
        Fail(d) => Fail(note(d)),
        skip => skip,
    }
}

fn moby() -> Option<WordList> {
    let path = std::env::var_os("LEXSTAT_MOBY_WORDLIST")?;
    Some(load_wordlist(path).expect("LEXSTAT_MOBY_WORDLIST is not a readable wordlist"))
}

fn criterion_1() -> Outcome {
    let Some(wl) = moby() else {
        return Skip("LEXSTAT_MOBY_WORDLIST not set".into());
    };
    timed(Duration::from_secs(1), || {
        let hits = crossword_search(&wl, 7, &[(3, 'b'), (6, 'u')]).unwrap();
        check(hits == ["jambeau"], format!("...b..u -> {hits:?}"))
    })
}

fn criterion_2() -> Outcome {
    let Some(wl) = moby() else {
        return Skip("LEXSTAT_MOBY_WORDLIST not set".into());
    };
    let want = [
        "bedbugs", "bedrugs", "bedumbs", "begulfs", "ferrums", "peplums", "rebuffs", "redbuds", "redbugs", "regulus",
        "vellums", "zephyrs",
    ];
    let pattern = LetterPattern::parse_hangman("_e____s", "taoin").unwrap();
    let hits = hangman_search(&wl, &pattern).unwrap();
    check(
        hits == want,
        format!("_e____s minus taoin -> {} words {hits:?}", hits.len()),
    )
}

fn criterion_3() -> Outcome {
    let cases = [
        (ContingencyTable2x2::new(8, 1966, 141, 1_012_197), 7.92e-10, 0.10, 0.29),
        (ContingencyTable2x2::new(1, 1815, 148, 1_012_348), 0.2343, 0.0005, 0.27),
    ];
    let mut details = Vec::new();
    let mut ok = true;
    for (i, (table, want_p, tol, want_e)) in cases.into_iter().enumerate() {
        let start = Instant::now();
        let f = fisher_exact(&table).unwrap();
        let took = start.elapsed();
        let oracle = exact_fisher(&table).p_two_sided;
        let p_ok = if i == 0 {
            rel_err(f.p_two_sided, want_p) <= tol
        } else {
            (f.p_two_sided - want_p).abs() <= tol
        };
        let oracle_ok = rel_err(f.p_two_sided, oracle) <= 1e-9;
        let e_ok = (f.expected_c11 - want_e).abs() <= 0.005;
        ok &= p_ok && oracle_ok && e_ok && took < Duration::from_secs(1);
        details.push(format!(
            "p={:.6e} oracle_rel={:.1e} E={:.4} [{:.3}s]",
            f.p_two_sided,
            rel_err(f.p_two_sided, oracle),
            f.expected_c11,
            took.as_secs_f64()
        ));
    }
    check(ok, details.join("; "))
}

fn criterion_4() -> Outcome {
    let mut r = rng(4);
    let mut worst: f64 = 0.0;
    let mut worst_sum: f64 = 0.0;
    for _ in 0..200 {
        let t = random_table(&mut r, 200);
        let f = fisher_exact(&t).unwrap();
        let o = exact_fisher(&t);
        for (g, w) in [
            (f.p_left, o.p_left),
            (f.p_right, o.p_right),
            (f.p_two_sided, o.p_two_sided),
        ] {
            worst = worst.max(rel_err(g, w));
        }
        let (total, successes, draws) = (t.total(), t.col1(), t.row1());
        let mut pmf: Vec<f64> = t
            .support()
            .map(|k| hypergeom_log_pmf(k, total, successes, draws).unwrap().exp())
            .collect();
        worst_sum = worst_sum.max((sum_ascending(&mut pmf) - 1.0).abs());
    }
    check(
        worst <= 1e-12 && worst_sum <= 1e-10,
        format!("200 tables: max rel err {worst:.1e}, max |Σpmf-1| {worst_sum:.1e}"),
    )
}

fn fixture_probs() -> ProbabilityVector {
    load_letter_frequencies(data_path("carol_letter_freqs.csv"))
        .unwrap()
        .probability_vector()
        .unwrap()
}

fn criterion_5() -> Outcome {
    timed(Duration::from_secs(5), || {
        let carol = expected_full_collection(&fixture_probs()).unwrap();
        let uniform = expected_full_collection(&ProbabilityVector::uniform(26).unwrap()).unwrap();
        let h = 26.0 * harmonic(26);
        check(
            (carol - 2473.82).abs() <= 0.5 && (uniform - 100.215).abs() <= 0.01 && (uniform - h).abs() <= 0.01,
            format!("fixture {carol:.3}, uniform {uniform:.4} (26·H26 = {h:.4})"),
        )
    })
}

fn criterion_6() -> Outcome {
    timed(Duration::from_secs(30), || {
        let est = McEstimate::from_sample(&simulate_full_collection(&fixture_probs(), 10_000, 2024).unwrap());
        let z = (est.estimate - 2473.82) / est.std_error;
        check(
            z.abs() <= 4.0,
            format!("mean {:.2} ± {:.2} (z = {z:.2})", est.estimate, est.std_error),
        )
    })
}

fn criterion_7() -> Outcome {
    let text = std::fs::read_to_string(data_path("carol_window.txt")).unwrap();
    let w = scan_window(&letters_of(&text), 0).unwrap();
    check(
        w.complete && w.length == 680 && w.last_letter == Some('j'),
        format!(
            "complete={} length={} last={:?} (expected 680, 'j')",
            w.complete, w.length, w.last_letter
        ),
    )
}

fn criterion_8() -> Outcome {
    let Some(path) = std::env::var_os("LEXSTAT_CAROL") else {
        return Skip("LEXSTAT_CAROL not set".into());
    };
    let (corpus, _) = Corpus::load(path, true).unwrap();
    let windows = sample_windows(&corpus, 1000, 1843, StartMode::Paragraph).unwrap();
    let mode = histogram(&windows.sample, 250).unwrap().mode_bin();
    let freqs = letter_frequencies(&corpus.letters()).unwrap();
    let iid = simulate_iid(&freqs, 1000, 1843).unwrap();
    let iid_tail = iid.fraction_above(7500);
    let corpus_tail = windows.sample.fraction_above(7500);
    check(
        (1250..2000).contains(&mode) && iid_tail < 0.01 && corpus_tail > iid_tail,
        format!("mode bin {mode}, P(>7500) corpus {corpus_tail:.3} vs iid {iid_tail:.3}"),
    )
}

fn criterion_9() -> Outcome {
    timed(Duration::from_secs(60), || {
        let uniform = ProbabilityVector::uniform(365).unwrap();
        let u = expected_first_repeat(&uniform, 1_000_000, 365).unwrap();
        let exact = uniform_first_repeat(365);
        let days = load_day_counts(data_path("births_1978.csv")).unwrap();
        let b = expected_first_repeat(&days.probability_vector().unwrap(), 1_000_000, 1978).unwrap();
        let ratio = weekday_summary(&days.counts, Weekday::Sunday).weekend_ratio;
        check(
            (u.estimate - 24.62).abs() <= 0.05
                && (u.estimate - exact).abs() <= 0.05
                && (b.estimate - 24.53).abs() <= 0.05
                && ratio < 0.9,
            format!(
                "uniform {:.3} ± {:.3} (exact {exact:.4}), 1978 {:.3} ± {:.3}, weekend ratio {ratio:.3}",
                u.estimate, u.std_error, b.estimate, b.std_error
            ),
        )
    })
}

fn criterion_10() -> Outcome {
    let alphabet = b"abcdef";
    let mut r = rng(10);
    let mut mismatches = 0;
    let mut queries = 0;
    for _ in 0..100 {
        let words = random_words(&mut r, 500, alphabet);
        let wl = WordList::from_lines(words.iter().map(String::as_str), "synthetic");
        for hangman in [false, true] {
            let q = random_query(&mut r, alphabet, hangman);
            let got = if hangman {
                let missed: LetterSet = q.excluded.iter().map(|&c| c as u8 - b'a').collect();
                hangman_search(&wl, &LetterPattern::hangman(q.length, &q.fixed, missed).unwrap()).unwrap()
            } else {
                crossword_search(&wl, q.length, &q.fixed).unwrap()
            };
            queries += 1;
            if got != brute_force(&wl.words, &q) {
                mismatches += 1;
            }
        }
    }
    check(
        mismatches == 0,
        format!("{queries} queries on 100 wordlists, {mismatches} mismatches"),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("crossword jambeau", criterion_1),
        ("hangman twelve words", criterion_2),
        ("fisher published tables", criterion_3),
        ("fisher small-table oracle", criterion_4),
        ("coupon-collector integral", criterion_5),
        ("coupon-collector simulation", criterion_6),
        ("pangram block quote", criterion_7),
        ("pangram histograms", criterion_8),
        ("birthday problem", criterion_9),
        ("pattern-engine oracle", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (tag, detail) = match f() {
            Pass(d) => ("PASS", d),
            Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Skip(d) => ("SKIP", d),
        };
        println!("criterion {:>2} {tag} {name}: {detail}", i + 1);
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
