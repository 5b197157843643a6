//! The `lexstat` command line.
//!
//! [`run`] parses arguments, executes one command and writes to the given
//! streams, returning the process exit code: 0 on success, 1 for usage and
//! argument errors, 2 for I/O and data-format errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::alphastat::{
    expected_first_repeat, expected_first_repeat_integral, expected_full_collection, letter_frequencies,
    load_day_counts, load_letter_frequencies, simulate_full_collection, weekday_summary, McEstimate, ProbabilityVector,
    Weekday,
};
use crate::collocation::{collocation_report, fisher_exact, CollocationReport, ContingencyTable2x2};
use crate::concordance::{concordance, SortKey, DEFAULT_WIDTH};
use crate::numeric::format_sig;
use crate::pangram::{
    histogram, letter_gap_stats, sample_windows, simulate_iid, LengthSample, SampleSource, StartMode, DEFAULT_BIN_WIDTH,
};
use crate::textio::{load_wordlist, Corpus, WordList};
use crate::wordplay::{crossword_search, hangman_search, substring_search, LetterPattern};
use crate::{LexError, Result};

#[derive(Debug, Parser)]
#[command(
    name = "lexstat",
    version,
    about = "Corpus statistics: word games, collocations, pangrams"
)]
pub struct RunConfig {
    /// Worker threads for simulations; results do not depend on it.
    #[arg(long, global = true, env = "LEXSTAT_THREADS", value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,

    /// Significant digits for numbers in text output.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=17))]
    pub digits: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Text,
    Csv,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct Output {
    /// Emit a single JSON document.
    #[arg(long, conflicts_with = "out")]
    pub json: bool,

    /// Output format.
    #[arg(long, value_enum, default_value_t = OutFormat::Text)]
    pub out: OutFormat,

    /// Add a header row to CSV output.
    #[arg(long)]
    pub header: bool,
}

#[derive(Debug, Args, Clone)]
pub struct CorpusArgs {
    /// Plain-text corpus file.
    #[arg(long)]
    pub corpus: PathBuf,

    /// Keep Project Gutenberg header and license text.
    #[arg(long)]
    pub keep_boilerplate: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Wordlist pattern search.
    #[command(subcommand)]
    Words(WordsCommand),
    /// Keyword-in-context concordance.
    Concord {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = DEFAULT_WIDTH)]
        width: usize,
        /// left, right or position
        #[arg(long, default_value = "left")]
        sort: String,
        #[arg(long)]
        limit: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Bigram contingency table and Fisher's exact test.
    Colloc {
        #[arg(long, required_unless_present = "table", requires_all = ["w1", "w2"])]
        corpus: Option<PathBuf>,
        #[arg(long)]
        keep_boilerplate: bool,
        #[arg(long)]
        w1: Option<String>,
        #[arg(long)]
        w2: Option<String>,
        /// Literal table `c11,c12,c21,c22` instead of a corpus.
        #[arg(long, conflicts_with = "corpus")]
        table: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Letter statistics.
    #[command(subcommand)]
    Letters(LettersCommand),
    /// Coupon collector with unequal probabilities.
    #[command(subcommand)]
    Coupon(CouponCommand),
    /// Draws until the first repeat.
    #[command(subcommand)]
    Birthday(BirthdayCommand),
    /// Pangrammatic windows.
    #[command(subcommand)]
    Pangram(PangramCommand),
}

#[derive(Debug, Subcommand)]
pub enum WordsCommand {
    /// Known letters at known positions; `.` marks an unknown cell.
    Crossword {
        #[arg(long)]
        wordlist: PathBuf,
        #[arg(long)]
        pattern: String,
        #[command(flatten)]
        output: Output,
    },
    /// Revealed letters plus missed guesses; `_` marks a hidden cell.
    Hangman {
        #[arg(long)]
        wordlist: PathBuf,
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value = "")]
        missed: String,
        #[command(flatten)]
        output: Output,
    },
    /// Words containing a substring.
    Contains {
        #[arg(long)]
        wordlist: PathBuf,
        #[arg(long)]
        substring: String,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Subcommand)]
pub enum LettersCommand {
    /// Count letters a-z.
    Freq {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct CouponSource {
    /// Letter-frequency CSV (`letter,count,proportion`).
    #[arg(long)]
    pub freqs: Option<PathBuf>,
    /// N equally likely coupons.
    #[arg(long)]
    pub uniform: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum CouponCommand {
    /// Expected draws to collect every coupon.
    Expect {
        #[command(flatten)]
        source: CouponSource,
        #[command(flatten)]
        output: Output,
    },
    /// Simulated draws to collect every coupon.
    Simulate {
        #[command(flatten)]
        source: CouponSource,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        reps: u64,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct DaySource {
    /// N equally likely days.
    #[arg(long)]
    pub uniform: Option<usize>,
    /// `day,count` file with 365 records.
    #[arg(long)]
    pub data: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum BirthdayCommand {
    /// Expected draws until some day repeats.
    Expect {
        #[command(flatten)]
        source: DaySource,
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        reps: u64,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Mean count per day of the week.
    Weekdays {
        #[arg(long)]
        data: PathBuf,
        /// Weekday of day 1 (1978 began on a Sunday).
        #[arg(long, default_value = "sunday")]
        day1: String,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Subcommand)]
pub enum PangramCommand {
    /// Sample pangrammatic windows from a text.
    Scan {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long)]
        seed: u64,
        /// paragraph or letter
        #[arg(long, default_value = "paragraph")]
        start_mode: String,
        #[command(flatten)]
        output: Output,
    },
    /// Pangram lengths from independent letters.
    Simulate {
        #[arg(long)]
        freqs: PathBuf,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Histogram of a length sample (one length per line).
    Hist {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BIN_WIDTH, value_parser = clap::value_parser!(u64).range(1..))]
        bin: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Spacing of one letter through a text.
    Gaps {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long)]
        letter: char,
        #[command(flatten)]
        output: Output,
    },
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = config.threads {
        pool = pool.num_threads(n as usize);
    }
    // Output is buffered so the command can run inside the pool.
    let mut out_buf = Vec::new();
    let mut err_buf = Vec::new();
    let result = match pool.build() {
        Ok(pool) => pool.install(|| execute(&config, &mut out_buf, &mut err_buf)),
        Err(e) => Err(LexError::arg(format!("cannot start worker threads: {e}"))),
    };
    let _ = err.write_all(&err_buf);
    let result = result.and_then(|()| out.write_all(&out_buf).map_err(io_err));
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "lexstat: {e}");
            match e {
                LexError::Argument(_) => 1,
                LexError::Io { .. } | LexError::Format { .. } => 2,
            }
        }
    }
}

fn io_err(e: std::io::Error) -> LexError {
    LexError::io("<stdout>", e)
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| LexError::io("<stdout>", e.into()))?;
    writeln!(out).map_err(io_err)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(io_err)
}

fn load_corpus(args: &CorpusArgs, err: &mut dyn Write) -> Result<Corpus> {
    let (corpus, missing_end) = Corpus::load(&args.corpus, !args.keep_boilerplate)?;
    if missing_end {
        let _ = writeln!(
            err,
            "lexstat: warning: {} has a Gutenberg start marker but no end marker",
            args.corpus.display()
        );
    }
    Ok(corpus)
}

fn execute(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let digits = config.digits as usize;
    let num = |x: f64| format_sig(x, digits);
    match &config.command {
        Command::Words(cmd) => words(cmd, out),
        Command::Concord {
            corpus,
            word,
            width,
            sort,
            limit,
            output,
        } => {
            let c = load_corpus(corpus, err)?;
            let mut lines = concordance(&c, word, *width, sort.parse::<SortKey>()?)?;
            if let Some(limit) = limit {
                lines.truncate(*limit);
            }
            if output.json {
                return write_json(out, &json!({ "count": lines.len(), "lines": lines }));
            }
            let mut text = String::new();
            for l in &lines {
                text.push_str(&format!(
                    "{:>w$} | {} | {}\n",
                    l.left_context,
                    l.keyword,
                    l.right_context,
                    w = width
                ));
            }
            emit(out, &text)
        }
        Command::Colloc {
            corpus,
            keep_boilerplate,
            w1,
            w2,
            table,
            output,
        } => {
            let (report, w1, w2) = match table {
                Some(t) => {
                    let table = ContingencyTable2x2::parse(t)?;
                    let fisher = fisher_exact(&table)?;
                    let w1 = w1.clone().unwrap_or_else(|| "w1".into());
                    let w2 = w2.clone().unwrap_or_else(|| "w2".into());
                    (CollocationReport { table, fisher }, w1, w2)
                }
                None => {
                    let path = corpus.as_ref().expect("clap requires --corpus without --table");
                    let args = CorpusArgs {
                        corpus: path.clone(),
                        keep_boilerplate: *keep_boilerplate,
                    };
                    let c = load_corpus(&args, err)?;
                    let w1 = w1.clone().expect("clap requires --w1").to_ascii_lowercase();
                    let w2 = w2.clone().expect("clap requires --w2").to_ascii_lowercase();
                    (collocation_report(&c.tokens, &w1, &w2)?, w1, w2)
                }
            };
            if output.json {
                let t = &report.table;
                let f = &report.fisher;
                return write_json(
                    out,
                    &json!({
                        "w1": w1, "w2": w2,
                        "c11": t.c11, "c12": t.c12, "c21": t.c21, "c22": t.c22,
                        "row1": t.row1(), "row2": t.row2(), "col1": t.col1(), "col2": t.col2(),
                        "total": t.total(),
                        "expected_c11": f.expected_c11,
                        "p_left": f.p_left, "p_right": f.p_right, "p_two_sided": f.p_two_sided,
                        "point_prob": f.point_prob,
                    }),
                );
            }
            emit(out, &report.render(&w1, &w2, digits))
        }
        Command::Letters(LettersCommand::Freq { corpus, output }) => {
            let c = load_corpus(corpus, err)?;
            let table = letter_frequencies(&c.letters())?;
            if output.json {
                return write_json(out, &table);
            }
            match output.out {
                OutFormat::Csv => {
                    if output.header {
                        emit(out, "letter,count,proportion\n")?;
                    }
                    emit(out, &table.to_csv())
                }
                OutFormat::Text => {
                    let mut text = String::new();
                    for (i, (&c, &p)) in table.counts.iter().zip(&table.proportions).enumerate() {
                        text.push_str(&format!("{}\t{}\t{:.6}\n", (b'a' + i as u8) as char, c, p));
                    }
                    text.push_str(&format!("total\t{}\n", table.total));
                    emit(out, &text)
                }
            }
        }
        Command::Coupon(CouponCommand::Expect { source, output }) => {
            let p = coupon_probs(source)?;
            let e = expected_full_collection(&p)?;
            if output.json {
                return write_json(out, &json!({ "categories": p.len(), "expected": e }));
            }
            emit(out, &format!("{}\n", num(e)))
        }
        Command::Coupon(CouponCommand::Simulate {
            source,
            reps,
            seed,
            output,
        }) => {
            let p = coupon_probs(source)?;
            let sample = simulate_full_collection(&p, *reps as usize, *seed)?;
            let est = McEstimate::from_sample(&sample);
            if output.json {
                return write_json(out, &json!({ "seed": seed, "summary": est, "draws": sample }));
            }
            match output.out {
                OutFormat::Csv => write_lengths(out, &sample, output.header, "draws"),
                OutFormat::Text => emit(
                    out,
                    &format!(
                        "reps\t{}\nmean\t{}\nstd_error\t{}\n",
                        est.reps,
                        num(est.estimate),
                        num(est.std_error)
                    ),
                ),
            }
        }
        Command::Birthday(BirthdayCommand::Expect {
            source,
            reps,
            seed,
            output,
        }) => {
            let p = match (&source.uniform, &source.data) {
                (Some(n), _) => ProbabilityVector::uniform(*n)?,
                (None, Some(path)) => {
                    let days = load_day_counts(path)?;
                    if !days.zero_days.is_empty() {
                        let _ = writeln!(
                            err,
                            "lexstat: warning: {} day(s) have zero count and never occur",
                            days.zero_days.len()
                        );
                    }
                    days.probability_vector()?
                }
                (None, None) => unreachable!("clap enforces one source"),
            };
            let est = expected_first_repeat(&p, *reps as usize, *seed)?;
            let exact = expected_first_repeat_integral(&p);
            if output.json {
                return write_json(out, &json!({ "seed": seed, "monte_carlo": est, "integral": exact }));
            }
            emit(
                out,
                &format!(
                    "estimate\t{}\nstd_error\t{}\nreps\t{}\nintegral\t{}\n",
                    num(est.estimate),
                    num(est.std_error),
                    est.reps,
                    num(exact)
                ),
            )
        }
        Command::Birthday(BirthdayCommand::Weekdays { data, day1, output }) => {
            let days = load_day_counts(data)?;
            let summary = weekday_summary(&days.counts, day1.parse::<Weekday>()?);
            if output.json {
                return write_json(out, &summary);
            }
            let mut text = String::new();
            for d in Weekday::ALL {
                text.push_str(&format!("{:?}\t{}\n", d, num(summary.means[d.index()])));
            }
            text.push_str(&format!("weekend_ratio\t{}\n", num(summary.weekend_ratio)));
            emit(out, &text)
        }
        Command::Pangram(cmd) => pangram(cmd, digits, out, err),
    }
}

fn words(cmd: &WordsCommand, out: &mut dyn Write) -> Result<()> {
    let (list, output): (WordList, &Output);
    let hits: Vec<&str> = match cmd {
        WordsCommand::Crossword {
            wordlist,
            pattern,
            output: o,
        } => {
            let p = LetterPattern::parse_crossword(pattern)?;
            list = load_wordlist(wordlist)?;
            output = o;
            let fixed: Vec<(usize, char)> = p.fixed().collect();
            crossword_search(&list, p.length(), &fixed)?
        }
        WordsCommand::Hangman {
            wordlist,
            pattern,
            missed,
            output: o,
        } => {
            let p = LetterPattern::parse_hangman(pattern, missed)?;
            list = load_wordlist(wordlist)?;
            output = o;
            hangman_search(&list, &p)?
        }
        WordsCommand::Contains {
            wordlist,
            substring,
            output: o,
        } => {
            list = load_wordlist(wordlist)?;
            output = o;
            substring_search(&list, substring)?
        }
    };
    if output.json {
        return write_json(out, &json!({ "count": hits.len(), "words": hits }));
    }
    let mut text = String::new();
    if output.out == OutFormat::Csv && output.header {
        text.push_str("word\n");
    }
    for w in &hits {
        text.push_str(w);
        text.push('\n');
    }
    emit(out, &text)
}

fn coupon_probs(source: &CouponSource) -> Result<ProbabilityVector> {
    match (&source.freqs, source.uniform) {
        (Some(path), _) => load_letter_frequencies(path)?.probability_vector(),
        (None, Some(n)) => ProbabilityVector::uniform(n),
        (None, None) => unreachable!("clap enforces one source"),
    }
}

fn write_lengths(out: &mut dyn Write, values: &[u64], header: bool, name: &str) -> Result<()> {
    let mut text = String::with_capacity(values.len() * 6);
    if header {
        text.push_str(name);
        text.push('\n');
    }
    for v in values {
        text.push_str(&v.to_string());
        text.push('\n');
    }
    emit(out, &text)
}

fn sample_summary(sample: &LengthSample, digits: usize) -> String {
    let mut sorted = sample.lengths.clone();
    sorted.sort_unstable();
    let est = McEstimate::from_sample(&sample.lengths);
    format!(
        "samples\t{}\nmean\t{}\nstd_error\t{}\nmin\t{}\nmedian\t{}\nmax\t{}\n",
        sorted.len(),
        format_sig(est.estimate, digits),
        format_sig(est.std_error, digits),
        sorted[0],
        sorted[sorted.len() / 2],
        sorted[sorted.len() - 1],
    )
}

fn pangram(cmd: &PangramCommand, digits: usize, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match cmd {
        PangramCommand::Scan {
            corpus,
            samples,
            seed,
            start_mode,
            output,
        } => {
            let mode: StartMode = start_mode.parse()?;
            let c = load_corpus(corpus, err)?;
            let ws = sample_windows(&c, *samples as usize, *seed, mode)?;
            if output.json {
                return write_json(out, &ws);
            }
            match output.out {
                OutFormat::Csv => write_lengths(out, &ws.sample.lengths, output.header, "length"),
                OutFormat::Text => emit(
                    out,
                    &format!("{}discarded\t{}\n", sample_summary(&ws.sample, digits), ws.discarded),
                ),
            }
        }
        PangramCommand::Simulate {
            freqs,
            samples,
            seed,
            output,
        } => {
            let table = load_letter_frequencies(freqs)?;
            let sample = simulate_iid(&table, *samples as usize, *seed)?;
            if output.json {
                return write_json(out, &sample);
            }
            match output.out {
                OutFormat::Csv => write_lengths(out, &sample.lengths, output.header, "length"),
                OutFormat::Text => emit(out, &sample_summary(&sample, digits)),
            }
        }
        PangramCommand::Hist { input, bin, output } => {
            let text = std::fs::read_to_string(input).map_err(|e| LexError::io(input, e))?;
            let sample = LengthSample::parse_csv(&text, SampleSource::Corpus, Path::new(input))?;
            let h = histogram(&sample, *bin)?;
            if output.json {
                return write_json(out, &h);
            }
            if output.header {
                emit(out, "bin_lower,count\n")?;
            }
            emit(out, &h.to_csv())
        }
        PangramCommand::Gaps { corpus, letter, output } => {
            let c = load_corpus(corpus, err)?;
            let seq = c.letters();
            let gaps = letter_gap_stats(&seq, *letter)?;
            let iid_mean_gap = if gaps.count > 0 {
                Some(seq.len() as f64 / gaps.count as f64)
            } else {
                None
            };
            let ratio = iid_mean_gap.map(|g| gaps.max_gap as f64 / g);
            if output.json {
                return write_json(
                    out,
                    &json!({ "stats": gaps, "letters": seq.len(), "iid_mean_gap": iid_mean_gap, "max_gap_ratio": ratio }),
                );
            }
            let mut text = format!(
                "letter\t{}\ncount\t{}\nletters\t{}\nmax_gap\t{}\n",
                gaps.letter,
                gaps.count,
                seq.len(),
                gaps.max_gap
            );
            if let (Some(g), Some(r)) = (iid_mean_gap, ratio) {
                text.push_str(&format!(
                    "iid_mean_gap\t{}\nmax_gap_ratio\t{}\n",
                    format_sig(g, digits),
                    format_sig(r, digits)
                ));
            }
            emit(out, &text)
        }
    }
}
