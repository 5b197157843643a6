//! Pangrammatic windows: the shortest stretch of text, from a given start,
//! that uses all 26 letters.
//!
//!     cargo run -p lexstat --example pangram_windows -- christmas_carol.txt

use std::path::PathBuf;

use lexstat::alphastat::letter_frequencies;
use lexstat::pangram::{histogram, letter_gap_stats, sample_windows, scan_window, simulate_iid, StartMode};
use lexstat::textio::{letters_of, Corpus};

fn main() -> lexstat::Result<()> {
    let quote = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/carol_window.txt");
    let text = lexstat::textio::read_text(&quote)?;
    let seq = letters_of(&text);
    let w = scan_window(&seq, 0)?;
    println!(
        "block quote: {} letters, window of {} closed by {:?}",
        seq.len(),
        w.length,
        w.last_letter.unwrap_or('?')
    );

    let Some(path) = std::env::args_os().nth(1) else {
        println!("pass a full etext to sample windows and compare with independent letters");
        return Ok(());
    };
    let (corpus, _) = Corpus::load(path, true)?;
    let seq = corpus.letters();
    let windows = sample_windows(&corpus, 1000, 1843, StartMode::Paragraph)?;
    let iid = simulate_iid(&letter_frequencies(&seq)?, 1000, 1843)?;
    for (name, sample) in [("text", &windows.sample), ("i.i.d.", &iid)] {
        let h = histogram(sample, 250)?;
        println!(
            "{name:<7} mean {:>7.1}  mode bin {:>5}  share above 7500 {:.3}",
            sample.mean(),
            h.mode_bin(),
            sample.fraction_above(7500)
        );
    }
    for letter in ['j', 'q', 'x', 'z'] {
        let g = letter_gap_stats(&seq, letter)?;
        println!("{letter}: {} occurrences, longest gap {} letters", g.count, g.max_gap);
    }
    Ok(())
}
