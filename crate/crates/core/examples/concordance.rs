//! Keyword-in-context listing sorted by the word before the keyword.
//!
//!     cargo run -p lexstat --example concordance -- corpus.txt up

use lexstat::concordance::{concordance, SortKey};
use lexstat::textio::Corpus;

const SAMPLE: &str = "\
He was sick and began to throw up. She gave up the game, then added up the bill.
They picked him up at noon; the sun came up early and the crowd stood up to cheer.";

fn main() -> lexstat::Result<()> {
    let mut args = std::env::args_os().skip(1);
    let corpus = match args.next() {
        Some(path) => Corpus::load(path, true)?.0,
        None => Corpus::new(SAMPLE),
    };
    let word = args
        .next()
        .map_or("up".to_string(), |w| w.to_string_lossy().into_owned());

    let lines = concordance(&corpus, &word, 30, SortKey::LeftWord)?;
    for l in &lines {
        println!("{:>30} [{}] {}", l.left_context, l.keyword, l.right_context);
    }
    println!("{} occurrences of {word:?}", lines.len());
    Ok(())
}
