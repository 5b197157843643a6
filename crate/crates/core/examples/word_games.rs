//! Crossword and hangman lookups against a wordlist.
//!
//!     cargo run -p lexstat --example word_games -- /path/to/crosswd.txt
//!
//! Without an argument a small built-in list is used.

use lexstat::textio::{load_wordlist, WordList};
use lexstat::wordplay::{crossword_search, hangman_search, substring_search, LetterPattern};

const SAMPLE: &str = "jambeau\njamboree\nbedbugs\nbedrugs\nzephyrs\nvellums\nbetters\nsmiles\nsimile\n";

fn main() -> lexstat::Result<()> {
    let list = match std::env::args_os().nth(1) {
        Some(path) => load_wordlist(path)?,
        None => WordList::from_lines(SAMPLE.lines(), "<built-in>"),
    };
    println!("{} words from {}", list.len(), list.source_path.display());

    // seven letters, 4th is b, 7th is u
    let hits = crossword_search(&list, 7, &[(3, 'b'), (6, 'u')])?;
    println!("...b..u        -> {hits:?}");

    // e and s revealed; t, a, o, i, n guessed and missed
    let pattern = LetterPattern::parse_hangman("_e____s", "taoin")?;
    let hits = hangman_search(&list, &pattern)?;
    println!("_e____s -taoin -> {} words: {hits:?}", hits.len());

    let hits = substring_search(&list, "mile")?;
    println!("*mile*         -> {hits:?}");
    Ok(())
}
