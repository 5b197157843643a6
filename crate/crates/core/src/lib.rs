//! Corpus statistics for word games, collocations and pangrams.
//!
//! The crate is organised around the kinds of question it answers:
//!
//! - [`textio`] turns wordlists and prose etexts into words, tokens,
//!   paragraphs and letters-only sequences.
//! - [`wordplay`] answers crossword, hangman and substring queries over a
//!   wordlist.
//! - [`concordance`] builds keyword-in-context listings sorted by a
//!   neighbouring word.
//! - [`collocation`] counts bigram 2×2 tables and runs Fisher's exact test.
//! - [`alphastat`] covers letter frequencies, the unequal-probability coupon
//!   collector expectation, and the birthday first-repeat problem.
//! - [`pangram`] finds pangrammatic windows in text and compares them with
//!   i.i.d. letter streams.
//! - [`cli`] is the `lexstat` command-line front end.
//!
//! Every randomized routine takes an explicit seed. Replicate `r` draws from
//! its own ChaCha stream derived from `(seed, r)`, so results do not depend
//! on how many threads rayon uses.
//!
//! Runnable walkthroughs live in `crates/core/examples/`, e.g.
//! `cargo run -p lexstat --example fisher_throw_up`.

pub mod alphastat;
pub mod cli;
pub mod collocation;
pub mod concordance;
mod error;
pub mod numeric;
pub mod pangram;
pub mod textio;
pub mod wordplay;

pub use error::{LexError, Result};
