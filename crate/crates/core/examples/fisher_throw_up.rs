//! Is "throw up" a collocation? Fisher's exact test on bigram counts from a
//! one-million-word corpus, compared with a pair that is not.

use lexstat::collocation::{collocation_report, fisher_exact, CollocationReport, ContingencyTable2x2};
use lexstat::textio::tokenize;

fn main() -> lexstat::Result<()> {
    for (w1, table) in [
        ("throw", ContingencyTable2x2::new(8, 1966, 141, 1_012_197)),
        ("take", ContingencyTable2x2::new(1, 1815, 148, 1_012_348)),
    ] {
        let report = CollocationReport {
            table,
            fisher: fisher_exact(&table)?,
        };
        print!("{}", report.render(w1, "up", 4));
        println!();
    }

    // the same computation straight from text
    let tokens = tokenize("Don't throw up on the rug. He threw it up. Throw up, throw out, throw up.");
    let report = collocation_report(&tokens, "throw", "up")?;
    print!("{}", report.render("throw", "up", 4));
    Ok(())
}
