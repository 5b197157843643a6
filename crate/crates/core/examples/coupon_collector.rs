//! How many random letters until every letter of the alphabet has shown up?
//! Exact expectation by quadrature, checked by simulation.

use std::path::PathBuf;

use lexstat::alphastat::{
    expected_full_collection, load_letter_frequencies, simulate_full_collection, McEstimate, ProbabilityVector,
};

fn main() -> lexstat::Result<()> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/carol_letter_freqs.csv");
    let english = load_letter_frequencies(&path)?.probability_vector()?;
    let uniform = ProbabilityVector::uniform(26)?;

    for (name, p) in [("uniform", &uniform), ("A Christmas Carol", &english)] {
        let exact = expected_full_collection(p)?;
        let sim = McEstimate::from_sample(&simulate_full_collection(p, 20_000, 7)?);
        println!(
            "{name:<18} integral {exact:>9.2}   simulated {:>9.2} ± {:.2}",
            sim.estimate, sim.std_error
        );
    }
    Ok(())
}
