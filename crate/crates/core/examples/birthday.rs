//! Birthday problem with real birth counts: uneven days make a shared
//! birthday come slightly sooner.

use std::path::PathBuf;

use lexstat::alphastat::{
    expected_first_repeat, expected_first_repeat_integral, load_day_counts, weekday_summary, ProbabilityVector, Weekday,
};

fn main() -> lexstat::Result<()> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/births_1978.csv");
    let days = load_day_counts(&path)?;

    for (name, p) in [
        ("uniform", ProbabilityVector::uniform(365)?),
        ("US births 1978", days.probability_vector()?),
    ] {
        let mc = expected_first_repeat(&p, 200_000, 1978)?;
        println!(
            "{name:<15} simulated {:.3} ± {:.3}   integral {:.4}",
            mc.estimate,
            mc.std_error,
            expected_first_repeat_integral(&p)
        );
    }

    let summary = weekday_summary(&days.counts, Weekday::Sunday);
    for d in Weekday::ALL {
        println!("{d:?}\t{:.0}", summary.means[d.index()]);
    }
    println!("weekend / weekday = {:.3}", summary.weekend_ratio);
    Ok(())
}
