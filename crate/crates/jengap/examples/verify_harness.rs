//! Randomized verification of a bound family, with slack statistics.
//!
//! Run: `cargo run --release --example verify_harness`

use jengap::verify::{verify_inequalities, VerificationConfig};
use jengap::{FunctionHandle, Interval, VariationClass};

fn main() -> jengap::Result<()> {
    let tags: Vec<String> = ["Eq2", "Eq4", "Thm2.5", "Thm2.6", "TwoSided", "Cor2.8"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let cfg = VerificationConfig::new(
        FunctionHandle::exp().with_variation(VariationClass::RapidlyVarying),
        Interval::new(0.0, 1.0)?,
        tags,
    )
    .with_trials(50_000)
    .with_seed(2024)
    .with_n_range(1, 10)
    .parallel(true);

    let rep = verify_inequalities(&cfg)?;
    println!("trials = {}, violations = {}", rep.trials, rep.violations);
    println!(
        "{:<16} {:>8} {:>14}  histogram (rel slack decades, tight -> loose)",
        "bound", "checks", "min rel slack"
    );
    for (key, stat) in &rep.bounds {
        println!(
            "{key:<16} {:>8} {:>14.6e}  {:?}",
            stat.checks, stat.min_rel_slack, stat.histogram
        );
    }
    if let Some(tight) = rep.bounds["Eq2.upper"].tightest.as_ref() {
        println!(
            "\ntightest Eq2.upper instance (trial {}): points {:?}",
            tight.trial, tight.points
        );
    }
    Ok(())
}
