//! Classical and power means with the interval-level comparison caps.
//!
//! Run: `cargo run --example means_and_power_means`

use jengap::applications::{
    classical_means, mean_comparison_bounds, power_mean, power_mean_gap_bound,
};
use jengap::{Interval, WeightedSample};

fn main() -> jengap::Result<()> {
    let e = Interval::new(1.0, 4.0)?;
    let s = WeightedSample::new(vec![1.0, 2.0, 4.0], vec![0.2, 0.5, 0.3])?;

    let m = classical_means(&s)?;
    println!("A = {:.12}  G = {:.12}  H = {:.12}", m.arithmetic, m.geometric, m.harmonic);

    let (quotient_cap, difference_cap) = mean_comparison_bounds(e)?;
    println!("quotient cap  (a+b)^2/4ab     = {quotient_cap:.12}");
    println!("difference cap (sqrt b - sqrt a)^2 = {difference_cap:.12}");
    println!("A/G = {:.12}, A/H = {:.12}", m.arithmetic / m.geometric, m.arithmetic / m.harmonic);
    println!("A-G = {:.12}, G-H = {:.12}", m.arithmetic - m.geometric, m.geometric - m.harmonic);

    println!("\npower means (monotone in alpha; alpha = 0 is the geometric mean):");
    for alpha in [-2.0, -1.0, 0.0, 0.5, 1.0, 2.0, 3.0] {
        println!("  P_{alpha:<4} = {:.12}", power_mean(&s, alpha)?);
    }

    let alpha = 0.5;
    let gap = s.mean() - power_mean(&s, alpha)?;
    let cap = power_mean_gap_bound(e, alpha)?;
    println!("\nA - P_{alpha} = {gap:.12} <= cap {cap:.12}");
    Ok(())
}
