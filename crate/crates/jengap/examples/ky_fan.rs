//! Ky Fan ratio bounds: the converse factor S(a, b) on (0, 1/2], and
//! the two-sided T_n factor on symmetric intervals [a, 1-a].
//!
//! Run: `cargo run --example ky_fan`

use jengap::applications::kyfan_report;
use jengap::{Interval, WeightedSample};

fn main() -> jengap::Result<()> {
    // classical regime: all points at or below 1/2
    let e = Interval::new(0.25, 0.5)?;
    let s = WeightedSample::uniform(vec![0.25, 0.5])?;
    let rep = kyfan_report(&s, e)?;
    println!("converse regime on [{}, {}]:", e.lo(), e.hi());
    println!("  A/A' = {:.12}", rep.a_ratio);
    println!("  G/G' = {:.12}", rep.g_ratio);
    println!("  S(a, b) = {:.12}", rep.converse_factor.unwrap());
    println!(
        "  G/G' <= A/A' <= S*G/G' = {:.12}",
        rep.converse_factor.unwrap() * rep.g_ratio
    );

    // symmetric regime: points may exceed 1/2, two-sided factor applies
    let e = Interval::new(0.3, 0.7)?;
    let s = WeightedSample::uniform(vec![0.35, 0.6, 0.65])?;
    let rep = kyfan_report(&s, e)?;
    let t = rep.symmetric_factor.unwrap();
    println!("\nsymmetric regime on [{}, {}]:", e.lo(), e.hi());
    println!("  A/A' = {:.12}", rep.a_ratio);
    println!("  G/G' = {:.12}", rep.g_ratio);
    println!("  T_n  = {:.12}  (sample-dependent)", t);
    println!("  explicit cap = {:.12}", rep.explicit_factor.unwrap());
    println!("  G/(T G') = {:.12} <= A/A' <= T G/G' = {:.12}", rep.g_ratio / t, t * rep.g_ratio);
    Ok(())
}
