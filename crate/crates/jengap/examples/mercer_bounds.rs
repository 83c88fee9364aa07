//! The Jensen-Mercer functional and its bounds, including the
//! sandwich that also covers non-convex functions.
//!
//! Run: `cargo run --example mercer_bounds`

use jengap::bounds::mercer_bounds;
use jengap::{FunctionHandle, Interval, WeightedSample};

fn main() -> jengap::Result<()> {
    let e = Interval::new(0.3, 0.7)?;
    let s = WeightedSample::uniform(vec![0.35, 0.45, 0.65])?;

    // logit is neither convex nor concave on a symmetric window, yet
    // the second-derivative sandwich still brackets K_n
    for f in [FunctionHandle::pow(2.0), FunctionHandle::logit()] {
        let rep = mercer_bounds(&s, e, &f, None)?;
        println!("f = {}", f.describe());
        println!("  K_n              = {:+.12}", rep.value);
        println!(
            "  global   [{}]   = {:+.12}  (applicable: {})",
            rep.global_upper.source, rep.global_upper.value, rep.global_upper.applicable
        );
        println!(
            "  sandwich [{}] = {:+.12} .. {:+.12}",
            rep.sandwich_lower.source, rep.sandwich_lower.value, rep.sandwich_upper.value
        );
        assert!(rep.sandwich_lower.value <= rep.value + 1e-12);
        assert!(rep.value <= rep.sandwich_upper.value + 1e-12);
        println!();
    }
    Ok(())
}
