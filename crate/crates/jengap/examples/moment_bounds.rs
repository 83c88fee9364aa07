//! Gap between E(X^s) and (EX)^s for a discrete distribution, bounded
//! by weighted-variance sandwiches and the characteristic-number cap.
//!
//! Run: `cargo run --example moment_bounds`

use jengap::applications::moment_bounds;
use jengap::{Interval, WeightedSample};

fn main() -> jengap::Result<()> {
    let e = Interval::new(0.5, 2.0)?;
    let s = WeightedSample::new(vec![0.5, 1.0, 2.0], vec![0.3, 0.4, 0.3])?;

    for order in [0.5, 1.5, 2.0, 3.0] {
        let rep = moment_bounds(&s, e, order)?;
        println!("s = {order}: gap = {:.12} ({:?})", rep.gap, rep.orientation);
        println!("  variance bounds: {:.12} .. {:.12}", rep.variance_lower, rep.variance_upper);
        println!("  characteristic cap: {:.12}", rep.char_upper);
        assert!(rep.variance_lower <= rep.gap + 1e-12);
        assert!(rep.gap <= rep.variance_upper + 1e-12);
        assert!(rep.gap <= rep.char_upper + 1e-12);
    }
    Ok(())
}
