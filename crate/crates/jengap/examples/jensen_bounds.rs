//! Every bound on the Jensen functional for one sample, side by side.
//!
//! Run: `cargo run --example jensen_bounds`

use jengap::bounds::jensen_bounds;
use jengap::{FunctionHandle, Interval, WeightedSample};

fn main() -> jengap::Result<()> {
    let e = Interval::new(0.0, 1.0)?;
    let s = WeightedSample::new(vec![0.1, 0.5, 0.9], vec![0.25, 0.5, 0.25])?;
    let f = FunctionHandle::exp();

    let rep = jensen_bounds(&s, e, &f, None)?;
    println!("f = {}, sample on [{}, {}]", f.describe(), e.lo(), e.hi());
    println!("J_n = {:.12}", rep.value);
    println!();
    for (name, b) in [
        ("global upper", &rep.global_upper),
        ("sharpened upper", &rep.sharpened_upper),
        ("sandwich lower", &rep.sandwich_lower),
        ("sandwich upper", &rep.sandwich_upper),
        ("converse lower", &rep.converse_lower),
        ("converse upper", &rep.converse_upper),
        ("two-sided lower", &rep.twosided_lower),
        ("two-sided upper", &rep.twosided_upper),
        ("corollary upper", &rep.corollary_upper),
    ] {
        if b.applicable {
            println!("{name:>16} [{:<7}] = {:.12}", b.source, b.value);
        } else {
            println!("{name:>16} [{:<7}]   not applicable here", b.source);
        }
    }
    for w in &rep.warnings {
        println!("warning: {w}");
    }
    Ok(())
}
