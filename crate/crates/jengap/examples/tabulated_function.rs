//! Bounds for a function only known through tabulated samples: the
//! spline interpolant supplies f'' by finite differences, and the
//! sampled range method feeds the sandwich bounds.
//!
//! Run: `cargo run --example tabulated_function`

use jengap::bounds::jensen_bounds;
use jengap::functions::{second_derivative_range, FunctionKind, TabulatedFunction};
use jengap::{FunctionHandle, Interval, WeightedSample};

fn main() -> jengap::Result<()> {
    // tabulate cosh on [0, 2]; the library never learns the formula
    let xs: Vec<f64> = (0..=80).map(|i| i as f64 * 0.025).collect();
    let ys: Vec<f64> = xs.iter().map(|x| x.cosh()).collect();
    let f = FunctionHandle::new(FunctionKind::Table(TabulatedFunction::new(xs, ys)?));

    let e = Interval::new(0.2, 1.8)?;
    let r = second_derivative_range(&f, e)?;
    println!(
        "sampled f'' range on [{}, {}]: [{:.6}, {:.6}] (true: [{:.6}, {:.6}])",
        e.lo(),
        e.hi(),
        r.min,
        r.max,
        0.2f64.cosh(),
        1.8f64.cosh()
    );

    let s = WeightedSample::uniform(vec![0.3, 0.9, 1.5])?;
    let rep = jensen_bounds(&s, e, &f, None)?;
    println!("J_n = {:.9}", rep.value);
    println!(
        "sandwich: {:.9} .. {:.9}",
        rep.sandwich_lower.value, rep.sandwich_upper.value
    );
    println!("global upper: {:.9}", rep.global_upper.value);
    for w in &rep.warnings {
        println!("warning: {w}");
    }
    Ok(())
}
