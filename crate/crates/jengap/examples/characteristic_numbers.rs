//! Characteristic numbers c(f): closed forms, the independent
//! golden-section oracle, and the windowed numeric grid estimator.
//!
//! Run: `cargo run --example characteristic_numbers`

use jengap::characteristic::{
    characteristic_closed_form, characteristic_numeric, characteristic_oracle_power,
    NumericConfig,
};
use jengap::{FunctionHandle, Interval};

fn main() -> jengap::Result<()> {
    println!("{:>8} {:>20} {:>20}", "s", "closed form", "oracle");
    for s in [0.25, 0.5, 0.75, 1.5, 2.0, 3.0, 5.0] {
        let cf = characteristic_closed_form(&FunctionHandle::pow(s))?.unwrap();
        let oracle = characteristic_oracle_power(s)?;
        println!("{s:>8} {:>20.15} {oracle:>20.15}", cf.value);
    }

    let xlogx = characteristic_closed_form(&FunctionHandle::x_log_x())?.unwrap();
    println!("\nc(x log x) = {:.15}  (= 1/(e ln 2))", xlogx.value);

    // the numeric estimator searches two-point distributions on a window
    let window = Interval::new(0.01, 100.0)?;
    let est = characteristic_numeric(&FunctionHandle::x_log_x(), window, NumericConfig::default())?;
    println!("numeric estimate on [{}, {}]: {:.15}", window.lo(), window.hi(), est.value);
    if let Some(arg) = est.argmax {
        println!("attained near p = {:.6}, (a, b) = ({:.6}, {:.6})", arg.p, arg.a, arg.b);
    }
    Ok(())
}
