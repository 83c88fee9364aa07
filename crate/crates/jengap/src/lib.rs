//! Jensen and Jensen-Mercer gaps for weighted samples, with the full
//! family of converse and refinement bounds: the global endpoint
//! converse, its characteristic-number sharpening, second-derivative
//! sandwich bounds that survive non-convexity, and applications to
//! classical means, power means, Ky Fan ratios, and moment gaps. A
//! seeded randomized harness stress-tests every inequality.
//!
//! Entry points:
//! - [`sample::jensen_functional`] / [`sample::mercer_functional`] —
//!   the two gap functionals.
//! - [`bounds::jensen_bounds`] / [`bounds::mercer_bounds`] — one call,
//!   every applicable bound, with non-applicable ones flagged.
//! - [`characteristic`] — the characteristic number `c(f)` in closed
//!   form or by windowed numeric search.
//! - [`applications`] — means, power means, Ky Fan, moments.
//! - [`verify`] — the randomized verification harness.
//!
//! The `jengap` binary exposes all of it on the command line; the
//! `examples/` directory shows one runnable program per capability.

pub mod applications;
pub mod bounds;
pub mod characteristic;
pub mod cli;
pub mod csv;
pub mod error;
mod golden;
pub mod functions;
pub mod json;
pub mod sample;
pub mod verify;

pub use error::{Error, Result};
pub use functions::{FunctionHandle, FunctionKind, SecondDerivRange, VariationClass};
pub use sample::{Interval, WeightedSample};
