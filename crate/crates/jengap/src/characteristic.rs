//! Characteristic number `c(f)`: the supremum over two-point
//! distributions of the Jensen gap normalized by its global bound.
//! Closed forms for power functions and `x log x`, `c = 1` for declared
//! slowly/rapidly varying functions, and a windowed grid estimator
//! otherwise.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::{FunctionHandle, FunctionKind, VariationClass};
use crate::golden;
use crate::sample::Interval;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CharacteristicMethod {
    ClosedForm,
    DeclaredVariation,
    Numeric,
}

/// Argument of the two-point supremum: weight `p` on `a`, `1 - p` on `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupArgument {
    pub p: f64,
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacteristicEstimate {
    pub value: f64,
    pub method: CharacteristicMethod,
    /// Best `(p, a, b)` found by the numeric estimator.
    pub argmax: Option<SupArgument>,
    /// Search window of a numeric estimate; such estimates are lower
    /// estimates of the supremum restricted to this window.
    pub window: Option<Interval>,
}

impl CharacteristicEstimate {
    fn closed(value: f64) -> Self {
        Self { value, method: CharacteristicMethod::ClosedForm, argmax: None, window: None }
    }
}

/// Closed form of `c(x^s)`; requires `s > 0`, `s != 1`.
fn power_closed_form(s: f64) -> f64 {
    if s < 1.0 {
        (1.0 - s) * s.powf(s / (1.0 - s)) / ((1.0 - s).exp2() - 1.0)
    } else {
        (s - 1.0) * s.powf(s / (1.0 - s)) / (1.0 - (1.0 - s).exp2())
    }
}

/// Characteristic number from a known closed form or from the declared
/// variation class. `Ok(None)` when neither applies.
pub fn characteristic_closed_form(f: &FunctionHandle) -> Result<Option<CharacteristicEstimate>> {
    let degenerate = |what: &str| {
        Err(Error::Degenerate(format!(
            "c(f) is undefined for {what}: the normalizing bracket vanishes identically"
        )))
    };
    match f.kind() {
        FunctionKind::Affine(..) => return degenerate("affine functions"),
        FunctionKind::Pow(s) => {
            if *s == 0.0 || *s == 1.0 {
                return degenerate(&format!("pow:{s}"));
            }
            if *s < 0.0 {
                return Ok(Some(CharacteristicEstimate::closed(1.0)));
            }
            return Ok(Some(CharacteristicEstimate::closed(power_closed_form(*s))));
        }
        // -x^s for 0 < s < 1 is convex with the same normalized
        // two-point ratio as x^s, so the same closed form applies.
        FunctionKind::NegPow(s) if *s > 0.0 && *s < 1.0 => {
            return Ok(Some(CharacteristicEstimate::closed(power_closed_form(*s))));
        }
        FunctionKind::XLogX => {
            let v = 1.0 / (std::f64::consts::E * std::f64::consts::LN_2);
            return Ok(Some(CharacteristicEstimate::closed(v)));
        }
        _ => {}
    }
    if f.variation_class() != VariationClass::None {
        return Ok(Some(CharacteristicEstimate {
            value: 1.0,
            method: CharacteristicMethod::DeclaredVariation,
            argmax: None,
            window: None,
        }));
    }
    Ok(None)
}

/// Proof-side oracle for `c(x^s)`: one-dimensional maximization of
/// `(q - q^s) / (1 - 2^{1-s})` over `q` in `(0, 1)`, independent of the
/// closed form.
pub fn characteristic_oracle_power(s: f64) -> Result<f64> {
    if !(s > 0.0) || s == 1.0 {
        return Err(Error::Degenerate(format!("oracle requires s > 0, s != 1, got {s}")));
    }
    let denom = 1.0 - (1.0 - s).exp2();
    let h = |q: f64| (q - q.powf(s)) / denom;
    let (_, v) = golden::maximize(h, 1e-14, 1.0 - 1e-14, 1e-12);
    Ok(v)
}

/// Grid/refinement parameters of the numeric estimator.
#[derive(Debug, Clone, Copy)]
pub struct NumericConfig {
    /// Grid resolution along the weight axis.
    pub p_cells: usize,
    /// Grid resolution along each endpoint axis.
    pub ab_cells: usize,
    /// Refinement rounds around the best cell.
    pub rounds: usize,
    /// Shrink factor of the search box per round.
    pub shrink: f64,
}

impl Default for NumericConfig {
    fn default() -> Self {
        Self { p_cells: 64, ab_cells: 64, rounds: 4, shrink: 4.0 }
    }
}

/// Denominator floor below which a cell counts as affine-degenerate.
const DEGENERATE_FLOOR: f64 = 1e-14;
/// Denominator floor below which a cell is skipped as too noisy to
/// contribute a trustworthy ratio (cancellation in `f(a)+f(b)-2f(mid)`).
const NOISE_FLOOR: f64 = 1e-8;

/// Windowed numeric estimate of `c(f)`: deterministic grid over weight
/// and endpoint pairs followed by local refinement of the best cell.
/// The result is a lower estimate of the sup restricted to `window`.
pub fn characteristic_numeric(
    f: &FunctionHandle,
    window: Interval,
    cfg: NumericConfig,
) -> Result<CharacteristicEstimate> {
    if !f.domain().contains_interval(window) {
        return Err(Error::Domain(format!(
            "window [{}, {}] is not inside the domain {} of {}",
            window.lo(),
            window.hi(),
            f.domain().describe(),
            f.describe()
        )));
    }
    if window.is_degenerate() {
        return Err(Error::Degenerate("window must have positive width".into()));
    }
    let eval = |x: f64| f.eval(x);
    let ratio = |p: f64, a: f64, b: f64| -> Option<(f64, bool)> {
        let (fa, fb) = (eval(a).ok()?, eval(b).ok()?);
        let fm = eval(0.5 * (a + b)).ok()?;
        let den = fa + fb - 2.0 * fm;
        let scale = fa.abs().max(fb.abs()).max(fm.abs()).max(1.0);
        if den.abs() < DEGENERATE_FLOOR * scale {
            return Some((f64::NEG_INFINITY, true));
        }
        if den.abs() < NOISE_FLOOR * scale {
            return Some((f64::NEG_INFINITY, false));
        }
        let num = p * fa + (1.0 - p) * fb - eval(p * a + (1.0 - p) * b).ok()?;
        Some((num / den, false))
    };

    let mut best: Option<(f64, SupArgument)> = None;
    let mut all_degenerate = true;
    let scan = |p_lo: f64,
                    p_hi: f64,
                    a_lo: f64,
                    a_hi: f64,
                    b_lo: f64,
                    b_hi: f64,
                    best: &mut Option<(f64, SupArgument)>,
                    all_degenerate: &mut bool| {
        for i in 0..cfg.p_cells {
            let p = p_lo + (p_hi - p_lo) * (i as f64 + 0.5) / cfg.p_cells as f64;
            if p <= 0.0 || p >= 1.0 {
                continue;
            }
            for j in 0..cfg.ab_cells {
                let a = a_lo + (a_hi - a_lo) * (j as f64 + 0.5) / cfg.ab_cells as f64;
                for k in 0..cfg.ab_cells {
                    let b = b_lo + (b_hi - b_lo) * (k as f64 + 0.5) / cfg.ab_cells as f64;
                    if !(window.lo() <= a && a < b && b <= window.hi()) {
                        continue;
                    }
                    if let Some((r, degenerate)) = ratio(p, a, b) {
                        if !degenerate {
                            *all_degenerate = false;
                        }
                        if r.is_finite()
                            && best.as_ref().map_or(true, |(rb, _)| r > *rb)
                        {
                            *best = Some((r, SupArgument { p, a, b }));
                        }
                    }
                }
            }
        }
    };

    let (mut p_lo, mut p_hi) = (0.0, 1.0);
    let (mut a_lo, mut a_hi) = (window.lo(), window.hi());
    let (mut b_lo, mut b_hi) = (window.lo(), window.hi());
    scan(p_lo, p_hi, a_lo, a_hi, b_lo, b_hi, &mut best, &mut all_degenerate);
    if best.is_none() {
        if all_degenerate {
            return Err(Error::Degenerate(format!(
                "every grid pair has a vanishing bracket: {} is affine on the window",
                f.describe()
            )));
        }
        return Err(Error::Numeric(
            "no grid cell produced a trustworthy ratio on the window".into(),
        ));
    }
    for _ in 0..cfg.rounds {
        let (_, arg) = best.unwrap();
        let wp = (p_hi - p_lo) / cfg.shrink;
        let wa = (a_hi - a_lo) / cfg.shrink;
        let wb = (b_hi - b_lo) / cfg.shrink;
        p_lo = (arg.p - 0.5 * wp).max(0.0);
        p_hi = (arg.p + 0.5 * wp).min(1.0);
        a_lo = (arg.a - 0.5 * wa).max(window.lo());
        a_hi = (arg.a + 0.5 * wa).min(window.hi());
        b_lo = (arg.b - 0.5 * wb).max(window.lo());
        b_hi = (arg.b + 0.5 * wb).min(window.hi());
        scan(p_lo, p_hi, a_lo, a_hi, b_lo, b_hi, &mut best, &mut all_degenerate);
    }
    let (value, argmax) = best.unwrap();
    Ok(CharacteristicEstimate {
        value,
        method: CharacteristicMethod::Numeric,
        argmax: Some(argmax),
        window: Some(window),
    })
}
