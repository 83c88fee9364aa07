//! Converse and refinement bounds on the Jensen and Jensen-Mercer
//! functionals, assembled into total reports: every bound is present
//! and flagged applicable or not, never silently omitted.

use serde::{Deserialize, Serialize};

use crate::characteristic::{characteristic_closed_form, CharacteristicEstimate};
use crate::error::{Error, Result};
use crate::functions::{second_derivative_range, FunctionHandle, SecondDerivRange};
use crate::sample::{
    jensen_functional, mercer_functional, mercer_quadratic_gap, quadratic_gap, Interval,
    WeightedSample,
};

/// One bound with its applicability flag and theorem tag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bound {
    pub value: f64,
    pub applicable: bool,
    pub source: String,
}

impl Bound {
    fn new(value: f64, applicable: bool, source: &str) -> Self {
        Self { value, applicable, source: source.to_string() }
    }

    fn unavailable(source: &str) -> Self {
        Self { value: 0.0, applicable: false, source: source.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JensenBoundReport {
    /// The functional value `J_n`.
    pub value: f64,
    /// `B = f(a) + f(b) - 2 f((a+b)/2)`, convex-only.
    pub global_upper: Bound,
    /// `c(f) B`, convex-only.
    pub sharpened_upper: Bound,
    /// `m/2 * Q`, any C^2 function.
    pub sandwich_lower: Bound,
    /// `M/2 * Q`, any C^2 function.
    pub sandwich_upper: Bound,
    /// `B + M/4 (2Q - (b-a)^2)`; note the max of `f''` in the lower bound.
    pub converse_lower: Bound,
    /// `B + m/4 (2Q - (b-a)^2)`.
    pub converse_upper: Bound,
    /// convex combination of the sandwich and converse sides, convex-only.
    pub twosided_lower: Bound,
    pub twosided_upper: Bound,
    /// `M/(m+M) * B`, convex-only.
    pub corollary_upper: Bound,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MercerBoundReport {
    /// The functional value `K_n`.
    pub value: f64,
    /// `2B`, convex-only.
    pub global_upper: Bound,
    /// `(1 + c(f)) B`, convex-only.
    pub sharpened_upper: Bound,
    /// `m/2 * Kq`, any C^2 function.
    pub sandwich_lower: Bound,
    /// `M/2 * Kq`, any C^2 function.
    pub sandwich_upper: Bound,
    pub warnings: Vec<String>,
}

/// Shared setup: sample/interval/domain checks, `B`, the `f''` range
/// (when bounded), convexity, and the resolved characteristic number.
struct BoundContext {
    big_b: f64,
    range: Option<SecondDerivRange>,
    convex: bool,
    c: Option<f64>,
    warnings: Vec<String>,
}

fn build_context(
    s: &WeightedSample,
    e: Interval,
    f: &FunctionHandle,
    supplied_c: Option<&CharacteristicEstimate>,
    tag: &'static str,
) -> Result<BoundContext> {
    if let Some(x) = e.first_outside(s) {
        return Err(Error::Precondition {
            tag,
            hypothesis: format!("x_i in [{}, {}] required, found {x}", e.lo(), e.hi()),
        });
    }
    if !f.domain().contains_interval(e) {
        return Err(Error::Domain(format!(
            "[{}, {}] is not inside the domain {} of {}",
            e.lo(),
            e.hi(),
            f.domain().describe(),
            f.describe()
        )));
    }
    let mut warnings = Vec::new();
    let big_b = f.eval(e.lo())? + f.eval(e.hi())? - 2.0 * f.eval(e.mid())?;
    let range = match second_derivative_range(f, e) {
        Ok(r) => Some(r),
        Err(Error::Unbounded(msg)) => {
            warnings.push(format!("second derivative range unavailable: {msg}"));
            None
        }
        Err(other) => return Err(other),
    };
    let convex = match range {
        Some(r) => {
            let tol = 1e-12 * r.min.abs().max(r.max.abs()).max(1.0);
            r.min >= -tol
        }
        // Unbounded f'' near an endpoint: decide convexity from the
        // sign of f'' strictly inside the interval instead.
        None => convexity_probe(f, e),
    };
    let closed = match characteristic_closed_form(f) {
        Ok(v) => v,
        Err(Error::Degenerate(_)) => None,
        Err(other) => return Err(other),
    };
    let c = match (supplied_c, closed) {
        (Some(sup), Some(cf)) => {
            if (sup.value - cf.value).abs() > 1e-6 {
                warnings.push(format!(
                    "supplied characteristic {} differs from closed form {} by more than 1e-6",
                    sup.value, cf.value
                ));
            }
            Some(sup.value)
        }
        (Some(sup), None) => Some(sup.value),
        (None, Some(cf)) => Some(cf.value),
        (None, None) => None,
    };
    Ok(BoundContext { big_b, range, convex, c, warnings })
}

/// Sign of `f''` sampled strictly inside `e`, for functions whose
/// second derivative blows up at an endpoint.
fn convexity_probe(f: &FunctionHandle, e: Interval) -> bool {
    let n = 33;
    let pad = e.width().max(1.0) * 1e-6;
    let (lo, hi) = (e.lo() + pad, e.hi() - pad);
    if lo >= hi {
        return false;
    }
    (0..n).all(|k| {
        let x = lo + (hi - lo) * (k as f64 + 0.5) / n as f64;
        f.second_derivative(x).map_or(false, |v| v >= -1e-12)
    })
}

/// Every theorem-level bound on `J_n(p, x; f)` for samples hosted by `e`.
/// A supplied characteristic estimate takes precedence over the closed
/// form (the caller may hold a sharper windowed value).
pub fn jensen_bounds(
    s: &WeightedSample,
    e: Interval,
    f: &FunctionHandle,
    c: Option<&CharacteristicEstimate>,
) -> Result<JensenBoundReport> {
    let ctx = build_context(s, e, f, c, "Thm2.1")?;
    let value = jensen_functional(s, f)?;
    let q = quadratic_gap(s);
    let w2 = e.width() * e.width();
    let big_b = ctx.big_b;

    let global_upper = Bound::new(big_b, ctx.convex, "Eq2");
    let sharpened_upper = match ctx.c {
        Some(c) => Bound::new(c * big_b, ctx.convex, "Eq4"),
        None => Bound::unavailable("Eq4"),
    };
    let (sandwich_lower, sandwich_upper, converse_lower, converse_upper) = match ctx.range {
        Some(r) => (
            Bound::new(0.5 * r.min * q, true, "Thm2.5"),
            Bound::new(0.5 * r.max * q, true, "Thm2.5"),
            Bound::new(big_b + 0.25 * r.max * (2.0 * q - w2), true, "Thm2.6"),
            Bound::new(big_b + 0.25 * r.min * (2.0 * q - w2), true, "Thm2.6"),
        ),
        None => (
            Bound::unavailable("Thm2.5"),
            Bound::unavailable("Thm2.5"),
            Bound::unavailable("Thm2.6"),
            Bound::unavailable("Thm2.6"),
        ),
    };
    let (twosided_lower, twosided_upper, corollary_upper) = match ctx.range {
        Some(r) if ctx.convex && r.min + r.max > 1e-14 * r.min.abs().max(r.max.abs()).max(1.0) => {
            let sum = r.min + r.max;
            let shared = r.min * r.max / sum * (q - 0.25 * w2);
            (
                Bound::new(r.min / sum * big_b + shared, true, "TwoSided"),
                Bound::new(r.max / sum * big_b + shared, true, "TwoSided"),
                Bound::new(r.max / sum * big_b, true, "Cor2.8"),
            )
        }
        _ => (
            Bound::unavailable("TwoSided"),
            Bound::unavailable("TwoSided"),
            Bound::unavailable("Cor2.8"),
        ),
    };
    Ok(JensenBoundReport {
        value,
        global_upper,
        sharpened_upper,
        sandwich_lower,
        sandwich_upper,
        converse_lower,
        converse_upper,
        twosided_lower,
        twosided_upper,
        corollary_upper,
        warnings: ctx.warnings,
    })
}

/// Every theorem-level bound on `K_n(p, x; f)`.
pub fn mercer_bounds(
    s: &WeightedSample,
    e: Interval,
    f: &FunctionHandle,
    c: Option<&CharacteristicEstimate>,
) -> Result<MercerBoundReport> {
    let ctx = build_context(s, e, f, c, "JensenMercer")?;
    let value = mercer_functional(s, e, f)?;
    let kq = mercer_quadratic_gap(s, e)?;
    let big_b = ctx.big_b;

    let global_upper = Bound::new(2.0 * big_b, ctx.convex, "Eq3");
    let sharpened_upper = match ctx.c {
        Some(c) => Bound::new((1.0 + c) * big_b, ctx.convex, "Eq5"),
        None => Bound::unavailable("Eq5"),
    };
    let (sandwich_lower, sandwich_upper) = match ctx.range {
        Some(r) => (
            Bound::new(0.5 * r.min * kq, true, "Thm2.9"),
            Bound::new(0.5 * r.max * kq, true, "Thm2.9"),
        ),
        None => (Bound::unavailable("Thm2.9"), Bound::unavailable("Thm2.9")),
    };
    Ok(MercerBoundReport {
        value,
        global_upper,
        sharpened_upper,
        sandwich_lower,
        sandwich_upper,
        warnings: ctx.warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half_half(a: f64, b: f64) -> WeightedSample {
        WeightedSample::new(vec![a, b], vec![0.5, 0.5]).unwrap()
    }

    fn itv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    // Frozen hand evaluation for f = exp on [0, 1], p = (1/2, 1/2),
    // x = (0, 1): m = 1, M = e, Q = 1/4, B = 1 + e - 2 sqrt(e).
    #[test]
    fn exp_unit_interval_spot_values() {
        let e = std::f64::consts::E;
        let b = 1.0 + e - 2.0 * e.sqrt();
        let rep = jensen_bounds(
            &half_half(0.0, 1.0),
            itv(0.0, 1.0),
            &FunctionHandle::exp(),
            None,
        )
        .unwrap();
        let close = |x: f64, y: f64| (x - y).abs() <= 1e-12 * y.abs().max(1.0);
        assert!(close(rep.value, 0.5 * (1.0 + e) - e.sqrt()));
        assert!(close(rep.global_upper.value, b));
        assert!(rep.global_upper.applicable);
        assert!(close(rep.sandwich_lower.value, 0.125));
        assert!(close(rep.sandwich_upper.value, e / 8.0));
        assert!(close(rep.converse_lower.value, b - e / 8.0));
        assert!(close(rep.converse_upper.value, b - 0.125));
        assert!(close(rep.twosided_lower.value, b / (1.0 + e)));
        assert!(close(rep.twosided_upper.value, e * b / (1.0 + e)));
        assert!(close(rep.corollary_upper.value, e * b / (1.0 + e)));
        // no closed form and no declared class: Eq4 is flagged off
        assert!(!rep.sharpened_upper.applicable);
        // ordering around the value
        for lo in [&rep.sandwich_lower, &rep.converse_lower, &rep.twosided_lower] {
            assert!(lo.value <= rep.value + 1e-9);
        }
        for hi in [
            &rep.global_upper,
            &rep.sandwich_upper,
            &rep.converse_upper,
            &rep.twosided_upper,
            &rep.corollary_upper,
        ] {
            assert!(hi.value >= rep.value - 1e-9);
        }
    }

    #[test]
    fn quadratic_sandwich_is_tight() {
        let s = WeightedSample::new(vec![0.2, 0.9, 0.4], vec![0.3, 0.3, 0.4]).unwrap();
        let rep =
            jensen_bounds(&s, itv(0.0, 1.0), &FunctionHandle::pow(2.0), None).unwrap();
        assert!((rep.sandwich_lower.value - rep.value).abs() < 1e-14);
        assert!((rep.sandwich_upper.value - rep.value).abs() < 1e-14);
    }

    #[test]
    fn constant_sample_all_bounds_bracket_zero() {
        let s = WeightedSample::uniform(vec![0.5, 0.5]).unwrap();
        let rep = jensen_bounds(&s, itv(0.0, 1.0), &FunctionHandle::exp(), None).unwrap();
        assert!(rep.value.abs() < 1e-14);
        assert!(rep.sandwich_lower.value <= 1e-14);
        assert!(rep.converse_lower.value <= 1e-14);
        assert!(rep.twosided_lower.value <= 1e-14);
        assert!(rep.sandwich_upper.value >= -1e-14);
        assert!(rep.global_upper.value >= -1e-14);
    }

    #[test]
    fn logit_nonconvex_flags() {
        let s = WeightedSample::uniform(vec![0.3, 0.6]).unwrap();
        let e = itv(0.25, 0.75);
        let rep = jensen_bounds(&s, e, &FunctionHandle::logit(), None).unwrap();
        let m = (1.0 - 0.5) / (0.25f64 * 0.75).powi(2); // 14.222...
        let q = quadratic_gap(&s);
        assert!(!rep.global_upper.applicable);
        assert!(!rep.twosided_lower.applicable);
        assert!(!rep.corollary_upper.applicable);
        assert!(rep.sandwich_lower.applicable);
        assert!((rep.sandwich_upper.value - 0.5 * m * q).abs() < 1e-9);
        assert!((rep.sandwich_lower.value + 0.5 * m * q).abs() < 1e-9);
        assert!(rep.sandwich_lower.value - 1e-9 <= rep.value);
        assert!(rep.value <= rep.sandwich_upper.value + 1e-9);
    }

    #[test]
    fn unbounded_second_derivative_flags_not_fatal() {
        let s = WeightedSample::uniform(vec![0.2, 0.8]).unwrap();
        let rep = jensen_bounds(&s, itv(0.0, 1.0), &FunctionHandle::pow(1.5), None).unwrap();
        assert!(!rep.sandwich_lower.applicable);
        assert!(!rep.converse_upper.applicable);
        assert!(!rep.twosided_lower.applicable);
        // pow(1.5) is convex, detected by the interior probe
        assert!(rep.global_upper.applicable);
        assert!(!rep.warnings.is_empty());
    }

    #[test]
    fn mercer_quadratic_equality_case() {
        let s = WeightedSample::new(vec![0.5], vec![1.0]).unwrap();
        let rep =
            mercer_bounds(&s, itv(0.0, 1.0), &FunctionHandle::pow(2.0), None).unwrap();
        assert!((rep.value - 0.5).abs() < 1e-15);
        assert!((rep.global_upper.value - 1.0).abs() < 1e-15);
        assert!((rep.sharpened_upper.value - 0.75).abs() < 1e-15);
        assert!((rep.sandwich_lower.value - 0.5).abs() < 1e-15);
        assert!((rep.sandwich_upper.value - 0.5).abs() < 1e-15);
    }

    #[test]
    fn mercer_exp_sandwich_brackets_value() {
        let s = WeightedSample::uniform(vec![0.25, 0.75]).unwrap();
        let rep = mercer_bounds(&s, itv(0.0, 1.0), &FunctionHandle::exp(), None).unwrap();
        assert!(rep.sandwich_lower.value - 1e-9 <= rep.value);
        assert!(rep.value <= rep.sandwich_upper.value + 1e-9);
    }

    #[test]
    fn degenerate_interval_zeroes_everything() {
        let s = WeightedSample::uniform(vec![2.0, 2.0]).unwrap();
        let rep = jensen_bounds(&s, itv(2.0, 2.0), &FunctionHandle::exp(), None).unwrap();
        assert_eq!(rep.value, 0.0);
        assert!(rep.global_upper.value.abs() < 1e-14);
        assert!(rep.sandwich_upper.value.abs() < 1e-14);
        assert!(rep.twosided_upper.value.abs() < 1e-14);
    }

    #[test]
    fn outside_point_is_precondition_error() {
        let s = WeightedSample::uniform(vec![0.5, 1.5]).unwrap();
        let r = jensen_bounds(&s, itv(0.0, 1.0), &FunctionHandle::exp(), None);
        assert!(matches!(r, Err(Error::Precondition { tag: "Thm2.1", .. })));
    }

    #[test]
    fn supplied_characteristic_wins_with_warning() {
        let s = half_half(1.0, 2.0);
        let supplied = CharacteristicEstimate {
            value: 0.49,
            method: crate::characteristic::CharacteristicMethod::Numeric,
            argmax: None,
            window: None,
        };
        let rep = jensen_bounds(
            &s,
            itv(1.0, 2.0),
            &FunctionHandle::pow(2.0),
            Some(&supplied),
        )
        .unwrap();
        let b = rep.global_upper.value;
        assert!((rep.sharpened_upper.value - 0.49 * b).abs() < 1e-12);
        assert_eq!(rep.warnings.len(), 1);
    }
}
