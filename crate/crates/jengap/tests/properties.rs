//! Property-based checks over random samples, intervals, and functions.

use proptest::prelude::*;

use jengap::applications::power_mean;
use jengap::functions::{second_derivative_range, Convexity};
use jengap::json::to_json_string;
use jengap::sample::{
    jensen_functional, mercer_functional, mercer_quadratic_gap, quadratic_gap,
};
use jengap::verify::VerificationReport;
use jengap::{FunctionHandle, Interval, WeightedSample};

fn itv(lo: f64, hi: f64) -> Interval {
    Interval::new(lo, hi).unwrap()
}

/// Sample hosted by [lo, hi]: 1..8 points with positive raw weights.
fn hosted_sample(lo: f64, hi: f64) -> impl Strategy<Value = WeightedSample> {
    prop::collection::vec((lo..=hi, 0.01f64..1.0), 1..8).prop_map(|pairs| {
        let (pts, ws): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        WeightedSample::from_unnormalized(pts, ws).unwrap()
    })
}

fn convex_catalog() -> impl Strategy<Value = FunctionHandle> {
    prop_oneof![
        Just(FunctionHandle::exp()),
        Just(FunctionHandle::neg_log()),
        Just(FunctionHandle::x_log_x()),
        (1.1f64..4.0).prop_map(FunctionHandle::pow),
        Just(FunctionHandle::pow(2.0)),
    ]
}

proptest! {
    // Q computed two ways: moment form vs definition J_n(.; x^2)
    #[test]
    fn quadratic_gap_identity(s in hosted_sample(0.0, 5.0)) {
        let q = quadratic_gap(&s);
        let j = jensen_functional(&s, &FunctionHandle::pow(2.0)).unwrap();
        let scale = q.abs().max(1.0);
        prop_assert!((q - j).abs() <= 1e-12 * scale, "Q = {q}, J(x^2) = {j}");
        prop_assert!(q >= 0.0);
    }

    #[test]
    fn mercer_gap_identity(s in hosted_sample(0.5, 2.0)) {
        let e = itv(0.5, 2.0);
        let kq = mercer_quadratic_gap(&s, e).unwrap();
        let k = mercer_functional(&s, e, &FunctionHandle::pow(2.0)).unwrap();
        prop_assert!((kq - k).abs() <= 1e-12 * kq.abs().max(1.0));
        prop_assert!(kq >= -1e-15);
    }

    #[test]
    fn jensen_and_mercer_nonnegative_for_convex(
        f in convex_catalog(),
        s in hosted_sample(0.5, 2.0),
    ) {
        let e = itv(0.5, 2.0);
        let j = jensen_functional(&s, &f).unwrap();
        let k = mercer_functional(&s, e, &f).unwrap();
        prop_assert!(j >= -1e-12, "{}: J = {j}", f.describe());
        prop_assert!(k >= -1e-12, "{}: K = {k}", f.describe());
    }

    // the reported (m, M) really bracket f'' on a grid
    #[test]
    fn second_derivative_range_brackets(
        f in convex_catalog(),
        t in 0.0f64..=1.0,
    ) {
        let e = itv(0.5, 2.0);
        let r = second_derivative_range(&f, e).unwrap();
        let x = e.lo() + t * (e.hi() - e.lo());
        let v = f.second_derivative(x).unwrap();
        let tol = 1e-9 * v.abs().max(1.0);
        prop_assert!(r.min - tol <= v && v <= r.max + tol,
            "{}''({x}) = {v} outside [{}, {}]", f.describe(), r.min, r.max);
    }

    // logit'' is odd about 1/2, so its range on [c, 1-c] is symmetric
    #[test]
    fn logit_range_is_symmetric(c in 0.05f64..0.45) {
        let r = second_derivative_range(&FunctionHandle::logit(), itv(c, 1.0 - c)).unwrap();
        prop_assert!((r.min + r.max).abs() <= 1e-9 * r.max.abs().max(1.0));
    }

    #[test]
    fn power_mean_monotone_in_alpha(
        s in hosted_sample(0.1, 10.0),
        lo in -3.0f64..3.0,
        delta in 0.01f64..2.0,
    ) {
        let hi = lo + delta;
        let p_lo = power_mean(&s, lo).unwrap();
        let p_hi = power_mean(&s, hi).unwrap();
        prop_assert!(p_lo <= p_hi + 1e-11 * p_hi.abs().max(1.0));
    }

    // positive scaling multiplies J, K, and both range endpoints
    #[test]
    fn scale_equivariance(s in hosted_sample(0.5, 2.0)) {
        let e = itv(0.5, 2.0);
        let f = FunctionHandle::x_log_x();
        let g = f.clone().scaled(2.0).unwrap();
        let j = jensen_functional(&s, &f).unwrap();
        let j2 = jensen_functional(&s, &g).unwrap();
        prop_assert_eq!(2.0 * j, j2);
        let k = mercer_functional(&s, e, &f).unwrap();
        let k2 = mercer_functional(&s, e, &g).unwrap();
        prop_assert_eq!(2.0 * k, k2);
        let r = second_derivative_range(&f, e).unwrap();
        let r2 = second_derivative_range(&g, e).unwrap();
        prop_assert_eq!(2.0 * r.min, r2.min);
        prop_assert_eq!(2.0 * r.max, r2.max);
    }

    #[test]
    fn convexity_classification_matches_sign(sexp in 0.1f64..3.0) {
        let f = FunctionHandle::pow(sexp);
        let e = itv(0.5, 2.0);
        let got = jengap::functions::classify_convexity(&f, e).unwrap();
        let expect = if sexp > 1.0 {
            Convexity::Convex
        } else if sexp < 1.0 {
            Convexity::Concave
        } else {
            Convexity::Convex // affine boundary counts as (weakly) convex
        };
        prop_assert_eq!(got, expect);
    }
}

// JSON round-trip of a full verification report is bit-exact
#[test]
fn verify_report_json_round_trip() {
    use jengap::verify::{verify_inequalities, VerificationConfig};
    let tags: Vec<String> = ["Thm2.5", "Thm2.6"].iter().map(|s| s.to_string()).collect();
    let cfg = VerificationConfig::new(FunctionHandle::exp(), itv(0.0, 1.0), tags)
        .with_trials(200)
        .with_seed(5);
    let rep = verify_inequalities(&cfg).unwrap();
    let json = to_json_string(&rep).unwrap();
    let back: VerificationReport = serde_json::from_str(&json).unwrap();
    assert_eq!(rep, back);
    assert_eq!(json, to_json_string(&back).unwrap());
}
