//! Means with converses, Ky Fan bounds and statistical moment bounds.

use serde::{Deserialize, Serialize};

use crate::characteristic::characteristic_closed_form;
use crate::error::{Error, Result};
use crate::functions::FunctionHandle;
use crate::sample::{quadratic_gap, Interval, WeightedSample};

/// Weighted arithmetic, geometric and harmonic means.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeansSummary {
    pub arithmetic: f64,
    pub geometric: f64,
    pub harmonic: f64,
}

fn require_positive(s: &WeightedSample) -> Result<()> {
    if let Some(x) = s.points().iter().find(|&&x| !(x > 0.0)) {
        return Err(Error::Domain(format!("means require positive points, found {x}")));
    }
    Ok(())
}

/// Weighted A, G, H of a positive sample.
pub fn classical_means(s: &WeightedSample) -> Result<MeansSummary> {
    require_positive(s)?;
    let arithmetic = s.mean();
    let geometric = s.mean_of(|x| Ok(x.ln()))?.exp();
    let harmonic = 1.0 / s.mean_of(|x| Ok(1.0 / x))?;
    Ok(MeansSummary { arithmetic, geometric, harmonic })
}

/// Converses for the A/G/H quotients and differences over `[a, b]`:
/// every quotient is at most `(a+b)^2 / (4ab)` and every difference at
/// most `(sqrt b - sqrt a)^2`.
pub fn mean_comparison_bounds(e: Interval) -> Result<(f64, f64)> {
    let (a, b) = (e.lo(), e.hi());
    if !(a > 0.0) {
        return Err(Error::Domain(format!("interval must satisfy 0 < a <= b, got a = {a}")));
    }
    let quotient = (a + b) * (a + b) / (4.0 * a * b);
    let diff = (b.sqrt() - a.sqrt()).powi(2);
    Ok((quotient, diff))
}

/// Power mean `P_alpha = (sum w_i x_i^alpha)^{1/alpha}`, with the
/// geometric mean at `alpha = 0`.
pub fn power_mean(s: &WeightedSample, alpha: f64) -> Result<f64> {
    require_positive(s)?;
    if alpha == 0.0 {
        return Ok(s.mean_of(|x| Ok(x.ln()))?.exp());
    }
    Ok(s.mean_of(|x| Ok(x.powf(alpha)))?.powf(1.0 / alpha))
}

/// Upper bound on the arithmetic / power-mean gap over `[a, b]`:
/// `A - P_alpha` for `0 < alpha < 1` and `P_alpha - A` for `alpha > 1`.
pub fn power_mean_gap_bound(e: Interval, alpha: f64) -> Result<f64> {
    let (a, b) = (e.lo(), e.hi());
    if !(a > 0.0) {
        return Err(Error::Domain(format!("interval must satisfy 0 < a <= b, got a = {a}")));
    }
    if alpha <= 0.0 || alpha == 1.0 {
        return Err(Error::Degenerate(format!(
            "power-mean gap bound is vacuous for alpha = {alpha}"
        )));
    }
    let power_mid = (0.5 * (a.powf(alpha) + b.powf(alpha))).powf(1.0 / alpha);
    let mid = 0.5 * (a + b);
    let coeff_base = alpha.powf(alpha / (1.0 - alpha));
    if alpha < 1.0 {
        // Eq. 6: bounds A - P_alpha
        let coeff = 2.0 * (1.0 - alpha) * coeff_base / (1.0 - ((alpha - 1.0) / alpha).exp2());
        Ok(coeff * (mid - power_mid))
    } else {
        // Eq. 7: bounds P_alpha - A
        let coeff = 2.0 * (alpha - 1.0) * coeff_base / (((alpha - 1.0) / alpha).exp2() - 1.0);
        Ok(coeff * (power_mid - mid))
    }
}

/// Ky Fan ratios and every applicable converse factor. Converse and
/// two-sided fields require `b <= 1/2`; the symmetric fields require
/// `e = [a, 1-a]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KyFanReport {
    /// `sum w x / sum w (1 - x)`
    pub a_ratio: f64,
    /// `prod x^w / prod (1 - x)^w`
    pub g_ratio: f64,
    /// `S(a, b) = (1-a)(1-b)(a+b)^2 / (ab (2-a-b)^2)`
    pub converse_factor: Option<f64>,
    /// `exp(((1/2 - b) / (b(1-b))^2) Q)`
    pub twosided_lower_factor: Option<f64>,
    /// `exp(((1/2 - a) / (a(1-a))^2) Q)`
    pub twosided_upper_factor: Option<f64>,
    /// `T_n = exp((1 - 2a) Q / (2 (a(1-a))^2))` on symmetric intervals
    pub symmetric_factor: Option<f64>,
    /// `exp((1 - 2a)^3 / (8 (a(1-a))^2))`, the explicit symmetric cap
    pub explicit_factor: Option<f64>,
}

const SYMMETRY_TOL: f64 = 1e-12;

pub fn kyfan_report(s: &WeightedSample, e: Interval) -> Result<KyFanReport> {
    let (a, b) = (e.lo(), e.hi());
    if !(a > 0.0 && b < 1.0) {
        return Err(Error::Domain(format!(
            "Ky Fan needs [a, b] inside (0, 1), got [{a}, {b}]"
        )));
    }
    let converse_regime = b <= 0.5;
    let symmetric = (a + b - 1.0).abs() <= SYMMETRY_TOL;
    if !converse_regime && !symmetric {
        return Err(Error::Precondition {
            tag: "Thm3.4",
            hypothesis: format!(
                "0 < a <= x_i <= b <= 1/2 (or the symmetric interval [a, 1-a]) required, \
                 got [{a}, {b}]"
            ),
        });
    }
    if let Some(x) = e.first_outside(s) {
        return Err(Error::Precondition {
            tag: "Thm3.4",
            hypothesis: format!("0 < a <= x_i <= b <= 1/2 required, found x_i = {x}"),
        });
    }
    let mean = s.mean();
    let a_ratio = mean / (1.0 - mean);
    let g_log = s.mean_of(|x| Ok(x.ln() - (1.0 - x).ln()))?;
    let g_ratio = g_log.exp();
    let q = quadratic_gap(s);

    let (converse_factor, twosided_lower_factor, twosided_upper_factor) = if converse_regime {
        let s_ab = (1.0 - a) * (1.0 - b) * (a + b) * (a + b)
            / (a * b * (2.0 - a - b) * (2.0 - a - b));
        let m = (1.0 - 2.0 * b) / (b * (1.0 - b)).powi(2);
        let big_m = (1.0 - 2.0 * a) / (a * (1.0 - a)).powi(2);
        (
            Some(s_ab),
            Some((0.5 * m * q).exp()),
            Some((0.5 * big_m * q).exp()),
        )
    } else {
        (None, None, None)
    };
    let (symmetric_factor, explicit_factor) = if symmetric {
        let u = (a * (1.0 - a)).powi(2);
        let t = ((1.0 - 2.0 * a) / (2.0 * u) * q).exp();
        let explicit = ((1.0 - 2.0 * a).powi(3) / (8.0 * u)).exp();
        (Some(t), Some(explicit))
    } else {
        (None, None)
    };
    Ok(KyFanReport {
        a_ratio,
        g_ratio,
        converse_factor,
        twosided_lower_factor,
        twosided_upper_factor,
        symmetric_factor,
        explicit_factor,
    })
}

/// Which way the moment gap is oriented so that it is nonnegative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GapOrientation {
    /// `E(X^s) - (EX)^s`, for `s > 1`
    ExsMinusExPow,
    /// `(EX)^s - E(X^s)`, for `0 < s < 1`
    ExPowMinusExs,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentBoundReport {
    pub s: f64,
    /// Nonnegative moment gap, oriented per Jensen's moment inequality.
    pub gap: f64,
    pub variance_lower: f64,
    pub variance_upper: f64,
    /// `c(x^s) |a^s + b^s - 2 ((a+b)/2)^s|`
    pub char_upper: f64,
    pub orientation: GapOrientation,
}

/// Variance and characteristic bounds on the moment gap of a discrete
/// distribution supported on `e`.
pub fn moment_bounds(s: &WeightedSample, e: Interval, order: f64) -> Result<MomentBoundReport> {
    let (a, b) = (e.lo(), e.hi());
    if order <= 0.0 || order == 1.0 {
        return Err(Error::Degenerate(format!(
            "moment bounds are vacuous for order {order}"
        )));
    }
    if a < 0.0 || (order < 2.0 && a <= 0.0) {
        return Err(Error::Domain(format!(
            "order {order} needs a {} 0, got a = {a}",
            if order < 2.0 { ">" } else { ">=" }
        )));
    }
    if let Some(x) = e.first_outside(s) {
        return Err(Error::Precondition {
            tag: "Thm3.8",
            hypothesis: format!("a <= X <= b required, found x_i = {x}"),
        });
    }
    let ex = s.mean();
    let exs = s.mean_of(|x| Ok(x.powf(order)))?;
    let var = quadratic_gap(s);
    let (gap, orientation) = if order > 1.0 {
        (exs - ex.powf(order), GapOrientation::ExsMinusExPow)
    } else {
        (ex.powf(order) - exs, GapOrientation::ExPowMinusExs)
    };
    // Thm 3.8: coefficients follow the monotonicity of f'' = s(s-1) x^{s-2}.
    let coeff = 0.5 * order * (order - 1.0).abs();
    let pow_at = |x: f64| if x == 0.0 && order == 2.0 { 1.0 } else { x.powf(order - 2.0) };
    let (variance_lower, variance_upper) = if order >= 2.0 {
        (coeff * pow_at(a) * var, coeff * pow_at(b) * var)
    } else {
        (coeff * pow_at(b) * var, coeff * pow_at(a) * var)
    };
    // Thm 3.9 with the orientation corrected to match Jensen's moment
    // inequality; the printed magnitude is kept.
    let c = characteristic_closed_form(&FunctionHandle::pow(order))?
        .expect("power closed form exists for s > 0, s != 1")
        .value;
    let bracket =
        (a.powf(order) + b.powf(order) - 2.0 * (0.5 * (a + b)).powf(order)).abs();
    let char_upper = c * bracket;
    Ok(MomentBoundReport {
        s: order,
        gap,
        variance_lower,
        variance_upper,
        char_upper,
        orientation,
    })
}
