//! Catalog of scalar functions: evaluation, second derivatives and
//! extrema of the second derivative over a closed interval.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::golden;
use crate::sample::Interval;

/// Margin (in abscissa) that a range query must keep from an open
/// domain endpoint with a singular second derivative.
pub const SINGULARITY_MARGIN: f64 = 1e-9;

/// Asymptotic growth class, declared by the caller and never inferred.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VariationClass {
    #[default]
    None,
    SlowlyVarying,
    RapidlyVarying,
}

/// Natural cubic spline through tabulated `(x, y)` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TabulatedFunction {
    xs: Vec<f64>,
    ys: Vec<f64>,
    /// Spline moments (second derivatives at the knots).
    moments: Vec<f64>,
}

impl TabulatedFunction {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::Construction(
                "tabulated function needs equally many abscissae and ordinates".into(),
            ));
        }
        if xs.len() < 3 {
            return Err(Error::Construction(
                "tabulated function needs at least 3 points".into(),
            ));
        }
        if xs.iter().chain(ys.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Construction("tabulated values must be finite".into()));
        }
        if xs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Construction(
                "tabulated abscissae must be strictly increasing".into(),
            ));
        }
        let moments = natural_spline_moments(&xs, &ys);
        Ok(Self { xs, ys, moments })
    }

    pub fn lo(&self) -> f64 {
        self.xs[0]
    }

    pub fn hi(&self) -> f64 {
        *self.xs.last().unwrap()
    }

    fn segment(&self, x: f64) -> usize {
        match self.xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(i) => i.min(self.xs.len() - 2),
            Err(i) => i.saturating_sub(1).min(self.xs.len() - 2),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let i = self.segment(x);
        let h = self.xs[i + 1] - self.xs[i];
        let t = self.xs[i + 1] - x;
        let u = x - self.xs[i];
        (self.moments[i] * t * t * t + self.moments[i + 1] * u * u * u) / (6.0 * h)
            + (self.ys[i] / h - self.moments[i] * h / 6.0) * t
            + (self.ys[i + 1] / h - self.moments[i + 1] * h / 6.0) * u
    }
}

/// Tridiagonal solve for natural cubic spline moments.
fn natural_spline_moments(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    let n = xs.len();
    let mut sub = vec![0.0; n];
    let mut diag = vec![1.0; n];
    let mut sup = vec![0.0; n];
    let mut rhs = vec![0.0; n];
    for i in 1..n - 1 {
        let h0 = xs[i] - xs[i - 1];
        let h1 = xs[i + 1] - xs[i];
        sub[i] = h0 / 6.0;
        diag[i] = (h0 + h1) / 3.0;
        sup[i] = h1 / 6.0;
        rhs[i] = (ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0;
    }
    // Thomas algorithm; boundary rows pin the natural conditions m_0 = m_{n-1} = 0.
    for i in 1..n {
        let w = sub[i] / diag[i - 1];
        diag[i] -= w * sup[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    let mut m = vec![0.0; n];
    m[n - 1] = rhs[n - 1] / diag[n - 1];
    for i in (0..n - 1).rev() {
        m[i] = (rhs[i] - sup[i] * m[i + 1]) / diag[i];
    }
    m
}

/// Function domain, derived from the catalog kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Reals,
    /// `[0, +inf)`
    NonNegative,
    /// `(0, +inf)`
    Positive,
    /// `(0, 1)`
    UnitOpen,
    /// closed `[lo, hi]`
    Closed(f64, f64),
}

impl Domain {
    pub fn contains(&self, x: f64) -> bool {
        if !x.is_finite() {
            return false;
        }
        match *self {
            Domain::Reals => true,
            Domain::NonNegative => x >= 0.0,
            Domain::Positive => x > 0.0,
            Domain::UnitOpen => x > 0.0 && x < 1.0,
            Domain::Closed(lo, hi) => x >= lo && x <= hi,
        }
    }

    pub fn contains_interval(&self, e: Interval) -> bool {
        self.contains(e.lo()) && self.contains(e.hi())
    }

    pub fn describe(&self) -> String {
        match *self {
            Domain::Reals => "(-inf, +inf)".into(),
            Domain::NonNegative => "[0, +inf)".into(),
            Domain::Positive => "(0, +inf)".into(),
            Domain::UnitOpen => "(0, 1)".into(),
            Domain::Closed(lo, hi) => format!("[{lo}, {hi}]"),
        }
    }
}

/// Catalog of scalar function kinds used by the bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionKind {
    /// `x^s`
    Pow(f64),
    /// `e^x`
    Exp,
    /// `-log x`
    NegLog,
    /// `x log x`
    XLogX,
    /// `log((1 - x) / x)` on `(0, 1)`
    Logit,
    /// `-x^s`
    NegPow(f64),
    /// `c0 + c1 x`
    Affine(f64, f64),
    /// cubic-interpolated table, the escape hatch for everything else
    Table(TabulatedFunction),
}

/// A scalar function together with its declared variation class and a
/// positive multiplier (handy for scale-equivariance checks).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionHandle {
    kind: FunctionKind,
    #[serde(default)]
    variation_class: VariationClass,
    #[serde(default = "one")]
    scale: f64,
}

fn one() -> f64 {
    1.0
}

impl FunctionHandle {
    pub fn new(kind: FunctionKind) -> Self {
        Self { kind, variation_class: VariationClass::None, scale: 1.0 }
    }

    pub fn with_variation(mut self, class: VariationClass) -> Self {
        self.variation_class = class;
        self
    }

    /// Multiply the function by `alpha > 0`.
    pub fn scaled(mut self, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::Construction("scale must be positive and finite".into()));
        }
        self.scale *= alpha;
        Ok(self)
    }

    pub fn pow(s: f64) -> Self {
        Self::new(FunctionKind::Pow(s))
    }

    pub fn exp() -> Self {
        Self::new(FunctionKind::Exp)
    }

    pub fn neg_log() -> Self {
        Self::new(FunctionKind::NegLog)
    }

    pub fn x_log_x() -> Self {
        Self::new(FunctionKind::XLogX)
    }

    pub fn logit() -> Self {
        Self::new(FunctionKind::Logit)
    }

    pub fn affine(c0: f64, c1: f64) -> Self {
        Self::new(FunctionKind::Affine(c0, c1))
    }

    pub fn kind(&self) -> &FunctionKind {
        &self.kind
    }

    pub fn variation_class(&self) -> VariationClass {
        self.variation_class
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn domain(&self) -> Domain {
        match &self.kind {
            FunctionKind::Pow(s) | FunctionKind::NegPow(s) => {
                if *s >= 0.0 {
                    Domain::NonNegative
                } else {
                    Domain::Positive
                }
            }
            FunctionKind::Exp | FunctionKind::Affine(..) => Domain::Reals,
            FunctionKind::NegLog | FunctionKind::XLogX => Domain::Positive,
            FunctionKind::Logit => Domain::UnitOpen,
            FunctionKind::Table(t) => Domain::Closed(t.lo(), t.hi()),
        }
    }

    fn check_domain(&self, x: f64) -> Result<()> {
        if self.domain().contains(x) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{x} is outside the domain {} of {}",
                self.domain().describe(),
                self.describe()
            )))
        }
    }

    pub fn describe(&self) -> String {
        let base = match &self.kind {
            FunctionKind::Pow(s) => format!("pow:{s}"),
            FunctionKind::Exp => "exp".into(),
            FunctionKind::NegLog => "neglog".into(),
            FunctionKind::XLogX => "xlogx".into(),
            FunctionKind::Logit => "logit".into(),
            FunctionKind::NegPow(s) => format!("negpow:{s}"),
            FunctionKind::Affine(c0, c1) => format!("affine:{c0},{c1}"),
            FunctionKind::Table(_) => "table".into(),
        };
        match self.variation_class {
            VariationClass::None => base,
            VariationClass::SlowlyVarying => format!("{base}@slow"),
            VariationClass::RapidlyVarying => format!("{base}@rapid"),
        }
    }

    /// Evaluate the function at `x`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        let v = match &self.kind {
            FunctionKind::Pow(s) => x.powf(*s),
            FunctionKind::Exp => x.exp(),
            FunctionKind::NegLog => -x.ln(),
            FunctionKind::XLogX => x * x.ln(),
            FunctionKind::Logit => ((1.0 - x) / x).ln(),
            FunctionKind::NegPow(s) => -x.powf(*s),
            FunctionKind::Affine(c0, c1) => c0 + c1 * x,
            FunctionKind::Table(t) => t.eval(x),
        };
        let v = self.scale * v;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Numeric(format!("{}({x}) is not finite", self.describe())))
        }
    }

    /// Second derivative at an interior point. Analytic for catalog
    /// kinds, central finite difference for tabulated functions.
    pub fn second_derivative(&self, x: f64) -> Result<f64> {
        if !self.strictly_inside(x) {
            return Err(Error::Domain(format!(
                "{x} is not strictly inside the domain {} of {}",
                self.domain().describe(),
                self.describe()
            )));
        }
        let v = match &self.kind {
            FunctionKind::Pow(s) => s * (s - 1.0) * x.powf(s - 2.0),
            FunctionKind::Exp => x.exp(),
            FunctionKind::NegLog => 1.0 / (x * x),
            FunctionKind::XLogX => 1.0 / x,
            FunctionKind::Logit => {
                let u = x * (1.0 - x);
                (1.0 - 2.0 * x) / (u * u)
            }
            FunctionKind::NegPow(s) => -s * (s - 1.0) * x.powf(s - 2.0),
            FunctionKind::Affine(..) => 0.0,
            FunctionKind::Table(t) => {
                let h = f64::EPSILON.powf(0.25) * x.abs().max(1.0);
                let h = h.min((t.hi() - x).min(x - t.lo()));
                if h <= 0.0 {
                    return Err(Error::Domain("point too close to the table edge".into()));
                }
                (t.eval(x + h) - 2.0 * t.eval(x) + t.eval(x - h)) / (h * h)
            }
        };
        let v = self.scale * v;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Numeric(format!("{}''({x}) is not finite", self.describe())))
        }
    }

    /// Where `f''` exists: the open interior, plus a closed boundary
    /// at 0 for powers whose second derivative stays finite there.
    fn strictly_inside(&self, x: f64) -> bool {
        if !x.is_finite() {
            return false;
        }
        let zero_ok = matches!(
            self.kind,
            FunctionKind::Pow(s) | FunctionKind::NegPow(s) if s * (s - 1.0) == 0.0 || s >= 2.0
        );
        match self.domain() {
            Domain::Reals => true,
            Domain::NonNegative => x > 0.0 || (x == 0.0 && zero_ok),
            Domain::Positive => x > 0.0,
            Domain::UnitOpen => x > 0.0 && x < 1.0,
            Domain::Closed(lo, hi) => x > lo && x < hi,
        }
    }
}

/// How a [`SecondDerivRange`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RangeMethod {
    Analytic,
    Sampled,
}

/// Minimum and maximum of `f''` over a closed interval, with locations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecondDerivRange {
    pub min: f64,
    pub max: f64,
    pub arg_min: f64,
    pub arg_max: f64,
    pub method: RangeMethod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convexity {
    Convex,
    Concave,
    Neither,
}

/// Number of Chebyshev sample nodes for the sampled range method.
const RANGE_SAMPLES: usize = 1025;
/// Abscissa tolerance of the golden-section refinement.
const RANGE_XTOL: f64 = 1e-10;

/// Extrema of the second derivative over `e`, which must sit inside
/// the function's domain (at least [`SINGULARITY_MARGIN`] away from an
/// open endpoint where `f''` blows up).
pub fn second_derivative_range(f: &FunctionHandle, e: Interval) -> Result<SecondDerivRange> {
    second_derivative_range_with(f, e, SINGULARITY_MARGIN)
}

pub fn second_derivative_range_with(
    f: &FunctionHandle,
    e: Interval,
    margin: f64,
) -> Result<SecondDerivRange> {
    check_range_domain(f, e, margin)?;
    let (lo, hi) = (e.lo(), e.hi());
    let at = |x: f64| f.second_derivative(x);
    let endpoint_range = |xa: f64, xb: f64| -> Result<SecondDerivRange> {
        let (va, vb) = (at(xa)?, at(xb)?);
        let (min, arg_min, max, arg_max) =
            if va <= vb { (va, xa, vb, xb) } else { (vb, xb, va, xa) };
        Ok(SecondDerivRange { min, max, arg_min, arg_max, method: RangeMethod::Analytic })
    };
    match f.kind() {
        FunctionKind::Affine(..) => Ok(SecondDerivRange {
            min: 0.0,
            max: 0.0,
            arg_min: lo,
            arg_max: lo,
            method: RangeMethod::Analytic,
        }),
        // All remaining catalog kinds have monotone f'' on their domain,
        // so the extrema sit at the endpoints.
        FunctionKind::Pow(_)
        | FunctionKind::NegPow(_)
        | FunctionKind::Exp
        | FunctionKind::NegLog
        | FunctionKind::XLogX
        | FunctionKind::Logit => endpoint_range(lo, hi),
        FunctionKind::Table(_) => sampled_range(f, e),
    }
}

fn check_range_domain(f: &FunctionHandle, e: Interval, margin: f64) -> Result<()> {
    if !f.domain().contains_interval(e) {
        return Err(Error::Domain(format!(
            "[{}, {}] is not inside the domain {} of {}",
            e.lo(),
            e.hi(),
            f.domain().describe(),
            f.describe()
        )));
    }
    let singular_at_zero = match f.kind() {
        FunctionKind::Pow(s) | FunctionKind::NegPow(s) => {
            // f'' = +-s(s-1) x^{s-2}: singular at 0 unless the
            // coefficient vanishes or the exponent is nonnegative.
            s * (s - 1.0) != 0.0 && *s < 2.0
        }
        FunctionKind::NegLog | FunctionKind::XLogX => true,
        FunctionKind::Logit => {
            if e.hi() > 1.0 - margin {
                return Err(Error::Unbounded(format!(
                    "logit'' blows up at 1; [{}, {}] must stay {margin} inside (0, 1)",
                    e.lo(),
                    e.hi()
                )));
            }
            true
        }
        _ => false,
    };
    if singular_at_zero && e.lo() < margin {
        return Err(Error::Unbounded(format!(
            "{}'' blows up at 0; [{}, {}] must stay {margin} inside the open domain",
            f.describe(),
            e.lo(),
            e.hi()
        )));
    }
    Ok(())
}

/// Dense Chebyshev sampling of `f''` followed by golden-section
/// refinement around the best bracket of each extremum.
fn sampled_range(f: &FunctionHandle, e: Interval) -> Result<SecondDerivRange> {
    let (lo, hi) = (e.lo(), e.hi());
    if e.is_degenerate() {
        let v = f.second_derivative(lo)?;
        return Ok(SecondDerivRange {
            min: v,
            max: v,
            arg_min: lo,
            arg_max: lo,
            method: RangeMethod::Sampled,
        });
    }
    // Interior evaluation only: nudge closed-table endpoints inward so
    // the finite difference stencil stays inside.
    let pad = (hi - lo) * 1e-9;
    let (lo_i, hi_i) = (lo + pad, hi - pad);
    let mid = 0.5 * (lo_i + hi_i);
    let half = 0.5 * (hi_i - lo_i);
    let n = RANGE_SAMPLES;
    let mut xs = Vec::with_capacity(n);
    for k in 0..n {
        let theta = std::f64::consts::PI * k as f64 / (n - 1) as f64;
        xs.push(mid - half * theta.cos());
    }
    let mut vals = Vec::with_capacity(n);
    for &x in &xs {
        vals.push(f.second_derivative(x)?);
    }
    let refine = |idx: usize, maximizing: bool| -> Result<(f64, f64)> {
        let a = xs[idx.saturating_sub(1)];
        let b = xs[(idx + 1).min(n - 1)];
        let g = |x: f64| f.second_derivative(x).unwrap_or(f64::NEG_INFINITY);
        let (x, v) = if maximizing {
            golden::maximize(g, a, b, RANGE_XTOL)
        } else {
            golden::minimize(|x| g(x), a, b, RANGE_XTOL)
        };
        if !v.is_finite() {
            return Err(Error::Numeric("second derivative not finite during refinement".into()));
        }
        Ok((x, v))
    };
    let imin = (0..n).min_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap()).unwrap();
    let imax = (0..n).max_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap()).unwrap();
    let (arg_min, min) = refine(imin, false)?;
    let (arg_max, max) = refine(imax, true)?;
    let (min, arg_min) = if vals[imin] < min { (vals[imin], xs[imin]) } else { (min, arg_min) };
    let (max, arg_max) = if vals[imax] > max { (vals[imax], xs[imax]) } else { (max, arg_max) };
    Ok(SecondDerivRange { min, max, arg_min, arg_max, method: RangeMethod::Sampled })
}

/// Sign of `f''` over `e` decides convexity.
pub fn classify_convexity(f: &FunctionHandle, e: Interval) -> Result<Convexity> {
    let r = second_derivative_range(f, e)?;
    let tol = 1e-12 * r.min.abs().max(r.max.abs()).max(1.0);
    if r.min >= -tol {
        Ok(Convexity::Convex)
    } else if r.max <= tol {
        Ok(Convexity::Concave)
    } else {
        Ok(Convexity::Neither)
    }
}

/// Parse the CLI function grammar: `pow:<s>`, `exp`, `neglog`, `xlogx`,
/// `logit`, `negpow:<s>`, `affine:<c0>,<c1>`, `table:<path>`, with an
/// optional `@slow` / `@rapid` suffix.
pub fn parse_function_spec(spec: &str) -> Result<FunctionHandle> {
    let spec = spec.trim();
    let (body, class) = if let Some(b) = spec.strip_suffix("@slow") {
        (b, VariationClass::SlowlyVarying)
    } else if let Some(b) = spec.strip_suffix("@rapid") {
        (b, VariationClass::RapidlyVarying)
    } else {
        (spec, VariationClass::None)
    };
    let num = |s: &str| -> Result<f64> {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("`{s}` is not a number in function spec `{spec}`")))
    };
    let kind = if let Some(s) = body.strip_prefix("pow:") {
        FunctionKind::Pow(num(s)?)
    } else if let Some(s) = body.strip_prefix("negpow:") {
        FunctionKind::NegPow(num(s)?)
    } else if let Some(rest) = body.strip_prefix("affine:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 2 {
            return Err(Error::Parse(format!("affine spec needs two coefficients: `{spec}`")));
        }
        FunctionKind::Affine(num(parts[0])?, num(parts[1])?)
    } else if let Some(path) = body.strip_prefix("table:") {
        FunctionKind::Table(load_table(path.trim())?)
    } else {
        match body {
            "exp" => FunctionKind::Exp,
            "neglog" => FunctionKind::NegLog,
            "xlogx" => FunctionKind::XLogX,
            "logit" => FunctionKind::Logit,
            _ => return Err(Error::Parse(format!("unknown function spec `{spec}`"))),
        }
    };
    Ok(FunctionHandle::new(kind).with_variation(class))
}

/// Load `x,y` pairs (optional header) for a tabulated function.
fn load_table(path: &str) -> Result<TabulatedFunction> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read table `{path}`: {e}")))?;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let (sx, sy) = (parts.next().unwrap_or(""), parts.next().unwrap_or(""));
        match (sx.trim().parse::<f64>(), sy.trim().parse::<f64>()) {
            (Ok(x), Ok(y)) => {
                xs.push(x);
                ys.push(y);
            }
            _ if idx == 0 => continue, // header row
            _ => {
                return Err(Error::Csv {
                    line: idx + 1,
                    msg: format!("cannot parse table row `{line}`"),
                })
            }
        }
    }
    TabulatedFunction::new(xs, ys)
}
