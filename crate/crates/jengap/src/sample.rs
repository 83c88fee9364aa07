//! Weighted samples, host intervals and the two central functionals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::FunctionHandle;

/// Relative deviation of the weight sum from 1 that is silently
/// renormalized; anything larger is a construction error.
const WEIGHT_SUM_SLACK: f64 = 1e-6;

/// Points `x_i` with positive weights `p_i` summing to 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedSample {
    points: Vec<f64>,
    weights: Vec<f64>,
}

impl WeightedSample {
    /// Build a sample; weights are renormalized when their sum is
    /// within `1e-6` relative of 1.
    pub fn new(points: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Construction("sample must hold at least one point".into()));
        }
        if points.len() != weights.len() {
            return Err(Error::Construction(format!(
                "{} points but {} weights",
                points.len(),
                weights.len()
            )));
        }
        if points.iter().any(|x| !x.is_finite()) {
            return Err(Error::Construction("points must be finite".into()));
        }
        if weights.iter().any(|w| !(*w > 0.0) || !w.is_finite()) {
            return Err(Error::Construction("weights must be positive and finite".into()));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_SLACK {
            return Err(Error::Construction(format!(
                "weights sum to {sum}, further than {WEIGHT_SUM_SLACK} from 1"
            )));
        }
        let weights = weights.into_iter().map(|w| w / sum).collect();
        Ok(Self { points, weights })
    }

    /// Uniform weights `1/n`.
    pub fn uniform(points: Vec<f64>) -> Result<Self> {
        let n = points.len();
        if n == 0 {
            return Err(Error::Construction("sample must hold at least one point".into()));
        }
        Self::new(points, vec![1.0 / n as f64; n])
    }

    /// Build from possibly unnormalized positive weights (e.g. counts).
    pub fn from_unnormalized(points: Vec<f64>, raw: Vec<f64>) -> Result<Self> {
        if raw.iter().any(|w| !(*w > 0.0) || !w.is_finite()) {
            return Err(Error::Construction("weights must be positive and finite".into()));
        }
        let sum: f64 = raw.iter().sum();
        Self::new(points, raw.into_iter().map(|w| w / sum).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: at least one point
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Weighted mean, the barycenter `sum p_i x_i`.
    pub fn mean(&self) -> f64 {
        self.points.iter().zip(&self.weights).map(|(x, p)| p * x).sum()
    }

    /// Weighted mean of `g(x_i)`.
    pub fn mean_of(&self, mut g: impl FnMut(f64) -> Result<f64>) -> Result<f64> {
        let mut acc = 0.0;
        for (&x, &p) in self.points.iter().zip(&self.weights) {
            acc += p * g(x)?;
        }
        Ok(acc)
    }

    pub fn min_point(&self) -> f64 {
        self.points.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn max_point(&self) -> f64 {
        self.points.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Closed interval `[lo, hi]` hosting every sample point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Construction("interval endpoints must be finite".into()));
        }
        if lo > hi {
            return Err(Error::Construction(format!("interval [{lo}, {hi}] has lo > hi")));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    pub fn contains_sample(&self, s: &WeightedSample) -> bool {
        s.points().iter().all(|&x| self.contains(x))
    }

    /// First point of `s` outside the interval, if any.
    pub fn first_outside(&self, s: &WeightedSample) -> Option<f64> {
        s.points().iter().copied().find(|&x| !self.contains(x))
    }
}

/// Jensen functional `J_n = sum p_i f(x_i) - f(sum p_i x_i)`.
pub fn jensen_functional(s: &WeightedSample, f: &FunctionHandle) -> Result<f64> {
    let avg_f = s.mean_of(|x| f.eval(x))?;
    Ok(avg_f - f.eval(s.mean())?)
}

/// Jensen-Mercer functional
/// `K_n = f(a) + f(b) - sum p_i f(x_i) - f(a + b - sum p_i x_i)`.
pub fn mercer_functional(s: &WeightedSample, e: Interval, f: &FunctionHandle) -> Result<f64> {
    if let Some(x) = e.first_outside(s) {
        return Err(Error::Precondition {
            tag: "JensenMercer",
            hypothesis: format!("x_i in [{}, {}] required, found {x}", e.lo(), e.hi()),
        });
    }
    let avg_f = s.mean_of(|x| f.eval(x))?;
    let reflected = e.lo() + e.hi() - s.mean();
    Ok(f.eval(e.lo())? + f.eval(e.hi())? - avg_f - f.eval(reflected)?)
}

/// `J_n` with `f = x^2`: the weighted variance.
pub fn quadratic_gap(s: &WeightedSample) -> f64 {
    let mu = s.mean();
    // sum p (x - mu)^2 form keeps the value nonnegative under rounding
    s.points().iter().zip(s.weights()).map(|(&x, &p)| p * (x - mu) * (x - mu)).sum()
}

/// `K_n` with `f = x^2`, via the algebraic identity
/// `2 (mu - a)(b - mu) - J_n(x^2)`.
pub fn mercer_quadratic_gap(s: &WeightedSample, e: Interval) -> Result<f64> {
    if let Some(x) = e.first_outside(s) {
        return Err(Error::Precondition {
            tag: "JensenMercer",
            hypothesis: format!("x_i in [{}, {}] required, found {x}", e.lo(), e.hi()),
        });
    }
    let mu = s.mean();
    Ok(2.0 * (mu - e.lo()) * (e.hi() - mu) - quadratic_gap(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::FunctionHandle;

    fn half_half(a: f64, b: f64) -> WeightedSample {
        WeightedSample::new(vec![a, b], vec![0.5, 0.5]).unwrap()
    }

    #[test]
    fn construction_rules() {
        assert!(WeightedSample::new(vec![], vec![]).is_err());
        assert!(WeightedSample::new(vec![1.0], vec![0.0]).is_err());
        assert!(WeightedSample::new(vec![1.0, 2.0], vec![0.5]).is_err());
        assert!(WeightedSample::new(vec![1.0], vec![2.0]).is_err()); // sum far from 1
        // small deviation renormalizes
        let s = WeightedSample::new(vec![1.0, 2.0], vec![0.5 + 2e-7, 0.5]).unwrap();
        let sum: f64 = s.weights().iter().sum();
        assert!((sum - 1.0).abs() < 1e-15);
        // n = 1 is legal
        let s = WeightedSample::new(vec![3.0], vec![1.0]).unwrap();
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn jensen_square_half() {
        let s = half_half(0.0, 1.0);
        let j = jensen_functional(&s, &FunctionHandle::pow(2.0)).unwrap();
        assert!((j - 0.25).abs() < 1e-15);
    }

    #[test]
    fn jensen_vanishes_on_constants_and_affine() {
        let s = WeightedSample::uniform(vec![2.0, 2.0, 2.0]).unwrap();
        for f in [FunctionHandle::exp(), FunctionHandle::pow(3.0), FunctionHandle::neg_log()] {
            assert!(jensen_functional(&s, &f).unwrap().abs() < 1e-14);
        }
        let s = WeightedSample::uniform(vec![1.0, 2.0, 7.0]).unwrap();
        assert!(jensen_functional(&s, &FunctionHandle::pow(1.0)).unwrap().abs() < 1e-14);
        assert!(jensen_functional(&s, &FunctionHandle::affine(3.0, -2.0)).unwrap().abs() < 1e-13);
    }

    #[test]
    fn mercer_values() {
        let e = Interval::new(0.0, 1.0).unwrap();
        let f = FunctionHandle::pow(2.0);
        let s = WeightedSample::new(vec![0.5], vec![1.0]).unwrap();
        assert!((mercer_functional(&s, e, &f).unwrap() - 0.5).abs() < 1e-15);
        let s = half_half(0.0, 1.0);
        assert!((mercer_functional(&s, e, &f).unwrap() - 0.25).abs() < 1e-15);
        // all points at a: K_n collapses
        let s = WeightedSample::uniform(vec![0.0, 0.0]).unwrap();
        assert!(mercer_functional(&s, e, &f).unwrap().abs() < 1e-15);
    }

    #[test]
    fn mercer_rejects_outside_points() {
        let e = Interval::new(0.0, 1.0).unwrap();
        let s = WeightedSample::uniform(vec![0.5, 1.5]).unwrap();
        assert!(matches!(
            mercer_functional(&s, e, &FunctionHandle::pow(2.0)),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn quadratic_gap_values() {
        assert!((quadratic_gap(&half_half(0.0, 1.0)) - 0.25).abs() < 1e-15);
        let s = WeightedSample::uniform(vec![1.0, 2.0, 3.0]).unwrap();
        assert!((quadratic_gap(&s) - 2.0 / 3.0).abs() < 1e-15);
        let s = WeightedSample::uniform(vec![4.0, 4.0]).unwrap();
        assert_eq!(quadratic_gap(&s), 0.0);
    }

    #[test]
    fn mercer_quadratic_gap_values() {
        let e = Interval::new(0.0, 1.0).unwrap();
        let s = WeightedSample::new(vec![0.5], vec![1.0]).unwrap();
        assert!((mercer_quadratic_gap(&s, e).unwrap() - 0.5).abs() < 1e-15);
        let s = half_half(0.0, 1.0);
        assert!((mercer_quadratic_gap(&s, e).unwrap() - 0.25).abs() < 1e-15);
        let s = WeightedSample::uniform(vec![0.0, 0.0]).unwrap();
        assert!(mercer_quadratic_gap(&s, e).unwrap().abs() < 1e-15);
    }

    #[test]
    fn quadratic_identities_match_functionals() {
        let e = Interval::new(0.2, 2.3).unwrap();
        let s = WeightedSample::new(vec![0.3, 1.1, 2.2], vec![0.2, 0.5, 0.3]).unwrap();
        let f = FunctionHandle::pow(2.0);
        let j = jensen_functional(&s, &f).unwrap();
        assert!((quadratic_gap(&s) - j).abs() <= 1e-12 * j.abs().max(1.0));
        let k = mercer_functional(&s, e, &f).unwrap();
        assert!((mercer_quadratic_gap(&s, e).unwrap() - k).abs() <= 1e-12 * k.abs().max(1.0));
    }
}
