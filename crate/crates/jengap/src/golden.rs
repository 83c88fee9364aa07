//! One-dimensional golden-section maximization on a bracket.

const INV_PHI: f64 = 0.618_033_988_749_894_9; // (sqrt 5 - 1) / 2

/// Maximize `f` on `[lo, hi]` until the bracket width is below `xtol`.
/// Returns `(argmax, max)`. Assumes `f` is unimodal on the bracket;
/// otherwise the result is a local maximum. Near a smooth peak the
/// argmax is only locatable to ~sqrt(eps) because comparisons of `f`
/// lose resolution there; the maximum value itself stays accurate.
pub fn maximize<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, xtol: f64) -> (f64, f64) {
    debug_assert!(lo <= hi);
    let mut a = lo;
    let mut b = hi;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > xtol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Minimize `f` by maximizing its negation.
pub fn minimize<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, xtol: f64) -> (f64, f64) {
    let (x, neg) = maximize(|t| -f(t), lo, hi, xtol);
    (x, -neg)
}
