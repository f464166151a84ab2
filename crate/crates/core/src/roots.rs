//! Bracketing root finders and a derivative-free maximizer.

/// Bisection on a sign-changing bracket `[lo, hi]`.
///
/// Stops when the bracket is narrower than `rel_tol * max(|lo|, |hi|)` or can no
/// longer be split in floating point. Returns `None` if `f(lo)` and `f(hi)`
/// have the same strict sign.
pub fn bisect<F>(f: F, mut lo: f64, mut hi: f64, rel_tol: f64) -> Option<f64>
where
    F: Fn(f64) -> f64,
{
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Some(lo);
    }
    if f_hi == 0.0 {
        return Some(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return None;
    }
    for _ in 0..256 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= rel_tol * lo.abs().max(hi.abs()) {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Some(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
/// Returns `(argmax, max)`.
pub fn golden_max<F>(f: F, mut lo: f64, mut hi: f64, iterations: usize) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iterations {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-15).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn bisect_requires_bracket() {
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_none());
        assert_eq!(bisect(|x| x, 0.0, 1.0, 1e-12), Some(0.0));
    }

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, y) = golden_max(|x| -(x - 0.3) * (x - 0.3) + 1.0, 0.0, 1.0, 100);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((y - 1.0).abs() < 1e-14);
    }
}
