//! Quadrature and scalar root finding.

use crate::error::{Error, Result};
use std::f64::consts::FRAC_PI_2;

/// Tanh-sinh quadrature of `f` over `[a, b]`.
///
/// `f` receives the abscissa together with its distances to the two
/// endpoints, so integrands with endpoint singularities can be evaluated
/// without cancellation. Levels are refined until successive estimates
/// agree to `tol` (relative to the magnitude of the integral, floored at 1).
pub fn tanh_sinh<F>(f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64, f64, f64) -> f64,
{
    if a == b {
        return Ok(0.0);
    }
    let half = 0.5 * (b - a);
    let eval = |t: f64| -> f64 {
        let s = FRAC_PI_2 * t.sinh();
        let cosh_s = s.cosh();
        // 1 - tanh(s) and 1 + tanh(s) without cancellation.
        let e = (-2.0 * s.abs()).exp();
        let small = 2.0 * e / (1.0 + e);
        let (one_minus, one_plus) = if s >= 0.0 {
            (small, 2.0 - small)
        } else {
            (2.0 - small, small)
        };
        let w = FRAC_PI_2 * t.cosh() / (cosh_s * cosh_s);
        let da = half * one_plus;
        let db = half * one_minus;
        if da == 0.0 || db == 0.0 {
            return 0.0;
        }
        let x = if da < db { a + da } else { b - db };
        let v = f(x, da, db);
        if v.is_finite() {
            v * w
        } else {
            0.0
        }
    };
    let tmax = 4.0;
    let mut h = 0.5;
    let mut sum = eval(0.0);
    let mut k = 1;
    while k as f64 * h <= tmax {
        let t = k as f64 * h;
        sum += eval(t) + eval(-t);
        k += 1;
    }
    let mut estimate = sum * h * half;
    for _level in 0..12 {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= tmax {
            let t = k as f64 * h;
            sum += eval(t) + eval(-t);
            k += 2;
        }
        let next = sum * h * half;
        if (next - estimate).abs() <= tol * next.abs().max(1.0) {
            return Ok(next);
        }
        estimate = next;
    }
    Err(Error::NoConvergence {
        what: "tanh-sinh quadrature",
        iterations: 12,
    })
}

/// Plain tanh-sinh for integrands without endpoint trouble.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    tanh_sinh(|x, _, _| f(x), a, b, tol)
}

/// Bisection for a root of a continuous `f` with `f(lo)` and `f(hi)` of
/// opposite signs. Stops when the bracket can no longer shrink.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::Invalid(format!(
            "bisect: no sign change on [{lo}, {hi}] ({flo}, {fhi})"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn smooth_and_singular_integrands() {
        let v = integrate(|x| x.exp(), 0.0, 1.0, 1e-14).unwrap();
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-14);
        // ∫_0^1 -ln x = 1, singular at 0.
        let v = tanh_sinh(|_, da, _| -da.ln(), 0.0, 1.0, 1e-14).unwrap();
        assert!((v - 1.0).abs() < 1e-13);
        // ∫_{-1}^1 1/sqrt(1-x^2) = π.
        let v = tanh_sinh(|_, da, db| 1.0 / (da * db).sqrt(), -1.0, 1.0, 1e-14).unwrap();
        assert!((v - PI).abs() < 1e-12);
    }

    #[test]
    fn bisection() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
        assert!(bisect(|x| x * x + 1.0, 0.0, 2.0).is_err());
    }
}
