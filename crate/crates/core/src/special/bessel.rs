//! Modified Bessel function of the second kind, order zero.

use super::gamma::EULER_GAMMA;
use crate::error::{Error, Result};

/// `K₀(x)` for `x > 0`.
///
/// Power series for `x ≤ 2`, Steed's continued fraction above.
pub fn bessel_k0(x: f64) -> Result<f64> {
    if !(x > 0.0) || x.is_nan() {
        return Err(Error::Domain {
            func: "bessel_k0",
            value: x,
            expected: "x > 0",
        });
    }
    if x <= 2.0 {
        Ok(series(x))
    } else {
        steed(x)
    }
}

fn series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let log_term = (0.5 * x).ln() + EULER_GAMMA;
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut sum = -log_term;
    for k in 1..60 {
        let kf = f64::from(k);
        term *= q / (kf * kf);
        harmonic += 1.0 / kf;
        let add = term * (harmonic - log_term);
        sum += add;
        if add.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

fn steed(x: f64) -> Result<f64> {
    const MAX_ITER: usize = 10_000;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            return Ok((std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp() / s);
        }
    }
    Err(Error::NoConvergence {
        what: "bessel_k0",
        iterations: MAX_ITER,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Trapezoid rule on `∫_0^∞ exp(-x cosh t) dt`, which converges
    /// geometrically for this analytic integrand.
    fn k0_integral(x: f64) -> f64 {
        let h = 0.01;
        let mut sum = 0.5 * (-x).exp();
        let mut k = 1;
        loop {
            let v = (-x * (k as f64 * h).cosh()).exp();
            sum += v;
            if v < 1e-22 {
                break;
            }
            k += 1;
        }
        sum * h
    }

    #[test]
    fn matches_integral_representation() {
        for &x in &[0.01, 0.1, 0.5, 1.0, 1.9, 2.0, 2.1, 3.0, 7.5, 20.0] {
            let k = bessel_k0(x).unwrap();
            assert!((k - k0_integral(x)).abs() < 1e-12, "x = {x}: {k} vs {}", k0_integral(x));
        }
    }

    #[test]
    fn tabulated_values() {
        assert!((bessel_k0(1.0).unwrap() - 0.421_024_438_240_708_3).abs() < 1e-13);
        assert!((bessel_k0(2.0).unwrap() - 0.113_893_872_749_533_4).abs() < 1e-13);
        assert!(bessel_k0(0.0).is_err());
    }
}
