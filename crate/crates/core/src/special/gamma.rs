//! Gamma-family functions: `ln Γ`, polygamma of orders 0 and 1, regularized
//! incomplete gamma in log form, factorials, binomials, superfactorials.

use super::LogSigned;
use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Asymptotic expansions are used from this argument upward.
const SHIFT_TO: f64 = 10.0;

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            func: "log_gamma",
            value: x,
            expected: "x > 0",
        });
    }
    Ok(log_gamma_unchecked(x))
}

pub(crate) fn log_gamma_unchecked(x: f64) -> f64 {
    let mut shift = 0.0;
    let mut z = x;
    // ln of the product x(x+1)...(x+n-1), accumulated as a product in chunks
    // so that tiny arguments keep full relative accuracy.
    let mut prod = 1.0;
    while z < SHIFT_TO {
        prod *= z;
        z += 1.0;
        if prod > 1e280 || prod < 1e-280 {
            shift += prod.ln();
            prod = 1.0;
        }
    }
    shift += prod.ln();
    stirling(z) - shift
}

fn stirling(z: f64) -> f64 {
    let r = 1.0 / z;
    let r2 = r * r;
    let series = r
        * (1.0 / 12.0
            + r2 * (-1.0 / 360.0
                + r2 * (1.0 / 1260.0
                    + r2 * (-1.0 / 1680.0
                        + r2 * (1.0 / 1188.0
                            + r2 * (-691.0 / 360_360.0 + r2 * (1.0 / 156.0)))))));
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + series
}

/// Digamma `ψ₀(x)` for `x > 0`.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            func: "digamma",
            value: x,
            expected: "x > 0",
        });
    }
    Ok(digamma_unchecked(x))
}

pub(crate) fn digamma_unchecked(x: f64) -> f64 {
    let mut acc = 0.0;
    let mut z = x;
    while z < SHIFT_TO {
        acc -= 1.0 / z;
        z += 1.0;
    }
    let r2 = 1.0 / (z * z);
    let tail = r2
        * (-1.0 / 12.0
            + r2 * (1.0 / 120.0
                + r2 * (-1.0 / 252.0
                    + r2 * (1.0 / 240.0
                        + r2 * (-1.0 / 132.0 + r2 * (691.0 / 32_760.0 + r2 * (-1.0 / 12.0)))))));
    acc + z.ln() - 0.5 / z + tail
}

/// Trigamma `ψ₁(x)` for `x > 0`.
pub fn trigamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            func: "trigamma",
            value: x,
            expected: "x > 0",
        });
    }
    Ok(trigamma_unchecked(x))
}

pub(crate) fn trigamma_unchecked(x: f64) -> f64 {
    let mut acc = 0.0;
    let mut z = x;
    while z < SHIFT_TO {
        acc += 1.0 / (z * z);
        z += 1.0;
    }
    let r = 1.0 / z;
    let r2 = r * r;
    let tail = r
        + r2 / 2.0
        + r * r2
            * (1.0 / 6.0
                + r2 * (-1.0 / 30.0
                    + r2 * (1.0 / 42.0
                        + r2 * (-1.0 / 30.0
                            + r2 * (5.0 / 66.0 + r2 * (-691.0 / 2730.0 + r2 * (7.0 / 6.0)))))));
    acc + tail
}

/// `ln n!`.
pub fn log_factorial(n: u64) -> f64 {
    if n < 2 {
        0.0
    } else {
        log_gamma_unchecked(n as f64 + 1.0)
    }
}

/// `C(n, k)` as a [`LogSigned`]; zero whenever `k < 0` or `k > n`.
pub fn log_binomial(n: i64, k: i64) -> LogSigned {
    if k < 0 || k > n {
        return LogSigned::ZERO;
    }
    let (n, k) = (n as u64, k as u64);
    LogSigned::from_log(log_factorial(n) - log_factorial(k) - log_factorial(n - k))
}

/// `ln H(n)` with `H(n) = 0! 1! ... (n-1)!`.
pub fn log_superfactorial(n: u64) -> f64 {
    (0..n).map(log_factorial).sum()
}

/// `ln P(a, x)` and `ln Q(a, x)` for the regularized incomplete gamma
/// functions, computed without forming `P` or `Q` in linear space when
/// they are tiny.
///
/// The argument is passed as `ln x` so that extremely small `x` (which
/// arise for small shape parameters) stay representable.
pub fn log_incomplete_gamma(a: f64, ln_x: f64) -> Result<(f64, f64)> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Domain {
            func: "log_incomplete_gamma",
            value: a,
            expected: "a > 0",
        });
    }
    if ln_x == f64::NEG_INFINITY {
        return Ok((f64::NEG_INFINITY, 0.0));
    }
    if ln_x == f64::INFINITY {
        return Ok((0.0, f64::NEG_INFINITY));
    }
    let x = ln_x.exp();
    let prefactor = a * ln_x - x - log_gamma_unchecked(a);
    if x < a + 1.0 {
        let ln_p = prefactor + lower_series(a, x)?.ln();
        Ok((ln_p, log1m_exp(ln_p)))
    } else {
        let ln_q = prefactor + upper_fraction(a, x)?.ln();
        Ok((log1m_exp(ln_q), ln_q))
    }
}

/// `ln(1 - exp(v))` for `v <= 0`.
pub fn log1m_exp(v: f64) -> f64 {
    if v > -std::f64::consts::LN_2 {
        (-v.exp_m1()).ln()
    } else {
        (-v.exp()).ln_1p()
    }
}

const MAX_ITER: usize = 1_000_000;

fn lower_series(a: f64, x: f64) -> Result<f64> {
    let mut term = 1.0 / a;
    let mut sum = term;
    for n in 1..MAX_ITER {
        term *= x / (a + n as f64);
        sum += term;
        if term < sum * 1e-17 {
            return Ok(sum);
        }
    }
    Err(Error::NoConvergence {
        what: "incomplete gamma series",
        iterations: MAX_ITER,
    })
}

/// Modified Lentz evaluation of the continued fraction for `Q`.
fn upper_fraction(a: f64, x: f64) -> Result<f64> {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            return Ok(h);
        }
    }
    Err(Error::NoConvergence {
        what: "incomplete gamma continued fraction",
        iterations: MAX_ITER,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn log_gamma_known_values() {
        assert!(log_gamma(1.0).unwrap().abs() < 1e-14);
        assert!(log_gamma(2.0).unwrap().abs() < 1e-14);
        assert!((log_gamma(5.0).unwrap() - 24f64.ln()).abs() < 1e-13);
        assert!((log_gamma(0.5).unwrap() - 0.5 * PI.ln()).abs() < 1e-14);
        assert!(matches!(log_gamma(0.0), Err(Error::Domain { .. })));
        assert!(log_gamma(-1.0).is_err());
    }

    #[test]
    fn log_gamma_matches_factorial_sums() {
        let mut acc = 0.0f64;
        for n in 1..200u32 {
            acc += f64::from(n).ln();
            let lg = log_gamma(f64::from(n) + 1.0).unwrap();
            assert!((lg - acc).abs() <= 1e-12 * acc.max(1.0), "n = {n}");
        }
    }

    #[test]
    fn polygamma_known_values() {
        assert!((digamma(1.0).unwrap() + EULER_GAMMA).abs() < 1e-14);
        assert!((digamma(2.0).unwrap() - (1.0 - EULER_GAMMA)).abs() < 1e-14);
        assert!((digamma(0.5).unwrap() + EULER_GAMMA + 2.0 * 2f64.ln()).abs() < 1e-13);
        // Independent route: partial sums of 1/n^2 with an integral tail.
        let n = 100_000;
        let partial: f64 = (1..=n).rev().map(|k| 1.0 / (k as f64 * k as f64)).sum();
        let tail = 1.0 / n as f64 - 0.5 / (n as f64).powi(2) + 1.0 / (6.0 * (n as f64).powi(3));
        assert!((trigamma(1.0).unwrap() - (partial + tail)).abs() < 1e-13);
        assert!((trigamma(1.0).unwrap() - PI * PI / 6.0).abs() < 1e-14);
    }

    #[test]
    fn binomials_and_superfactorials() {
        assert!((log_binomial(5, 2).logmag() - 10f64.ln()).abs() < 1e-13);
        assert!((log_binomial(10, 5).logmag() - 252f64.ln()).abs() < 1e-13);
        assert!(log_binomial(3, 4).is_zero());
        assert!(log_binomial(3, -1).is_zero());
        assert_eq!(log_superfactorial(0), 0.0);
        assert_eq!(log_superfactorial(1), 0.0);
        assert!((log_superfactorial(3) - 2f64.ln()).abs() < 1e-14);
        assert!((log_superfactorial(5) - 288f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn incomplete_gamma_exponential_case() {
        // a = 1: P = 1 - e^{-x}.
        for &x in &[1e-8, 0.1, 1.0, 3.0, 50.0] {
            let (lp, lq) = log_incomplete_gamma(1.0, f64::ln(x)).unwrap();
            assert!((lq + x).abs() < 1e-13 * x.max(1.0), "x = {x}");
            assert!((lp - (-(-x as f64).exp_m1()).ln()).abs() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn incomplete_gamma_matches_quadrature() {
        // P(a, x) via Simpson on the density for a few interior cases.
        for &(a, x) in &[(2.0, 1.5), (0.5, 0.7), (10.0, 12.0), (3.5, 2.0)] {
            let n = 200_000;
            let h = x / n as f64;
            let dens = |t: f64| {
                if t == 0.0 {
                    if a > 1.0 { 0.0 } else { f64::NAN }
                } else {
                    ((a - 1.0) * t.ln() - t - log_gamma(a).unwrap()).exp()
                }
            };
            if a < 1.0 {
                continue;
            }
            let mut s = dens(0.0) + dens(x);
            for i in 1..n {
                s += dens(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
            }
            let p = s * h / 3.0;
            let (lp, _) = log_incomplete_gamma(a, x.ln()).unwrap();
            assert!((lp.exp() - p).abs() < 1e-11, "a = {a}, x = {x}");
        }
    }
}
