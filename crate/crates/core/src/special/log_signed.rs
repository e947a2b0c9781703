//! Signed numbers stored as `sign * exp(logmag)`.
//!
//! Determinants of partition-function matrices overflow `f64` almost
//! immediately, so every product and sum in the determinant code goes
//! through this type.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul, Neg};

/// Result of a subtraction is flagged when it lands this many nats below
/// the larger operand.
pub const CANCELLATION_NATS: f64 = 30.0;

#[derive(Clone, Copy, PartialEq)]
pub struct LogSigned {
    sign: i8,
    logmag: f64,
}

impl LogSigned {
    pub const ZERO: LogSigned = LogSigned {
        sign: 0,
        logmag: f64::NEG_INFINITY,
    };
    pub const ONE: LogSigned = LogSigned { sign: 1, logmag: 0.0 };

    /// Builds `sign * exp(logmag)`. A zero sign or `logmag = -inf` gives zero.
    pub fn new(sign: i8, logmag: f64) -> Self {
        if sign == 0 || logmag == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            LogSigned {
                sign: sign.signum(),
                logmag,
            }
        }
    }

    /// Positive number with the given logarithm.
    pub fn from_log(logmag: f64) -> Self {
        Self::new(1, logmag)
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            Self::new(if x > 0.0 { 1 } else { -1 }, x.abs().ln())
        }
    }

    pub fn to_f64(self) -> f64 {
        f64::from(self.sign) * self.logmag.exp()
    }

    pub fn sign(self) -> i8 {
        self.sign
    }

    pub fn logmag(self) -> f64 {
        self.logmag
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    pub fn abs(self) -> Self {
        Self::new(self.sign.abs(), self.logmag)
    }

    /// Sum, with the number of nats lost to cancellation.
    ///
    /// The loss is `max(log|a|, log|b|) - log|a + b|`, which is zero for
    /// same-sign operands and infinite for exact cancellation.
    pub fn add_tracked(self, other: Self) -> (Self, f64) {
        if self.is_zero() {
            return (other, 0.0);
        }
        if other.is_zero() {
            return (self, 0.0);
        }
        let (hi, lo) = if self.logmag >= other.logmag {
            (self, other)
        } else {
            (other, self)
        };
        let r = (lo.logmag - hi.logmag).exp();
        if hi.sign == lo.sign {
            (Self::new(hi.sign, hi.logmag + r.ln_1p()), 0.0)
        } else if r >= 1.0 {
            (Self::ZERO, f64::INFINITY)
        } else {
            let delta = (-r).ln_1p();
            (Self::new(hi.sign, hi.logmag + delta), -delta)
        }
    }

    /// Sum that reports whether more than [`CANCELLATION_NATS`] were lost.
    pub fn add_checked(self, other: Self) -> (Self, bool) {
        let (s, lost) = self.add_tracked(other);
        (s, lost > CANCELLATION_NATS)
    }

    pub fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Self::ONE;
        }
        let sign = if self.sign < 0 && n % 2 != 0 { -1 } else { self.sign };
        Self::new(sign, self.logmag * f64::from(n))
    }
}

impl Default for LogSigned {
    fn default() -> Self {
        Self::ZERO
    }
}

impl fmt::Debug for LogSigned {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "LogSigned(0)"),
            s => write!(f, "LogSigned({}exp({}))", if s > 0 { "+" } else { "-" }, self.logmag),
        }
    }
}

impl Mul for LogSigned {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(self.sign * rhs.sign, self.logmag + rhs.logmag)
    }
}

impl Div for LogSigned {
    type Output = Self;
    /// Division by zero yields zero; callers pivot on non-zero entries.
    fn div(self, rhs: Self) -> Self {
        if rhs.is_zero() {
            return Self::ZERO;
        }
        Self::new(self.sign * rhs.sign, self.logmag - rhs.logmag)
    }
}

impl Neg for LogSigned {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.sign, self.logmag)
    }
}

impl std::ops::Add for LogSigned {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_tracked(rhs).0
    }
}

impl std::ops::Sub for LogSigned {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.add_tracked(-rhs).0
    }
}

impl PartialOrd for LogSigned {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.to_ordering_key().partial_cmp(&other.to_ordering_key())
    }
}

impl LogSigned {
    fn to_ordering_key(self) -> (i8, f64) {
        match self.sign {
            0 => (0, 0.0),
            1 => (1, self.logmag),
            _ => (-1, -self.logmag),
        }
    }
}

/// `log(exp(a) + exp(b))` without overflow.
pub fn logsum(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `log sum exp(x_i)`; empty input gives `-inf`.
pub fn logsumexp(xs: &[f64]) -> f64 {
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    hi + xs.iter().map(|&x| (x - hi).exp()).sum::<f64>().ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_roundtrip() {
        let a = LogSigned::from_f64(3.0);
        let b = LogSigned::from_f64(-5.0);
        assert!(((a + b).to_f64() + 2.0).abs() < 1e-14);
        assert!(((a * b).to_f64() + 15.0).abs() < 1e-13);
        assert!(((b / a).to_f64() + 5.0 / 3.0).abs() < 1e-14);
        assert!((a - a).is_zero());
        assert_eq!(LogSigned::from_f64(0.0), LogSigned::ZERO);
    }

    #[test]
    fn cancellation_is_flagged() {
        let a = LogSigned::from_log(100.0);
        let b = -LogSigned::from_log(100.0 + (-1e-14f64).ln_1p());
        let (_, flagged) = a.add_checked(b);
        assert!(flagged);
        let (_, flagged) = a.add_checked(LogSigned::from_log(99.0));
        assert!(!flagged);
    }

    #[test]
    fn logsum_basic() {
        assert!((logsum(0.0, 0.0) - 2f64.ln()).abs() < 1e-15);
        assert_eq!(logsum(f64::NEG_INFINITY, 1.5), 1.5);
        assert!((logsumexp(&[1000.0, 1000.0]) - 1000.0 - 2f64.ln()).abs() < 1e-12);
    }
}
