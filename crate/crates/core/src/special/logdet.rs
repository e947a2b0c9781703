//! Determinants evaluated entirely in [`LogSigned`] arithmetic.

use super::LogSigned;
use crate::error::{Error, Result};

/// Determinant together with the worst cancellation seen during
/// elimination, in nats.
#[derive(Debug, Clone, Copy)]
pub struct LogDet {
    pub value: LogSigned,
    pub cancellation: f64,
}

/// `det(m)` by Gaussian elimination with partial pivoting on magnitude.
/// The empty matrix has determinant one.
pub fn logdet(m: &[Vec<LogSigned>]) -> Result<LogSigned> {
    logdet_tracked(m).map(|d| d.value)
}

pub fn logdet_tracked(m: &[Vec<LogSigned>]) -> Result<LogDet> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::Invalid("logdet needs a square matrix".into()));
    }
    let mut a: Vec<Vec<LogSigned>> = m.to_vec();
    let mut det = LogSigned::ONE;
    let mut worst = 0.0f64;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].logmag().total_cmp(&a[j][col].logmag()))
            .expect("non-empty range");
        if a[pivot][col].is_zero() {
            return Ok(LogDet {
                value: LogSigned::ZERO,
                cancellation: worst,
            });
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col];
        det = det * p;
        for row in col + 1..n {
            let factor = a[row][col] / p;
            if factor.is_zero() {
                continue;
            }
            for k in col + 1..n {
                let (v, lost) = a[row][k].add_tracked(-(factor * a[col][k]));
                if lost.is_finite() {
                    worst = worst.max(lost);
                }
                a[row][k] = v;
            }
            a[row][col] = LogSigned::ZERO;
        }
    }
    Ok(LogDet {
        value: det,
        cancellation: worst,
    })
}

/// Convenience wrapper for plain `f64` matrices.
pub fn logdet_f64(m: &[Vec<f64>]) -> Result<LogSigned> {
    let lm: Vec<Vec<LogSigned>> = m
        .iter()
        .map(|r| r.iter().map(|&x| LogSigned::from_f64(x)).collect())
        .collect();
    logdet(&lm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let d = logdet_f64(&[vec![10.0, 1.0], vec![5.0, 10.0]]).unwrap();
        assert_eq!(d.sign(), 1);
        assert!((d.logmag() - 95f64.ln()).abs() < 1e-14);
        assert_eq!(logdet(&[]).unwrap(), LogSigned::ONE);
        let d = logdet_f64(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(d.sign(), -1);
        let d = logdet_f64(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(d.is_zero() || d.logmag() < -30.0);
        assert!(logdet_f64(&[vec![1.0, 2.0]]).is_err());
    }
}
