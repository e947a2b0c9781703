//! Laurent symbols of stacked path geometries, their Szegő data, and the
//! Toeplitz determinants that count non-intersecting families of many
//! paths.

use crate::error::{Error, Result};
use crate::lattice::Point;
use crate::special::{log_binomial, logdet, LogSigned};
use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;
use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

/// Finitely supported Laurent coefficients `m ↦ d_m`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Symbol {
    coeffs: BTreeMap<i64, f64>,
}

impl Symbol {
    /// Drops zero coefficients.
    pub fn new(coeffs: impl IntoIterator<Item = (i64, f64)>) -> Self {
        Symbol {
            coeffs: coeffs.into_iter().filter(|&(_, d)| d != 0.0).collect(),
        }
    }

    pub fn coeff(&self, m: i64) -> f64 {
        self.coeffs.get(&m).copied().unwrap_or(0.0)
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, f64> {
        &self.coeffs
    }

    /// `a(e^{it})`.
    pub fn eval(&self, t: f64) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(&m, &d)| Complex64::from_polar(d, m as f64 * t))
            .sum()
    }

    pub fn scale(&self, s: f64) -> Symbol {
        Symbol::new(self.coeffs.iter().map(|(&m, &d)| (m, d * s)))
    }
}

/// `d_m = Z_{0 → z+mh}(0) = C(z1+z2+m(h1+h2), z1+m h1)`.
pub fn symbol_from_geometry(z: Point, h: (i64, i64)) -> Result<Symbol> {
    if !(h.0 < 0 && h.1 > 0) {
        return Err(Error::Invalid(format!("symbol_from_geometry needs h1 < 0 < h2, got {h:?}")));
    }
    // Non-zero exactly when z1 + m h1 ≥ 0 and z2 + m h2 ≥ 0.
    let m_max = z.x1.div_euclid(-h.0);
    let m_min = -(z.x2.div_euclid(h.1));
    Ok(Symbol::new((m_min..=m_max).map(|m| {
        let d = log_binomial(z.x1 + z.x2 + m * (h.0 + h.1), z.x1 + m * h.0);
        (m, d.to_f64().round())
    })))
}

const MIN_GRID: usize = 1 << 12;
const MAX_GRID: usize = 1 << 22;

/// Samples of `a(e^{2πij/M})`, refined until no adjacent phase step
/// reaches `π/2`, together with the unwrapped phase.
struct CircleSamples {
    values: Vec<Complex64>,
    phase: Vec<f64>,
}

fn sample_circle(sym: &Symbol, min_points: usize) -> Result<CircleSamples> {
    let scale: f64 = sym.coeffs.values().map(|d| d.abs()).sum::<f64>().max(f64::MIN_POSITIVE);
    let mut m = min_points.max(MIN_GRID);
    loop {
        let values: Vec<Complex64> = (0..m).map(|j| sym.eval(2.0 * PI * j as f64 / m as f64)).collect();
        if let Some((j, _)) = values.iter().enumerate().find(|(_, v)| v.norm() < 1e-12 * scale) {
            return Err(Error::ZeroOnCircle {
                angle: 2.0 * PI * j as f64 / m as f64,
            });
        }
        let mut phase = Vec::with_capacity(m + 1);
        phase.push(values[0].arg());
        let mut ok = true;
        for j in 1..=m {
            let step = (values[j % m] / values[j - 1]).arg();
            if step.abs() >= FRAC_PI_2 {
                ok = false;
                break;
            }
            phase.push(phase[j - 1] + step);
        }
        if ok {
            return Ok(CircleSamples { values, phase });
        }
        if m >= MAX_GRID {
            return Err(Error::NoConvergence {
                what: "winding number phase unwrapping",
                iterations: m,
            });
        }
        m *= 2;
    }
}

/// Net number of turns of `a(e^{it})` around the origin for `t ∈ [0, 2π)`.
pub fn winding_number(sym: &Symbol) -> Result<i64> {
    let s = sample_circle(sym, MIN_GRID)?;
    let total = s.phase[s.phase.len() - 1] - s.phase[0];
    Ok((total / (2.0 * PI)).round() as i64)
}

/// Fourier coefficients `c_m` of `log a(e^{it})`.
#[derive(Debug, Clone, Serialize)]
pub struct LogCoefficients {
    /// `c_m` for `|m| ≤ max_index`.
    pub coeffs: BTreeMap<i64, f64>,
    pub max_index: i64,
    pub grid_points: usize,
}

impl LogCoefficients {
    pub fn get(&self, m: i64) -> f64 {
        self.coeffs.get(&m).copied().unwrap_or(0.0)
    }
}

fn fft_log_coefficients(sym: &Symbol, points: usize) -> Result<(Vec<Complex64>, usize)> {
    let s = sample_circle(sym, points)?;
    let m = s.values.len();
    let mut buf: Vec<Complex64> = s
        .values
        .iter()
        .zip(&s.phase)
        .map(|(v, &p)| Complex64::new(v.norm().ln(), p))
        .collect();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    for v in &mut buf {
        *v /= m as f64;
    }
    Ok((buf, m))
}

/// `c_m` for `|m| ≤ max_index`, by the trapezoid rule on a grid that is
/// doubled until the coefficients move by less than `1e-12`.
pub fn log_coefficients(sym: &Symbol, max_index: i64) -> Result<LogCoefficients> {
    let w = winding_number(sym)?;
    if w != 0 {
        return Err(Error::Invalid(format!("log_coefficients needs winding number 0, got {w}")));
    }
    let pick = |buf: &[Complex64], m: usize| -> BTreeMap<i64, f64> {
        (-max_index..=max_index)
            .map(|k| {
                let idx = k.rem_euclid(m as i64) as usize;
                (k, buf[idx].re)
            })
            .collect()
    };
    let mut points = MIN_GRID.max(4 * (max_index as usize + 1).next_power_of_two());
    let (buf, m) = fft_log_coefficients(sym, points)?;
    let mut prev = pick(&buf, m);
    loop {
        points = m.max(points) * 2;
        if points > MAX_GRID {
            return Err(Error::NoConvergence {
                what: "log_coefficients grid refinement",
                iterations: points,
            });
        }
        let (buf, m2) = fft_log_coefficients(sym, points)?;
        let next = pick(&buf, m2);
        let delta = prev
            .iter()
            .map(|(k, v)| (v - next[k]).abs())
            .fold(0.0, f64::max);
        if delta < 1e-12 {
            return Ok(LogCoefficients {
                coeffs: next,
                max_index,
                grid_points: m2,
            });
        }
        prev = next;
    }
}

/// `exp(Σ_{m≥1} m c_m c_{−m})`, summed until the terms fall below `1e-16`
/// for several consecutive indices.
pub fn strong_szego_constant(sym: &Symbol) -> Result<f64> {
    let mut max_index = 64;
    loop {
        let c = log_coefficients(sym, max_index)?;
        let terms: Vec<f64> = (1..=max_index).map(|m| m as f64 * c.get(m) * c.get(-m)).collect();
        let tail_small = terms[terms.len() - 8..].iter().all(|t| t.abs() < 1e-16);
        if tail_small {
            return Ok(terms.iter().sum::<f64>().exp());
        }
        if max_index >= 1 << 14 {
            return Err(Error::NoConvergence {
                what: "strong_szego_constant",
                iterations: max_index as usize,
            });
        }
        max_index *= 4;
    }
}

/// `det(d_{j−i})_{1≤i,j≤k}`.
pub fn toeplitz_det(sym: &Symbol, k: usize) -> Result<LogSigned> {
    let m: Vec<Vec<LogSigned>> = (0..k as i64)
        .map(|i| (0..k as i64).map(|j| LogSigned::from_f64(sym.coeff(j - i))).collect())
        .collect();
    logdet(&m)
}

#[derive(Debug, Clone, Serialize)]
pub struct RateRow {
    pub k: usize,
    pub log_det: f64,
    pub rate: f64,
    /// `D_k e^{−k c_0}`.
    pub normalized: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ManyPathsReport {
    pub c0: f64,
    pub szego_constant: f64,
    /// `log d_0`, the single-family ceiling from splitting into one path each.
    pub ceiling: f64,
    pub rows: Vec<RateRow>,
}

/// `(1/k) log D_k` for `k ≤ k_max` against its limit `c_0`.
pub fn many_paths_rate(sym: &Symbol, k_max: usize) -> Result<ManyPathsReport> {
    let c = log_coefficients(sym, 1)?;
    let c0 = c.get(0);
    let rows = (1..=k_max)
        .map(|k| {
            let d = toeplitz_det(sym, k)?;
            if d.sign() <= 0 {
                return Err(Error::Precision {
                    what: "many_paths_rate",
                    detail: format!("non-positive Toeplitz determinant at k = {k}"),
                });
            }
            Ok(RateRow {
                k,
                log_det: d.logmag(),
                rate: d.logmag() / k as f64,
                normalized: (d.logmag() - k as f64 * c0).exp(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(ManyPathsReport {
        c0,
        szego_constant: strong_szego_constant(sym)?,
        ceiling: sym.coeff(0).ln(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{lgv_count, stack};

    fn worked() -> Symbol {
        Symbol::new([(-1, 5.0), (0, 10.0), (1, 1.0)])
    }

    #[test]
    fn geometry_symbols() {
        let s = symbol_from_geometry(Point::new(3, 2), (-2, 2)).unwrap();
        assert_eq!(s, Symbol::new([(-1, 1.0), (0, 10.0), (1, 5.0)]));
        let s = symbol_from_geometry(Point::new(1, 0), (-1, 1)).unwrap();
        assert_eq!(s, Symbol::new([(0, 1.0), (1, 1.0)]));
        assert_eq!(s.coeff(7), 0.0);
        assert!(symbol_from_geometry(Point::new(1, 0), (1, 1)).is_err());
    }

    #[test]
    fn winding() {
        assert_eq!(winding_number(&worked()).unwrap(), 0);
        assert_eq!(winding_number(&Symbol::new([(1, 1.0)])).unwrap(), 1);
        assert_eq!(winding_number(&Symbol::new([(-1, 1.0)])).unwrap(), -1);
        assert_eq!(winding_number(&worked().scale(3.5)).unwrap(), 0);
        // 1 + s vanishes at s = −1.
        assert!(matches!(winding_number(&Symbol::new([(0, 1.0), (1, 1.0)])), Err(Error::ZeroOnCircle { .. })));
    }

    #[test]
    fn worked_log_coefficients() {
        let c = log_coefficients(&worked(), 4).unwrap();
        let r5 = 5f64.sqrt();
        assert!((c.get(0) - (5.0 + 2.0 * r5).ln()).abs() < 1e-10);
        assert!((c.get(1) - 1.0 / (5.0 + 2.0 * r5)).abs() < 1e-10);
        assert!((c.get(-1) - (5.0 - 2.0 * r5)).abs() < 1e-10);
        let e = strong_szego_constant(&worked()).unwrap();
        assert!((e - (2.0 + r5) / 4.0).abs() < 1e-10);
        assert!((strong_szego_constant(&Symbol::new([(0, 3.0)])).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn fourier_inversion() {
        let sym = Symbol::new([(-2, 1.0), (-1, 4.0), (0, 12.0), (1, 3.0), (2, 0.5)]);
        let c = log_coefficients(&sym, 200).unwrap();
        for j in 0..50 {
            let t = 0.1257 * j as f64;
            let log_a: Complex64 = c.coeffs.iter().map(|(&m, &v)| Complex64::from_polar(v, m as f64 * t)).sum();
            assert!((log_a.exp() - sym.eval(t)).norm() < 1e-10);
        }
    }

    #[test]
    fn toeplitz_values() {
        let s = worked();
        assert!((toeplitz_det(&s, 1).unwrap().to_f64() - 10.0).abs() < 1e-12);
        assert!((toeplitz_det(&s, 2).unwrap().to_f64() - 95.0).abs() < 1e-11);
        let r = many_paths_rate(&s, 40).unwrap();
        assert!((r.rows[39].normalized - r.szego_constant).abs() < 1e-6);
        assert!((r.rows[29].rate - r.c0).abs() < 0.02);
        assert!(r.c0 < r.ceiling);
    }

    #[test]
    fn toeplitz_equals_lgv_count() {
        let (z, h) = (Point::new(3, 2), (-2, 2));
        let s = symbol_from_geometry(z, h).unwrap();
        for k in 1..=5 {
            let xs = stack(Point::new(0, 0), h, k);
            let ys = stack(z, h, k);
            let lgv = lgv_count(&xs, &ys).unwrap().to_f64();
            let t = toeplitz_det(&s, k).unwrap().to_f64();
            assert!((lgv - t).abs() < 1e-9 * t, "k = {k}");
        }
    }
}
