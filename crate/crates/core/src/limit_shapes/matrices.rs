//! GUE and LUE sampling, a Jacobi eigensolver, and eigenvalue processes of
//! nested minors.

use crate::environment::{derive_seed, UniformField};
use crate::error::{Error, Result};
use crate::interface::InterfaceGrid;
use crate::lattice::Point;
use crate::polymer::last_passage;
use crate::stats::{ks_two_sample, mean, variance, Estimate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

/// Dense complex Hermitian matrix, row-major real and imaginary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl HermitianMatrix {
    /// Builds from the upper triangle `(a, b) ↦ (re, im)`, `a ≤ b`; the
    /// diagonal imaginary part is ignored.
    pub fn from_upper<F: FnMut(usize, usize) -> (f64, f64)>(n: usize, mut f: F) -> Self {
        let mut re = vec![0.0; n * n];
        let mut im = vec![0.0; n * n];
        for a in 0..n {
            for b in a..n {
                let (x, y) = f(a, b);
                let y = if a == b { 0.0 } else { y };
                re[a * n + b] = x;
                re[b * n + a] = x;
                im[a * n + b] = y;
                im[b * n + a] = -y;
            }
        }
        HermitianMatrix { n, re, im }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize) -> (f64, f64) {
        (self.re[a * self.n + b], self.im[a * self.n + b])
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|a| self.re[a * self.n + a]).sum()
    }

    /// Principal submatrix on the consecutive indices `start..start+size`.
    pub fn minor(&self, start: usize, size: usize) -> HermitianMatrix {
        HermitianMatrix::from_upper(size, |a, b| self.get(start + a, start + b))
    }

    /// Eigenvalues in decreasing order.
    ///
    /// Diagonalises the real symmetric embedding `[[A, −B], [B, A]]` of
    /// `A + iB` by cyclic Jacobi rotations; each eigenvalue appears twice
    /// there and one copy of every pair is kept.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let n = self.n;
        let m = 2 * n;
        let mut s = vec![0.0; m * m];
        for a in 0..n {
            for b in 0..n {
                let (x, y) = self.get(a, b);
                s[a * m + b] = x;
                s[(a + n) * m + b + n] = x;
                s[a * m + b + n] = -y;
                s[(a + n) * m + b] = y;
            }
        }
        let mut ev = jacobi_eigenvalues(&mut s, m)?;
        ev.sort_by(|a, b| b.total_cmp(a));
        Ok(ev.into_iter().step_by(2).collect())
    }
}

const JACOBI_THRESHOLD: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 30;

/// Eigenvalues of the real symmetric `m × m` matrix `s` (destroyed), by
/// cyclic Jacobi sweeps until the off-diagonal Frobenius norm drops below
/// `1e-12` times the full norm.
fn jacobi_eigenvalues(s: &mut [f64], m: usize) -> Result<Vec<f64>> {
    let total: f64 = s.iter().map(|x| x * x).sum();
    let target = JACOBI_THRESHOLD * JACOBI_THRESHOLD * total.max(f64::MIN_POSITIVE);
    let off = |s: &[f64]| -> f64 {
        let mut acc = 0.0;
        for p in 0..m {
            for q in p + 1..m {
                acc += 2.0 * s[p * m + q] * s[p * m + q];
            }
        }
        acc
    };
    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if off(s) <= target {
            return Ok((0..m).map(|p| s[p * m + p]).collect());
        }
        for p in 0..m {
            for q in p + 1..m {
                let apq = s[p * m + q];
                if apq == 0.0 {
                    continue;
                }
                let (app, aqq) = (s[p * m + p], s[q * m + q]);
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                for k in 0..m {
                    let skp = s[k * m + p];
                    let skq = s[k * m + q];
                    s[k * m + p] = c * skp - sn * skq;
                    s[k * m + q] = sn * skp + c * skq;
                }
                for k in 0..m {
                    let spk = s[p * m + k];
                    let sqk = s[q * m + k];
                    s[p * m + k] = c * spk - sn * sqk;
                    s[q * m + k] = sn * spk + c * sqk;
                }
            }
        }
    }
    if off(s) <= target {
        return Ok((0..m).map(|p| s[p * m + p]).collect());
    }
    Err(Error::NoConvergence {
        what: "Jacobi eigenvalue sweeps",
        iterations: JACOBI_MAX_SWEEPS,
    })
}

/// GUE matrix with density proportional to `exp(−Tr H² / 2)`: standard
/// normal diagonal, off-diagonal real and imaginary parts of variance ½.
pub fn gue_matrix(n: usize, seed: u64) -> HermitianMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    HermitianMatrix::from_upper(n, |a, b| {
        if a == b {
            (rng.sample(StandardNormal), 0.0)
        } else {
            let x: f64 = rng.sample(StandardNormal);
            let y: f64 = rng.sample(StandardNormal);
            (h * x, h * y)
        }
    })
}

/// `X X*` for an `m × n` matrix `X` of standard complex Gaussians
/// (`E|x|² = 1`).
pub fn lue_matrix(n: usize, m: usize, seed: u64) -> Result<HermitianMatrix> {
    if m > n {
        return Err(Error::Invalid(format!("lue_matrix needs m ≤ N, got m = {m}, N = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut xr = vec![0.0; m * n];
    let mut xi = vec![0.0; m * n];
    for k in 0..m * n {
        let a: f64 = rng.sample(StandardNormal);
        let b: f64 = rng.sample(StandardNormal);
        xr[k] = h * a;
        xi[k] = h * b;
    }
    Ok(HermitianMatrix::from_upper(m, |a, b| {
        let (mut re, mut im) = (0.0, 0.0);
        for k in 0..n {
            let (ar, ai) = (xr[a * n + k], xi[a * n + k]);
            let (br, bi) = (xr[b * n + k], -xi[b * n + k]);
            re += ar * br - ai * bi;
            im += ar * bi + ai * br;
        }
        (re, im)
    }))
}

pub fn gue_sample(n: usize, seed: u64) -> Result<Vec<f64>> {
    gue_matrix(n, seed).eigenvalues()
}

pub fn lue_sample(n: usize, m: usize, seed: u64) -> Result<Vec<f64>> {
    lue_matrix(n, m, seed)?.eigenvalues()
}

/// Eigenvalue process of nested minors.
///
/// For `i ≤ j` the value is the `i`-th largest eigenvalue of the top-left
/// minor of size `N − j + i`. For `i ≥ j` it is the `j`-th largest
/// eigenvalue of the bottom-right minor of size `N − i + j`, i.e. the
/// top-left minor after conjugating by the index-reversal permutation.
pub fn eigenvalue_process(h: &HermitianMatrix) -> Result<InterfaceGrid> {
    let n = h.n();
    let top: Vec<Vec<f64>> = (0..=n).map(|s| if s == 0 { Ok(vec![]) } else { h.minor(0, s).eigenvalues() }).collect::<Result<_>>()?;
    let bottom: Vec<Vec<f64>> = (0..=n)
        .map(|s| if s == 0 { Ok(vec![]) } else { h.minor(n - s, s).eigenvalues() })
        .collect::<Result<_>>()?;
    Ok(InterfaceGrid::from_fn(n, |i, j| {
        if i <= j {
            top[n - j + i][i - 1]
        } else {
            bottom[n - i + j][j - 1]
        }
    }))
}

#[derive(Debug, Clone, Serialize)]
pub struct JohanssonReport {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub samples: usize,
    pub passage: Estimate,
    pub eigen: Estimate,
    pub passage_variance: f64,
    pub eigen_variance: f64,
    /// Difference of means over its combined standard error.
    pub mean_z: f64,
    /// Difference of variances over its combined standard error.
    pub variance_z: f64,
    pub ks: f64,
}

fn variance_stderr(xs: &[f64]) -> f64 {
    let m = mean(xs);
    let v = variance(xs);
    let m4 = xs.iter().map(|x| (x - m).powi(4)).sum::<f64>() / xs.len() as f64;
    ((m4 - v * v).max(0.0) / xs.len() as f64).sqrt()
}

/// Law of `L^N(m, k)` for Exp(1) weights against the sum of the `k`
/// largest eigenvalues of an `N`-column LUE matrix of size `m`, from two
/// independent sample sets.
pub fn johansson_check(n: usize, m: usize, k: usize, samples: usize, seed: u64) -> Result<JohanssonReport> {
    if k == 0 || k > m || m > n {
        return Err(Error::Invalid(format!("johansson_check needs 1 ≤ k ≤ m ≤ N, got N={n} m={m} k={k}")));
    }
    let pairs: Vec<(f64, f64)> = (0..samples as u64)
        .into_par_iter()
        .map(|s| -> Result<(f64, f64)> {
            let field = UniformField::new(derive_seed(seed, 2 * s));
            let l = last_passage(n, m, k, |p: Point| field.coupled_exponential(p))?;
            let ev = lue_sample(n, m, derive_seed(seed, 2 * s + 1))?;
            Ok((l, ev[..k].iter().sum()))
        })
        .collect::<Result<_>>()?;
    let (lp, ev): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    let (a, b) = (Estimate::from_samples(&lp), Estimate::from_samples(&ev));
    let (va, vb) = (variance(&lp), variance(&ev));
    let mean_z = (a.mean - b.mean) / (a.stderr.hypot(b.stderr)).max(f64::MIN_POSITIVE);
    let variance_z = (va - vb) / variance_stderr(&lp).hypot(variance_stderr(&ev)).max(f64::MIN_POSITIVE);
    Ok(JohanssonReport {
        n,
        m,
        k,
        samples,
        passage: a,
        eigen: b,
        passage_variance: va,
        eigen_variance: vb,
        mean_z,
        variance_z,
        ks: ks_two_sample(&lp, &ev),
    })
}
