//! Monte Carlo probes of the deterministic bounds on k-path partition
//! functions: Jensen-type sandwiches, series/parallel decompositions and
//! linearity in the number of paths.

use super::{kpath_logz, kpath_logz_brute, single_path_logz_with, LogZTable, WeightGrid};
use crate::environment::{derive_seed, Environment, WeightSpec};
use crate::error::{Error, Result};
use crate::lattice::{lgv_count, stack_diag, stack_down, stack_up, Point};
use crate::stats::Estimate;
use rayon::prelude::*;
use serde::Serialize;

/// Total number of weights a family `xs → ys` collects, starts excluded.
pub fn path_weight_count(xs: &[Point], ys: &[Point]) -> i64 {
    xs.iter()
        .zip(ys)
        .map(|(x, y)| (y.x1 - x.x1) + (y.x2 - x.x2))
        .sum()
}

fn bounding_grid(env: &Environment, beta: f64, xs: &[Point], ys: &[Point]) -> WeightGrid {
    let all = || xs.iter().chain(ys);
    let lo = Point::new(all().map(|p| p.x1).min().unwrap_or(0), all().map(|p| p.x2).min().unwrap_or(0));
    let hi = Point::new(all().map(|p| p.x1).max().unwrap_or(0), all().map(|p| p.x2).max().unwrap_or(0));
    WeightGrid::from_env(env, beta, lo, hi)
}

#[derive(Debug, Clone, Serialize)]
pub struct SandwichReport {
    /// `β ν`.
    pub lower: f64,
    /// `log E e^{βω}`, absent when infinite.
    pub upper: Option<f64>,
    /// Mean of `(1/ϖ) log(Z(β)/Z(0))`.
    pub estimate: Estimate,
    /// Whether the estimate lies in the interval up to three standard errors.
    pub within: bool,
}

/// Checks `βν ≤ (1/ϖ) E log(Z(β)/Z(0)) ≤ log E e^{βω}` by Monte Carlo.
pub fn jensen_sandwich_check(
    spec: WeightSpec,
    beta: f64,
    xs: &[Point],
    ys: &[Point],
    replicas: usize,
    seed: u64,
) -> Result<SandwichReport> {
    spec.validate()?;
    let count = lgv_count(xs, ys)?;
    if count.sign() <= 0 {
        return Err(Error::Invalid("no non-intersecting family joins the k-points".into()));
    }
    let varpi = path_weight_count(xs, ys) as f64;
    let samples: Vec<f64> = (0..replicas as u64)
        .into_par_iter()
        .map(|r| {
            let env = Environment::new(derive_seed(seed, r), spec)?;
            let grid = bounding_grid(&env, beta, xs, ys);
            Ok((kpath_logz(&grid, xs, ys, false)? - count.logmag()) / varpi)
        })
        .collect::<Result<_>>()?;
    let estimate = Estimate::from_samples(&samples);
    let lower = beta * spec.mean();
    let upper = spec.log_mgf(beta);
    let slack = 3.0 * estimate.stderr.max(1e-12);
    let within = estimate.mean >= lower - slack && upper.is_none_or(|u| estimate.mean <= u + slack);
    Ok(SandwichReport {
        lower,
        upper,
        estimate,
        within,
    })
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct DecompositionReport {
    pub instances: usize,
    pub series_violations: usize,
    pub parallel_violations: usize,
    pub hadamard_violations: usize,
    /// Smallest slack `log(bigger) − log(smaller)` seen across all checks.
    pub min_margin: f64,
}

/// Checks, environment by environment on a 4×4 box with log-gamma weights,
/// that concatenating at a nice intermediate k-point bounds `Z` from below
/// and that splitting a family into sub-families bounds it from above.
pub fn parallel_series_bound_mc(mu: f64, replicas: usize, seed: u64) -> Result<DecompositionReport> {
    let spec = WeightSpec::LogGamma(mu);
    spec.validate()?;
    const TOL: f64 = 1e-10;
    let x2 = stack_up(Point::new(1, 1), 2);
    let z2 = stack_down(Point::new(4, 4), 2);
    let mids = [stack_up(Point::new(2, 2), 2), stack_diag(Point::new(3, 2), 2)];
    let x3 = stack_up(Point::new(1, 1), 3);
    let z3 = stack_down(Point::new(4, 4), 3);
    let per: Vec<(usize, usize, usize, f64)> = (0..replicas as u64)
        .into_par_iter()
        .map(|r| {
            let env = Environment::new(derive_seed(seed, r), spec)?;
            let g = WeightGrid::rectangle(&env, 1.0, 4, 4);
            let z = |xs: &[Point], ys: &[Point]| kpath_logz_brute(&g, xs, ys, false, 100_000);
            let mut margin = f64::INFINITY;
            let (mut s, mut p, mut h) = (0, 0, 0);
            let full2 = z(&x2, &z2)?;
            for y in &mids {
                let m = full2 - (z(&x2, y)? + z(y, &z2)?);
                margin = margin.min(m);
                s += usize::from(m < -TOL);
            }
            let singles2 = z(&x2[..1], &z2[..1])? + z(&x2[1..], &z2[1..])?;
            let m = singles2 - full2;
            margin = margin.min(m);
            p += usize::from(m < -TOL);
            let full3 = z(&x3, &z3)?;
            let split = z(&x3[..2], &z3[..2])? + z(&x3[2..], &z3[2..])?;
            let m = split - full3;
            margin = margin.min(m);
            p += usize::from(m < -TOL);
            let diag: f64 = (0..3).map(|i| z(&x3[i..=i], &z3[i..=i])).sum::<Result<f64>>()?;
            let m = diag - full3;
            margin = margin.min(m);
            h += usize::from(m < -TOL);
            Ok((s, p, h, margin))
        })
        .collect::<Result<_>>()?;
    let mut rep = DecompositionReport {
        instances: replicas,
        min_margin: f64::INFINITY,
        ..Default::default()
    };
    for (s, p, h, m) in per {
        rep.series_violations += s;
        rep.parallel_violations += p;
        rep.hadamard_violations += h;
        rep.min_margin = rep.min_margin.min(m);
    }
    Ok(rep)
}

#[derive(Debug, Clone, Serialize)]
pub struct LinearityReport {
    pub n: usize,
    /// `(1/N) log Z` for one path.
    pub one_path: Estimate,
    /// `(1/N) log Z` for two stacked paths.
    pub two_paths: Estimate,
    /// Paired difference `f̂(2) − 2 f̂(1)` over the same environments.
    pub difference: Estimate,
}

/// Compares the two-path free energy with twice the one-path free energy
/// along the diagonal.
pub fn k_linearity_probe(mu: f64, n: usize, replicas: usize, seed: u64) -> Result<LinearityReport> {
    let spec = WeightSpec::LogGamma(mu);
    spec.validate()?;
    let ni = n as i64;
    let rows: Vec<(f64, f64)> = (0..replicas as u64)
        .into_par_iter()
        .map(|r| {
            let env = Environment::new(derive_seed(seed, r), spec)?;
            let f1 = single_path_logz_with(Point::new(1, 1), Point::new(ni, ni), false, |p| env.omega(p));
            let grid = WeightGrid::rectangle(&env, 1.0, n, n + 1);
            let xs = stack_up(Point::new(1, 1), 2);
            let ys = stack_up(Point::new(ni, ni), 2);
            let tables = [LogZTable::new(&grid, xs[0], false)?, LogZTable::new(&grid, xs[1], false)?];
            let m: Vec<Vec<f64>> = tables.iter().map(|t| ys.iter().map(|&y| t.get(y)).collect()).collect();
            let f2 = super::lgv_from_matrix(&m)?.log_z;
            Ok((f1 / n as f64, f2 / n as f64))
        })
        .collect::<Result<_>>()?;
    let one: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let two: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let diff: Vec<f64> = rows.iter().map(|r| r.1 - 2.0 * r.0).collect();
    Ok(LinearityReport {
        n,
        one_path: Estimate::from_samples(&one),
        two_paths: Estimate::from_samples(&two),
        difference: Estimate::from_samples(&diff),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_and_bernoulli_sandwiches() {
        let xs = stack_up(Point::new(1, 1), 2);
        let ys = stack_down(Point::new(5, 5), 2);
        let g = jensen_sandwich_check(WeightSpec::Gaussian, 0.7, &xs, &ys, 200, 1).unwrap();
        assert!(g.within, "{g:?}");
        assert_eq!(g.lower, 0.0);
        assert!((g.upper.unwrap() - 0.245).abs() < 1e-12);
        let b = jensen_sandwich_check(WeightSpec::Bernoulli(0.5), 1.0, &xs, &ys, 200, 2).unwrap();
        assert!(b.within, "{b:?}");
        assert!((b.lower - 0.5).abs() < 1e-15);
        assert!((b.upper.unwrap() - ((1.0 + 1f64.exp()) / 2.0).ln()).abs() < 1e-12);
    }

    #[test]
    fn log_gamma_sandwich_needs_finite_moment() {
        let xs = stack_up(Point::new(1, 1), 2);
        let ys = stack_down(Point::new(4, 4), 2);
        let r = jensen_sandwich_check(WeightSpec::LogGamma(1.0), 1.0, &xs, &ys, 50, 3).unwrap();
        assert!(r.upper.is_none());
        let r = jensen_sandwich_check(WeightSpec::LogGamma(2.5), 1.0, &xs, &ys, 200, 3).unwrap();
        assert!(r.within, "{r:?}");
    }

    #[test]
    fn decompositions_never_violated() {
        let r = parallel_series_bound_mc(1.5, 1000, 4).unwrap();
        assert_eq!(r.series_violations + r.parallel_violations + r.hadamard_violations, 0, "{r:?}");
        assert!(r.min_margin > -1e-10);
    }
}
