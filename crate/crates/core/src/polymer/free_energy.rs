//! Free energies: Monte Carlo estimates, the exactly solvable log-gamma
//! value, last-passage growth, and the counting limit for macroscopically
//! many paths.

use super::{last_passage_single_with, single_path_logz_with};
use crate::environment::{derive_seed, Environment, UniformField, WeightSpec};
use crate::error::{Error, Result};
use crate::lattice::{macmahon_log_count, Point};
use crate::special::{digamma_unchecked, log_binomial, trigamma_unchecked};
use crate::stats::Estimate;
use rayon::prelude::*;
use serde::Serialize;

/// Second coordinate of the endpoint `(N, cN)`, rounded to the nearest
/// integer and at least 1.
pub fn endpoint_height(n: usize, c: f64) -> usize {
    ((c * n as f64).round() as usize).max(1)
}

/// `(1/N) log Z_{(1,1)→(N,cN)}` for replica `r` of `seed`.
pub fn free_energy_replica(spec: WeightSpec, beta: f64, n: usize, c: f64, seed: u64, r: u64) -> Result<f64> {
    let env = Environment::new(derive_seed(seed, r), spec)?;
    let y = Point::new(n as i64, endpoint_height(n, c) as i64);
    let lz = single_path_logz_with(Point::new(1, 1), y, false, |p| beta * env.omega(p));
    Ok(lz / n as f64)
}

#[derive(Debug, Clone, Serialize)]
pub struct FreeEnergyReport {
    pub n: usize,
    pub c: f64,
    pub beta: f64,
    pub spec: WeightSpec,
    pub seed: u64,
    pub estimate: Estimate,
    /// Per-replica values, indexed by replica.
    pub replicas: Vec<f64>,
}

/// Mean and standard error of `(1/N) log Z_{(1,1)→(N,cN)}` over independent
/// environments.
pub fn free_energy_mc(spec: WeightSpec, beta: f64, n: usize, c: f64, replicas: usize, seed: u64) -> Result<FreeEnergyReport> {
    check_positive("free_energy_mc", n, c)?;
    spec.validate()?;
    let values: Vec<f64> = (0..replicas as u64)
        .into_par_iter()
        .map(|r| free_energy_replica(spec, beta, n, c, seed, r))
        .collect::<Result<_>>()?;
    Ok(FreeEnergyReport {
        n,
        c,
        beta,
        spec,
        seed,
        estimate: Estimate::from_samples(&values),
        replicas: values,
    })
}

fn check_positive(func: &'static str, n: usize, c: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::Invalid(format!("{func}: N must be positive")));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::Domain {
            func,
            value: c,
            expected: "c > 0",
        });
    }
    Ok(())
}

/// `(1/N) log C(2N, N)`, the free energy at zero inverse temperature.
pub fn infinite_temperature(n: usize) -> f64 {
    log_binomial(2 * n as i64, n as i64).logmag() / n as f64
}

/// `sup_{θ∈(0,μ)} (a ψ₀(θ) + b ψ₀(μ−θ))` for `a, b ≥ 0`.
///
/// The objective is concave, so the maximiser is the unique zero of the
/// decreasing derivative `a ψ₁(θ) − b ψ₁(μ−θ)`.
pub fn sup_digamma_pair(a: f64, b: f64, mu: f64) -> f64 {
    if a == 0.0 {
        return b * digamma_unchecked(mu);
    }
    if b == 0.0 {
        return a * digamma_unchecked(mu);
    }
    let (mut lo, mut hi) = (0.0, mu);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if a * trigamma_unchecked(mid) - b * trigamma_unchecked(mu - mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    a * digamma_unchecked(t) + b * digamma_unchecked(mu - t)
}

/// Exact point-to-point free energy of the log-gamma polymer in direction
/// `(1, c)`.
pub fn sepp_free_energy(mu: f64, c: f64) -> Result<f64> {
    if !(mu > 0.0) {
        return Err(Error::Domain {
            func: "sepp_free_energy",
            value: mu,
            expected: "mu > 0",
        });
    }
    if !(c > 0.0) {
        return Err(Error::Domain {
            func: "sepp_free_energy",
            value: c,
            expected: "c > 0",
        });
    }
    Ok(-sup_digamma_pair(c, 1.0, mu))
}

/// Last-passage time constant for Exp(1) weights in direction `(1, c)`.
pub fn rost_ell(c: f64) -> f64 {
    (1.0 + c.sqrt()).powi(2)
}

/// `(1/N) L^N` for a single exponential last-passage path `(1,1) → (N, cN)`.
pub fn last_passage_replica(n: usize, c: f64, seed: u64, r: u64) -> f64 {
    let field = UniformField::new(derive_seed(seed, r));
    let y = Point::new(n as i64, endpoint_height(n, c) as i64);
    last_passage_single_with(Point::new(1, 1), y, |p| field.coupled_exponential(p)) / n as f64
}

pub fn last_passage_mc(n: usize, c: f64, replicas: usize, seed: u64) -> Result<Estimate> {
    check_positive("last_passage_mc", n, c)?;
    let values: Vec<f64> = (0..replicas as u64)
        .into_par_iter()
        .map(|r| last_passage_replica(n, c, seed, r))
        .collect();
    Ok(Estimate::from_samples(&values))
}

/// Two-sided bound relating free energies in directions `c < c'`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct IneqReport {
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
    pub holds: bool,
}

/// `f_c + (c'−c)βν ≤ f_{c'} ≤ (c'/c) f_c − (c'/c − 1)βν`.
pub fn ineq_theorem_check(f_c: f64, f_cp: f64, c: f64, cp: f64, beta_nu: f64, tol: f64) -> Result<IneqReport> {
    if !(0.0 < c && c < cp) {
        return Err(Error::Invalid(format!("need 0 < c < c', got c={c}, c'={cp}")));
    }
    let lower = f_c + (cp - c) * beta_nu;
    let r = cp / c;
    let upper = r * f_c - (r - 1.0) * beta_nu;
    Ok(IneqReport {
        lower,
        value: f_cp,
        upper,
        holds: lower - tol <= f_cp && f_cp <= upper + tol,
    })
}

fn q_entropy(u: f64) -> f64 {
    if u == 0.0 {
        0.0
    } else {
        0.5 * u * u * u.ln()
    }
}

/// Limit of `(1/N²) log #Γ^N(cN, αN)`.
pub fn w_limit(c: f64, alpha: f64) -> Result<f64> {
    if !(0.0 <= alpha && alpha <= c.min(1.0)) {
        return Err(Error::Invalid(format!("w_limit needs 0 <= alpha <= min(1, c), got c={c}, alpha={alpha}")));
    }
    let q = q_entropy;
    Ok(q(1.0 + c - alpha) + q(1.0 - alpha) + q(c - alpha) + q(alpha) - q(c) - q(c + 1.0 - 2.0 * alpha))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScaledCountReport {
    pub n: usize,
    pub scaled_log_count: f64,
    pub limit: f64,
    pub gap: f64,
}

/// Compares `(1/N²) log #Γ^N(cN, αN)` with [`w_limit`].
pub fn scaled_k_check(n: usize, c: f64, alpha: f64) -> Result<ScaledCountReport> {
    let m = (c * n as f64).round() as u64;
    let k = (alpha * n as f64).round() as u64;
    let scaled = macmahon_log_count(n as u64, m, k)? / (n * n) as f64;
    let limit = w_limit(c, alpha)?;
    Ok(ScaledCountReport {
        n,
        scaled_log_count: scaled,
        limit,
        gap: (scaled - limit).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::EULER_GAMMA;

    #[test]
    fn sepp_values() {
        assert!((sepp_free_energy(2.0, 1.0).unwrap() - 2.0 * EULER_GAMMA).abs() < 1e-12);
        let v = sepp_free_energy(1.0, 1.0).unwrap();
        assert!((v - (2.0 * EULER_GAMMA + 4.0 * 2f64.ln())).abs() < 1e-12);
        let mut prev = f64::INFINITY;
        for mu in [0.5, 1.0, 2.0, 4.0, 8.0] {
            let f = sepp_free_energy(mu, 1.7).unwrap();
            assert!(f < prev);
            prev = f;
        }
        assert!(sepp_free_energy(0.0, 1.0).is_err());
    }

    #[test]
    fn counting_limits() {
        assert!((rost_ell(1.0) - 4.0).abs() < 1e-15);
        assert!((w_limit(1.0, 0.5).unwrap() - 0.196_218_0).abs() < 1e-6);
        assert!(w_limit(1.0, 0.0).unwrap().abs() < 1e-15);
        assert!((infinite_temperature(2000) - 2.0 * 2f64.ln()).abs() < 0.01);
    }

    #[test]
    fn infinite_temperature_via_dp() {
        let n = 300;
        let lz = single_path_logz_with(Point::new(1, 1), Point::new(n, n), false, |_| 0.0);
        assert!((lz - (n - 1) as f64 * infinite_temperature(n as usize - 1)).abs() < 1e-10);
    }

    #[test]
    fn sepp_satisfies_direction_inequalities() {
        for &mu in &[0.8, 2.0, 5.0] {
            let beta_nu = -digamma_unchecked(mu);
            for &(c, cp) in &[(0.5, 1.0), (1.0, 2.0), (0.3, 3.0)] {
                let r = ineq_theorem_check(
                    sepp_free_energy(mu, c).unwrap(),
                    sepp_free_energy(mu, cp).unwrap(),
                    c,
                    cp,
                    beta_nu,
                    1e-12,
                )
                .unwrap();
                assert!(r.holds, "mu={mu} c={c} c'={cp}: {r:?}");
            }
        }
    }

    #[test]
    fn replicas_are_reproducible() {
        let a = free_energy_mc(WeightSpec::LogGamma(2.0), 1.0, 16, 1.0, 4, 7).unwrap();
        let b = free_energy_mc(WeightSpec::LogGamma(2.0), 1.0, 16, 1.0, 4, 7).unwrap();
        assert_eq!(a.replicas, b.replicas);
        let z = free_energy_mc(WeightSpec::Constant(0.0), 1.0, 50, 1.0, 2, 7).unwrap();
        assert!((z.estimate.mean - log_binomial(98, 49).logmag() / 50.0).abs() < 1e-12);
    }
}
