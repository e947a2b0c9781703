//! Single-site random-walk Metropolis sampler for the exponential-interaction
//! interface, and the polymer-side Monte Carlo it is compared against.

use super::{build_phi, check_n, phi_guess, InterfaceGrid};
use crate::environment::{derive_seed, Environment, WeightSpec};
use crate::error::{Error, Result};
use crate::stats::{batch_means_stderr, integrated_autocorrelation_time, Estimate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

const TARGET_LOW: f64 = 0.3;
const TARGET_HIGH: f64 = 0.5;

/// Metropolis chain on `R^{S_N}` targeting [`super::interface_log_density`].
#[derive(Debug, Clone)]
pub struct GibbsSampler {
    mu: f64,
    state: InterfaceGrid,
    scale: f64,
    rng: ChaCha8Rng,
    accepted: u64,
    proposed: u64,
}

impl GibbsSampler {
    pub fn new(n: usize, mu: f64, seed: u64) -> Result<Self> {
        check_n("gibbs_sampler", n)?;
        if !(mu > 0.0) {
            return Err(Error::Domain {
                func: "gibbs_sampler",
                value: mu,
                expected: "mu > 0",
            });
        }
        Ok(GibbsSampler {
            mu,
            state: phi_guess(n, mu),
            scale: 1.0,
            rng: ChaCha8Rng::seed_from_u64(seed),
            accepted: 0,
            proposed: 0,
        })
    }

    pub fn state(&self) -> &InterfaceGrid {
        &self.state
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn acceptance_rate(&self) -> f64 {
        if self.proposed == 0 {
            0.0
        } else {
            self.accepted as f64 / self.proposed as f64
        }
    }

    /// Terms of the log-density that involve site `(i, j)` when it holds `v`.
    fn local_log_density(&self, i: usize, j: usize, v: f64) -> f64 {
        let s = &self.state;
        let n = s.n();
        let mut acc = 0.0;
        if i < n {
            acc -= (s.get(i + 1, j) - v).exp();
        }
        if j < n {
            acc -= (s.get(i, j + 1) - v).exp();
        }
        if i > 1 {
            acc -= (v - s.get(i - 1, j)).exp();
        }
        if j > 1 {
            acc -= (v - s.get(i, j - 1)).exp();
        }
        if i == j {
            acc -= self.mu * v;
            if i == n {
                acc -= (-v).exp();
            }
        }
        acc
    }

    /// Log Metropolis ratio for moving site `(i, j)` to `v`. Swapping the
    /// current and proposed values negates the result exactly.
    pub fn log_acceptance_ratio(&self, i: usize, j: usize, v: f64) -> f64 {
        self.local_log_density(i, j, v) - self.local_log_density(i, j, self.state.get(i, j))
    }

    fn update_site(&mut self, i: usize, j: usize) {
        let z: f64 = self.rng.sample(StandardNormal);
        let proposal = self.state.get(i, j) + self.scale * z;
        let log_ratio = self.log_acceptance_ratio(i, j, proposal);
        self.proposed += 1;
        let u: f64 = self.rng.gen();
        if log_ratio >= 0.0 || u.ln() < log_ratio {
            self.state.set(i, j, proposal);
            self.accepted += 1;
        }
    }

    /// One update of every site, in row-major order.
    pub fn sweep(&mut self) -> &InterfaceGrid {
        let n = self.state.n();
        for i in 1..=n {
            for j in 1..=n {
                self.update_site(i, j);
            }
        }
        &self.state
    }

    /// Burn-in that adapts the proposal scale towards an acceptance rate in
    /// `[0.3, 0.5]`, then resets the acceptance counters.
    pub fn tune(&mut self, sweeps: usize) {
        let block = 50;
        for _ in 0..sweeps.div_ceil(block) {
            self.accepted = 0;
            self.proposed = 0;
            for _ in 0..block {
                self.sweep();
            }
            let rate = self.acceptance_rate();
            if rate < TARGET_LOW {
                self.scale *= 0.8;
            } else if rate > TARGET_HIGH {
                self.scale *= 1.25;
            }
        }
        self.accepted = 0;
        self.proposed = 0;
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GibbsReport {
    pub n: usize,
    pub mu: f64,
    pub updates: u64,
    pub acceptance: f64,
    pub scale: f64,
    /// Largest integrated autocorrelation time over sites, in sweeps.
    pub max_iat: f64,
    pub means: InterfaceGrid,
    pub stderr: InterfaceGrid,
    pub second_moments: InterfaceGrid,
}

/// Runs a tuned chain for (at least) `updates` single-site updates and
/// summarises per-site moments. Standard errors use batch means.
pub fn gibbs_site_moments(n: usize, mu: f64, updates: u64, seed: u64) -> Result<GibbsReport> {
    let mut s = GibbsSampler::new(n, mu, seed)?;
    s.tune(5_000);
    let sites = (n * n) as u64;
    let sweeps = updates.div_ceil(sites) as usize;
    let mut traces = vec![Vec::with_capacity(sweeps); n * n];
    for _ in 0..sweeps {
        let st = s.sweep();
        for (t, &v) in traces.iter_mut().zip(st.values()) {
            t.push(v);
        }
    }
    let means: Vec<f64> = traces.iter().map(|t| t.iter().sum::<f64>() / t.len() as f64).collect();
    let second: Vec<f64> = traces.iter().map(|t| t.iter().map(|v| v * v).sum::<f64>() / t.len() as f64).collect();
    let stderr: Vec<f64> = traces.iter().map(|t| batch_means_stderr(t, 100)).collect();
    let max_iat = traces
        .iter()
        .map(|t| integrated_autocorrelation_time(&t[..t.len().min(50_000)]))
        .fold(1.0, f64::max);
    let grid = |v: &[f64]| InterfaceGrid::from_fn(n, |i, j| v[(i - 1) * n + (j - 1)]);
    Ok(GibbsReport {
        n,
        mu,
        updates: sweeps as u64 * sites,
        acceptance: s.acceptance_rate(),
        scale: s.scale(),
        max_iat,
        means: grid(&means),
        stderr: grid(&stderr),
        second_moments: grid(&second),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PhiMoments {
    pub n: usize,
    pub mu: f64,
    pub samples: usize,
    pub means: InterfaceGrid,
    pub stderr: InterfaceGrid,
    pub second_moments: InterfaceGrid,
}

/// Per-site moments of the polymer-built interface over independent
/// environments.
pub fn phi_site_moments(n: usize, mu: f64, samples: usize, seed: u64) -> Result<PhiMoments> {
    let grids: Vec<InterfaceGrid> = (0..samples as u64)
        .into_par_iter()
        .map(|r| build_phi(&Environment::new(derive_seed(seed, r), WeightSpec::LogGamma(mu))?, n))
        .collect::<Result<_>>()?;
    let site = |i: usize, j: usize| -> Vec<f64> { grids.iter().map(|g| g.get(i, j)).collect() };
    let est = InterfaceGrid::from_fn(n, |i, j| Estimate::from_samples(&site(i, j)).mean);
    let se = InterfaceGrid::from_fn(n, |i, j| Estimate::from_samples(&site(i, j)).stderr);
    let m2 = InterfaceGrid::from_fn(n, |i, j| site(i, j).iter().map(|v| v * v).sum::<f64>() / samples as f64);
    Ok(PhiMoments {
        n,
        mu,
        samples,
        means: est,
        stderr: se,
        second_moments: m2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::digamma;

    #[test]
    fn reversal_negates_ratio_bitwise() {
        let mut s = GibbsSampler::new(3, 1.2, 5).unwrap();
        s.tune(100);
        for &(i, j, d) in &[(1, 1, 0.3), (2, 3, -0.7), (3, 3, 1.1)] {
            let old = s.state().get(i, j);
            let forward = s.log_acceptance_ratio(i, j, old + d);
            let mut moved = s.clone();
            moved.state.set(i, j, old + d);
            let backward = moved.log_acceptance_ratio(i, j, old);
            assert_eq!(forward, -backward);
        }
    }

    #[test]
    fn one_site_mean_is_minus_digamma() {
        let r = gibbs_site_moments(1, 2.5, 400_000, 11).unwrap();
        let target = -digamma(2.5).unwrap();
        assert!((r.means.get(1, 1) - target).abs() < 4.0 * r.stderr.get(1, 1), "{r:?}");
        assert!((TARGET_LOW - 0.05..=TARGET_HIGH + 0.05).contains(&r.acceptance));
    }
}
