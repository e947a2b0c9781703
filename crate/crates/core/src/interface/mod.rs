//! Stochastic interfaces on the square `S_N = {1..N}²`: the log-gamma
//! interface built from polymer partition functions, its Hamiltonian, a
//! Metropolis sampler, the deterministic large-shape profile `θ_min` and
//! the energy it minimises.

mod gibbs;
mod limits;
mod patterns;

pub use gibbs::*;
pub use limits::*;
pub use patterns::*;

use crate::environment::Environment;
use crate::error::{Error, Result};
use crate::polymer::TauTable;
use crate::special::{log_factorial, log_gamma};
use serde::Serialize;

/// Real values on `S_N`, indexed from 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterfaceGrid {
    n: usize,
    values: Vec<f64>,
}

impl InterfaceGrid {
    pub fn zeros(n: usize) -> Self {
        InterfaceGrid {
            n,
            values: vec![0.0; n * n],
        }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> f64>(n: usize, mut f: F) -> Self {
        let mut g = Self::zeros(n);
        for i in 1..=n {
            for j in 1..=n {
                g.set(i, j, f(i, j));
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.values[(i - 1) * self.n + (j - 1)] = v;
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (1..=self.n).map(|i| self.get(i, i)).collect()
    }

    /// Directed edges `⟨x, y⟩` with `y = x + (1,0)` or `y = x + (0,1)`.
    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), (usize, usize))> {
        let n = self.n;
        (1..=n).flat_map(move |i| {
            (1..=n).flat_map(move |j| {
                let east = (i < n).then_some(((i, j), (i + 1, j)));
                let north = (j < n).then_some(((i, j), (i, j + 1)));
                east.into_iter().chain(north)
            })
        })
    }

    /// `max |self − other|`.
    pub fn sup_distance(&self, other: &InterfaceGrid) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// Restriction to the triangle `{i ≤ j}`.
    pub fn upper_triangle(&self) -> GtPattern {
        GtPattern {
            n: self.n,
            values: (1..=self.n)
                .flat_map(|i| (i..=self.n).map(move |j| (i, j)))
                .map(|(i, j)| self.get(i, j))
                .collect(),
        }
    }

    pub fn transpose(&self) -> InterfaceGrid {
        InterfaceGrid::from_fn(self.n, |i, j| self.get(j, i))
    }
}

/// Values on the triangle `T_N = {(i,j): i ≤ j}`, stored row by row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GtPattern {
    n: usize,
    values: Vec<f64>,
}

impl GtPattern {
    fn index(&self, i: usize, j: usize) -> usize {
        // Rows 1..i-1 hold n, n-1, ..., n-i+2 entries.
        (i - 1) * (2 * self.n + 2 - i) / 2 + (j - i)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[self.index(i, j)]
    }

    /// Interlacing `φ(i,j−1) ≥ φ(i,j) ≥ φ(i+1,j)` for `i < j`, up to `tol`.
    pub fn is_interlacing(&self, tol: f64) -> bool {
        (1..self.n).all(|i| {
            (i + 1..=self.n).all(|j| {
                let v = self.get(i, j);
                self.get(i, j - 1) + tol >= v && v + tol >= self.get(i + 1, j)
            })
        })
    }
}

/// The log-gamma interface `φ(i,j)` from one environment.
///
/// For `i ≤ j` the value is `log τ(N−j+i, i) − log τ(N−j+i, i−1)`; below the
/// diagonal the transposed geometry `τ̃` is used with the roles of `i` and
/// `j` exchanged.
pub fn build_phi(env: &Environment, n: usize) -> Result<InterfaceGrid> {
    let t = TauTable::new(env, n)?;
    Ok(phi_from_table(&t))
}

pub fn phi_from_table(t: &TauTable) -> InterfaceGrid {
    let n = t.n();
    InterfaceGrid::from_fn(n, |i, j| {
        if i <= j {
            let m = n - j + i;
            t.tau(m, i) - t.tau(m, i - 1)
        } else {
            let m = n - i + j;
            t.tau_tilde(m, j) - t.tau_tilde(m, j - 1)
        }
    })
}

/// Largest deviation of `Σ_{i≤k} φ(i, N−m+i)` from an independent
/// evaluation of `log τ(m,k)`, and likewise for `τ̃` on the other triangle.
pub fn phi_inversion_residual(env: &Environment, n: usize) -> Result<f64> {
    let phi = build_phi(env, n)?;
    let mut worst = 0.0f64;
    for m in 1..=n {
        for k in 0..=m {
            let direct = crate::polymer::tau(env, n, m, k)?;
            let summed: f64 = (1..=k).map(|i| phi.get(i, n - m + i)).sum();
            worst = worst.max((direct - summed).abs());
            let direct = crate::polymer::tau_tilde(env, n, m, k)?;
            let summed: f64 = (1..=k).map(|i| phi.get(n - m + i, i)).sum();
            worst = worst.max((direct - summed).abs());
        }
    }
    Ok(worst)
}

/// Log-density of the interface law with exponential interaction:
/// `−Σ_edges e^{φ(y)−φ(x)} − μ Σ φ(i,i) − e^{−φ(N,N)} − N² ln Γ(μ)`.
pub fn interface_log_density(grid: &InterfaceGrid, mu: f64) -> Result<f64> {
    let n = grid.n();
    let edges: f64 = grid.edges().map(|(x, y)| (grid.get(y.0, y.1) - grid.get(x.0, x.1)).exp()).sum();
    let diag: f64 = grid.diagonal().iter().sum();
    Ok(-edges - mu * diag - (-grid.get(n, n)).exp() - (n * n) as f64 * log_gamma(mu)?)
}

/// `θ(i,j) = φ(i,j) + (2N + 1 − i − j) ln μ`.
pub fn theta_rescale(grid: &InterfaceGrid, mu: f64) -> InterfaceGrid {
    let n = grid.n();
    let lm = mu.ln();
    InterfaceGrid::from_fn(n, |i, j| grid.get(i, j) + (2 * n + 1 - i - j) as f64 * lm)
}

/// Minimiser of [`energy_f`], in closed form through log-factorials.
pub fn theta_min(n: usize) -> InterfaceGrid {
    let lf = |k: usize| log_factorial(k as u64);
    InterfaceGrid::from_fn(n, |i, j| {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        lf(i - 1) + lf(2 * n + 1 - j - i) + lf(2 * n - j - i) - lf(2 * n - j) - lf(n - j) - lf(n - i)
    })
}

/// `e^{−θ(N,N)} + Σ θ(i,i) + Σ_edges e^{θ(y)−θ(x)}`.
pub fn energy_f(grid: &InterfaceGrid) -> f64 {
    let n = grid.n();
    let edges: f64 = grid.edges().map(|(x, y)| (grid.get(y.0, y.1) - grid.get(x.0, x.1)).exp()).sum();
    (-grid.get(n, n)).exp() + grid.diagonal().iter().sum::<f64>() + edges
}

/// Exact gradient of [`energy_f`].
pub fn grad_f(grid: &InterfaceGrid) -> InterfaceGrid {
    let n = grid.n();
    let mut g = InterfaceGrid::zeros(n);
    for i in 1..=n {
        g.set(i, i, 1.0);
    }
    g.set(n, n, g.get(n, n) - (-grid.get(n, n)).exp());
    for (x, y) in grid.edges() {
        let e = (grid.get(y.0, y.1) - grid.get(x.0, x.1)).exp();
        g.set(x.0, x.1, g.get(x.0, x.1) - e);
        g.set(y.0, y.1, g.get(y.0, y.1) + e);
    }
    g
}

/// Dense Hessian of [`energy_f`], indexed by `(i−1)N + (j−1)`.
pub fn hessian_f(grid: &InterfaceGrid) -> Vec<Vec<f64>> {
    let n = grid.n();
    let idx = |p: (usize, usize)| (p.0 - 1) * n + (p.1 - 1);
    let mut h = vec![vec![0.0; n * n]; n * n];
    h[idx((n, n))][idx((n, n))] += (-grid.get(n, n)).exp();
    for (x, y) in grid.edges() {
        let e = (grid.get(y.0, y.1) - grid.get(x.0, x.1)).exp();
        let (a, b) = (idx(x), idx(y));
        h[a][a] += e;
        h[b][b] += e;
        h[a][b] -= e;
        h[b][a] -= e;
    }
    h
}

/// Deterministic first guess `θ_min − (2N+1−i−j) ln μ` for `φ` at shape `μ`.
pub fn phi_guess(n: usize, mu: f64) -> InterfaceGrid {
    let t = theta_min(n);
    let lm = mu.ln();
    InterfaceGrid::from_fn(n, |i, j| t.get(i, j) - (2 * n + 1 - i - j) as f64 * lm)
}

pub(crate) fn check_n(func: &'static str, n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Invalid(format!("{func}: N must be at least 1")))
    } else {
        Ok(())
    }
}
