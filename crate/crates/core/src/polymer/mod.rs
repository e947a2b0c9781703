//! Directed polymers: single-path and non-intersecting k-path partition
//! functions, point-to-point log-gamma partition functions `τ`, and last
//! passage percolation.
//!
//! The energy of a path sums the disorder over every visited site except
//! its starting point, unless a routine says otherwise through its
//! `include_start` flag.

mod bounds;
mod free_energy;

pub use bounds::*;
pub use free_energy::*;

use crate::environment::Environment;
use crate::error::{Error, Result};
use crate::lattice::{for_each_kpath, stack_down, stack_up, Point};
use crate::special::{logdet_tracked, logsum, LogSigned, CANCELLATION_NATS};

/// Cap on brute-force enumeration when the determinant route loses
/// precision.
pub const ENUMERATION_CAP: usize = 2_000_000;

/// Log-weights `β ω(z)` on a rectangle `[lo, hi]`.
#[derive(Debug, Clone)]
pub struct WeightGrid {
    lo: Point,
    width: usize,
    height: usize,
    logw: Vec<f64>,
}

impl WeightGrid {
    pub fn from_fn<F: FnMut(Point) -> f64>(lo: Point, hi: Point, mut f: F) -> Self {
        let width = (hi.x1 - lo.x1 + 1).max(0) as usize;
        let height = (hi.x2 - lo.x2 + 1).max(0) as usize;
        let mut logw = Vec::with_capacity(width * height);
        for b in 0..height as i64 {
            for a in 0..width as i64 {
                logw.push(f(lo.shift(a, b)));
            }
        }
        WeightGrid {
            lo,
            width,
            height,
            logw,
        }
    }

    pub fn from_env(env: &Environment, beta: f64, lo: Point, hi: Point) -> Self {
        Self::from_fn(lo, hi, |z| beta * env.omega(z))
    }

    /// Grid on `[1, n] × [1, m]`.
    pub fn rectangle(env: &Environment, beta: f64, n: usize, m: usize) -> Self {
        Self::from_env(env, beta, Point::new(1, 1), Point::new(n as i64, m as i64))
    }

    pub fn lo(&self) -> Point {
        self.lo
    }

    pub fn hi(&self) -> Point {
        self.lo.shift(self.width as i64 - 1, self.height as i64 - 1)
    }

    pub fn contains(&self, p: Point) -> bool {
        self.lo.le(p) && p.le(self.hi())
    }

    pub fn get(&self, p: Point) -> f64 {
        debug_assert!(self.contains(p), "{p:?} outside grid");
        let a = (p.x1 - self.lo.x1) as usize;
        let b = (p.x2 - self.lo.x2) as usize;
        self.logw[b * self.width + a]
    }

    fn check(&self, p: Point) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::Invalid(format!("point {p:?} outside the weight grid")))
        }
    }
}

/// `log Z_{x→y}` for a single path by a rolling log-sum-exp recursion.
/// Memory is linear in the shorter side of the box. Returns `-inf` when
/// `y` is not reachable from `x`.
pub fn single_path_logz_with<F>(x: Point, y: Point, include_start: bool, mut logw: F) -> f64
where
    F: FnMut(Point) -> f64,
{
    if !x.le(y) {
        return f64::NEG_INFINITY;
    }
    let d1 = (y.x1 - x.x1) as usize;
    let d2 = (y.x2 - x.x2) as usize;
    // Roll along the longer side so the buffer has the shorter length.
    let transpose = d1 > d2;
    let (short, long) = if transpose { (d2, d1) } else { (d1, d2) };
    let site = |s: usize, l: usize| -> Point {
        if transpose {
            x.shift(l as i64, s as i64)
        } else {
            x.shift(s as i64, l as i64)
        }
    };
    let mut row = vec![f64::NEG_INFINITY; short + 1];
    for l in 0..=long {
        for s in 0..=short {
            let here = if l == 0 && s == 0 {
                if include_start {
                    logw(x)
                } else {
                    0.0
                }
            } else {
                let from_prev_row = row[s];
                let from_left = if s > 0 { row[s - 1] } else { f64::NEG_INFINITY };
                logsum(from_prev_row, from_left) + logw(site(s, l))
            };
            row[s] = here;
        }
    }
    row[short]
}

/// [`single_path_logz_with`] reading weights from a grid.
pub fn single_path_logz(grid: &WeightGrid, x: Point, y: Point, include_start: bool) -> Result<f64> {
    grid.check(x)?;
    grid.check(y)?;
    Ok(single_path_logz_with(x, y, include_start, |p| grid.get(p)))
}

/// `log Z_{x→p}` for every `p` in the grid (−∞ where unreachable).
#[derive(Debug, Clone)]
pub struct LogZTable {
    grid_lo: Point,
    width: usize,
    vals: Vec<f64>,
}

impl LogZTable {
    pub fn new(grid: &WeightGrid, x: Point, include_start: bool) -> Result<Self> {
        grid.check(x)?;
        let (w, h) = (grid.width, grid.height);
        let mut vals = vec![f64::NEG_INFINITY; w * h];
        let a0 = (x.x1 - grid.lo.x1) as usize;
        let b0 = (x.x2 - grid.lo.x2) as usize;
        for b in b0..h {
            for a in a0..w {
                let idx = b * w + a;
                vals[idx] = if a == a0 && b == b0 {
                    if include_start {
                        grid.logw[idx]
                    } else {
                        0.0
                    }
                } else {
                    let left = if a > a0 { vals[idx - 1] } else { f64::NEG_INFINITY };
                    let down = if b > b0 { vals[idx - w] } else { f64::NEG_INFINITY };
                    logsum(left, down) + grid.logw[idx]
                };
            }
        }
        Ok(LogZTable {
            grid_lo: grid.lo,
            width: w,
            vals,
        })
    }

    pub fn get(&self, p: Point) -> f64 {
        let a = (p.x1 - self.grid_lo.x1) as usize;
        let b = (p.x2 - self.grid_lo.x2) as usize;
        self.vals[b * self.width + a]
    }
}

/// Outcome of a determinant evaluation of a k-path partition function.
#[derive(Debug, Clone, Copy)]
pub struct LgvValue {
    pub log_z: f64,
    /// Worst cancellation during elimination, in nats.
    pub cancellation: f64,
}

/// `det(Z_{x_i→y_j})` from a precomputed matrix of single-path `log Z`.
pub fn lgv_from_matrix(log_z: &[Vec<f64>]) -> Result<LgvValue> {
    let m: Vec<Vec<LogSigned>> = log_z
        .iter()
        .map(|r| r.iter().map(|&v| LogSigned::from_log(v)).collect())
        .collect();
    let d = logdet_tracked(&m)?;
    if d.value.sign() <= 0 {
        return Err(Error::Precision {
            what: "kpath_logz_lgv",
            detail: format!("determinant sign {} (cancellation {:.1} nats)", d.value.sign(), d.cancellation),
        });
    }
    if d.cancellation > CANCELLATION_NATS {
        return Err(Error::Precision {
            what: "kpath_logz_lgv",
            detail: format!("{:.1} nats lost to cancellation", d.cancellation),
        });
    }
    Ok(LgvValue {
        log_z: d.value.logmag(),
        cancellation: d.cancellation,
    })
}

/// `log Z` of the non-intersecting families `xs → ys` as a determinant of
/// single-path partition functions. `xs` and `ys` should be nice.
pub fn kpath_logz_lgv(grid: &WeightGrid, xs: &[Point], ys: &[Point], include_start: bool) -> Result<LgvValue> {
    if xs.len() != ys.len() {
        return Err(Error::Invalid("k-points of different lengths".into()));
    }
    for &y in ys {
        grid.check(y)?;
    }
    let mut m = Vec::with_capacity(xs.len());
    for &x in xs {
        let t = LogZTable::new(grid, x, include_start)?;
        m.push(ys.iter().map(|&y| t.get(y)).collect::<Vec<f64>>());
    }
    lgv_from_matrix(&m)
}

/// `log Z` by explicit enumeration of all non-intersecting families.
pub fn kpath_logz_brute(grid: &WeightGrid, xs: &[Point], ys: &[Point], include_start: bool, cap: usize) -> Result<f64> {
    for &p in xs.iter().chain(ys) {
        grid.check(p)?;
    }
    let mut terms = Vec::new();
    for_each_kpath(xs, ys, cap, |family| {
        let e: f64 = family
            .iter()
            .flat_map(|path| path.iter().skip(usize::from(!include_start)))
            .map(|&p| grid.get(p))
            .sum();
        terms.push(e);
    })?;
    Ok(crate::special::logsumexp(&terms))
}

/// Determinant route with a brute-force fallback when the determinant
/// loses too much precision.
pub fn kpath_logz(grid: &WeightGrid, xs: &[Point], ys: &[Point], include_start: bool) -> Result<f64> {
    if xs.is_empty() {
        return Ok(0.0);
    }
    match kpath_logz_lgv(grid, xs, ys, include_start) {
        Ok(v) => Ok(v.log_z),
        Err(Error::Precision { .. }) => kpath_logz_brute(grid, xs, ys, include_start, ENUMERATION_CAP),
        Err(e) => Err(e),
    }
}

/// `log τ(m, k)` for `Γ^N(m,k)`: families `(1,1)↑k → (N,m)↓k` on the
/// rectangle `[1,N] × [1,m]`, start weights included.
pub fn tau(env: &Environment, n: usize, m: usize, k: usize) -> Result<f64> {
    check_tau_args(n, m, k)?;
    if k == 0 {
        return Ok(0.0);
    }
    let grid = WeightGrid::rectangle(env, 1.0, n, m);
    kpath_logz(&grid, &stack_up(Point::new(1, 1), k), &stack_down(Point::new(n as i64, m as i64), k), true)
}

/// `log τ̃(m, k)`: the transposed geometry `(1,1)↑k → (m,N)↓k` on
/// `[1,m] × [1,N]`.
pub fn tau_tilde(env: &Environment, n: usize, m: usize, k: usize) -> Result<f64> {
    check_tau_args(n, m, k)?;
    if k == 0 {
        return Ok(0.0);
    }
    let grid = WeightGrid::rectangle(env, 1.0, m, n);
    kpath_logz(&grid, &stack_up(Point::new(1, 1), k), &stack_down(Point::new(m as i64, n as i64), k), true)
}

fn check_tau_args(n: usize, m: usize, k: usize) -> Result<()> {
    if m == 0 || m > n || k > m {
        return Err(Error::Invalid(format!("tau needs 0 <= k <= m <= N, got N={n}, m={m}, k={k}")));
    }
    Ok(())
}

/// All `log τ(m,k)` and `log τ̃(m,k)` for `1 ≤ m ≤ N`, `0 ≤ k ≤ m`,
/// sharing one set of single-path tables.
#[derive(Debug, Clone)]
pub struct TauTable {
    n: usize,
    tau: Vec<Vec<f64>>,
    tau_tilde: Vec<Vec<f64>>,
}

impl TauTable {
    pub fn new(env: &Environment, n: usize) -> Result<Self> {
        let grid = WeightGrid::rectangle(env, 1.0, n, n);
        let tables: Vec<LogZTable> = (1..=n as i64)
            .map(|i| LogZTable::new(&grid, Point::new(1, i), true))
            .collect::<Result<_>>()?;
        let ni = n as i64;
        let mut tau = vec![Vec::new(); n + 1];
        let mut tau_tilde = vec![Vec::new(); n + 1];
        for m in 1..=n {
            let mi = m as i64;
            tau[m].push(0.0);
            tau_tilde[m].push(0.0);
            for k in 1..=m {
                let ki = k as i64;
                let ends = |f: &dyn Fn(i64) -> Point| -> Vec<Vec<f64>> {
                    (0..k).map(|i| (1..=ki).map(|j| tables[i].get(f(j))).collect()).collect()
                };
                let direct = ends(&|j| Point::new(ni, mi - ki + j));
                let transposed = ends(&|j| Point::new(mi, ni - ki + j));
                let xs = stack_up(Point::new(1, 1), k);
                let t = match lgv_from_matrix(&direct) {
                    Ok(v) => v.log_z,
                    Err(Error::Precision { .. }) => {
                        kpath_logz_brute(&grid, &xs, &stack_down(Point::new(ni, mi), k), true, ENUMERATION_CAP)?
                    }
                    Err(e) => return Err(e),
                };
                let tt = match lgv_from_matrix(&transposed) {
                    Ok(v) => v.log_z,
                    Err(Error::Precision { .. }) => {
                        kpath_logz_brute(&grid, &xs, &stack_down(Point::new(mi, ni), k), true, ENUMERATION_CAP)?
                    }
                    Err(e) => return Err(e),
                };
                tau[m].push(t);
                tau_tilde[m].push(tt);
            }
        }
        Ok(TauTable { n, tau, tau_tilde })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `log τ(m, k)`.
    pub fn tau(&self, m: usize, k: usize) -> f64 {
        self.tau[m][k]
    }

    /// `log τ̃(m, k)`.
    pub fn tau_tilde(&self, m: usize, k: usize) -> f64 {
        self.tau_tilde[m][k]
    }
}

/// Largest energy of a single path `x → y` including the start site.
pub fn last_passage_single_with<F>(x: Point, y: Point, mut w: F) -> f64
where
    F: FnMut(Point) -> f64,
{
    if !x.le(y) {
        return f64::NEG_INFINITY;
    }
    let d1 = (y.x1 - x.x1) as usize;
    let d2 = (y.x2 - x.x2) as usize;
    let mut row = vec![f64::NEG_INFINITY; d1 + 1];
    for b in 0..=d2 {
        for a in 0..=d1 {
            let best = if a == 0 && b == 0 {
                0.0
            } else {
                let left = if a > 0 { row[a - 1] } else { f64::NEG_INFINITY };
                row[a].max(left)
            };
            row[a] = best + w(x.shift(a as i64, b as i64));
        }
    }
    row[d1]
}

/// `L^N(m, k)`: maximal total weight, start sites included, over `Γ^N(m,k)`.
/// One path uses a dynamic program; several paths are enumerated.
pub fn last_passage<F>(n: usize, m: usize, k: usize, w: F) -> Result<f64>
where
    F: Fn(Point) -> f64,
{
    check_tau_args(n, m, k)?;
    if k == 0 {
        return Ok(0.0);
    }
    let (ni, mi) = (n as i64, m as i64);
    if k == 1 {
        return Ok(last_passage_single_with(Point::new(1, 1), Point::new(ni, mi), w));
    }
    let grid = WeightGrid::from_fn(Point::new(1, 1), Point::new(ni, mi), w);
    last_passage_enumerated(&grid, &stack_up(Point::new(1, 1), k), &stack_down(Point::new(ni, mi), k), ENUMERATION_CAP)
}

/// Maximum over all non-intersecting families `xs → ys`, start included.
pub fn last_passage_enumerated(grid: &WeightGrid, xs: &[Point], ys: &[Point], cap: usize) -> Result<f64> {
    let mut best = f64::NEG_INFINITY;
    for_each_kpath(xs, ys, cap, |family| {
        let e: f64 = family.iter().flatten().map(|&p| grid.get(p)).sum();
        best = best.max(e);
    })?;
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::environment::WeightSpec;
    use crate::lattice::rectangle_endpoints;
    use crate::special::log_binomial;

    fn env(seed: u64, spec: WeightSpec) -> Environment {
        Environment::new(seed, spec).unwrap()
    }

    #[test]
    fn single_path_special_cases() {
        let e = env(3, WeightSpec::Gaussian);
        let x = Point::new(2, 3);
        assert_eq!(single_path_logz_with(x, x, false, |p| e.omega(p)), 0.0);
        let y = Point::new(7, 5);
        let z0 = single_path_logz_with(x, y, false, |_| 0.0);
        assert!((z0 - log_binomial(7, 5).logmag()).abs() < 1e-12);
        let zc = single_path_logz_with(x, y, false, |_| 0.3 * 2.0);
        assert!((zc - z0 - 0.6 * 7.0).abs() < 1e-12);
    }

    #[test]
    fn rolling_matches_table_both_orientations() {
        let e = env(11, WeightSpec::LogGamma(1.3));
        let grid = WeightGrid::rectangle(&e, 1.0, 9, 4);
        let t = LogZTable::new(&grid, Point::new(1, 1), true).unwrap();
        for y in [Point::new(9, 4), Point::new(3, 4), Point::new(9, 2)] {
            let r = single_path_logz(&grid, Point::new(1, 1), y, true).unwrap();
            assert!((r - t.get(y)).abs() < 1e-12);
        }
    }

    #[test]
    fn lgv_matches_enumeration() {
        let e = env(5, WeightSpec::LogGamma(2.0));
        let grid = WeightGrid::rectangle(&e, 1.0, 3, 3);
        let (xs, ys) = rectangle_endpoints(3, 3, 2);
        let a = kpath_logz_lgv(&grid, &xs, &ys, false).unwrap().log_z;
        let b = kpath_logz_brute(&grid, &xs, &ys, false, 100).unwrap();
        assert!((a - b).abs() < 1e-8);
    }

    #[test]
    fn tau_boundary_values() {
        let e = env(21, WeightSpec::LogGamma(1.5));
        let n = 4;
        let full: f64 = e.omega_grid(n, n).iter().sum();
        assert!((tau(&e, n, n, n).unwrap() - full).abs() < 1e-10);
        assert_eq!(tau(&e, n, 2, 0).unwrap(), 0.0);
        for k in 0..=n {
            assert!((tau(&e, n, n, k).unwrap() - tau_tilde(&e, n, n, k).unwrap()).abs() < 1e-10);
        }
        let table = TauTable::new(&e, n).unwrap();
        for m in 1..=n {
            for k in 0..=m {
                assert!((table.tau(m, k) - tau(&e, n, m, k).unwrap()).abs() < 1e-10);
                assert!((table.tau_tilde(m, k) - tau_tilde(&e, n, m, k).unwrap()).abs() < 1e-10);
            }
        }
        assert!(tau(&e, 3, 4, 1).is_err());
    }

    #[test]
    fn last_passage_dp_matches_enumeration() {
        let e = env(9, WeightSpec::ExponentialMean1);
        let w = |p: Point| e.omega(p);
        let dp = last_passage(4, 3, 1, w).unwrap();
        let grid = WeightGrid::from_fn(Point::new(1, 1), Point::new(4, 3), w);
        let en = last_passage_enumerated(&grid, &[Point::new(1, 1)], &[Point::new(4, 3)], 1000).unwrap();
        assert!((dp - en).abs() < 1e-12);
        // k = m fills the rectangle.
        let total: f64 = e.omega_grid(4, 3).iter().sum();
        assert!((last_passage(4, 3, 3, w).unwrap() - total).abs() < 1e-12);
    }
}
