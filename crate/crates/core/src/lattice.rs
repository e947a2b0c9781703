//! Up-right lattice paths in `Z²`, families of non-intersecting paths and
//! their exact counts.

use crate::error::{Error, Result};
use crate::special::{log_binomial, log_superfactorial, logdet, LogSigned};
use serde::Serialize;

/// A site of `Z²`; `x1` grows to the east, `x2` to the north.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Point {
    pub x1: i64,
    pub x2: i64,
}

impl Point {
    pub const fn new(x1: i64, x2: i64) -> Self {
        Point { x1, x2 }
    }

    pub fn shift(self, d1: i64, d2: i64) -> Self {
        Point::new(self.x1 + d1, self.x2 + d2)
    }

    /// Number of up-right paths from `self` to `to`.
    pub fn path_count(self, to: Point) -> LogSigned {
        let (d1, d2) = (to.x1 - self.x1, to.x2 - self.x2);
        if d1 < 0 || d2 < 0 {
            LogSigned::ZERO
        } else {
            log_binomial(d1 + d2, d1)
        }
    }

    /// `self ≤ other` coordinatewise.
    pub fn le(self, other: Point) -> bool {
        self.x1 <= other.x1 && self.x2 <= other.x2
    }
}

/// An ordered tuple of sites, the endpoints of a family of paths.
pub type KPoint = Vec<Point>;

/// A family of paths; each inner vector lists the visited sites in order,
/// endpoints included.
pub type KPath = Vec<Vec<Point>>;

/// Each successor lies directly above its predecessor, or strictly north
/// and strictly west of it.
pub fn is_nice(xs: &[Point]) -> bool {
    xs.windows(2).all(|w| {
        let (a, b) = (w[0], w[1]);
        b == a.shift(0, 1) || (b.x1 < a.x1 && b.x2 > a.x2)
    })
}

/// `x + (i-1) h` for `i = 1..=k`.
pub fn stack(x: Point, h: (i64, i64), k: usize) -> KPoint {
    (0..k as i64).map(|i| x.shift(i * h.0, i * h.1)).collect()
}

/// `k` points stacked vertically starting at `x`.
pub fn stack_up(x: Point, k: usize) -> KPoint {
    stack(x, (0, 1), k)
}

/// `k` points stacked vertically and ending at `x`.
pub fn stack_down(x: Point, k: usize) -> KPoint {
    stack(x.shift(0, 1 - k as i64), (0, 1), k)
}

/// `k` points on the anti-diagonal through `x`, going north-west.
pub fn stack_diag(x: Point, k: usize) -> KPoint {
    stack(x, (-1, 1), k)
}

/// Endpoints `(1,1)↑k` and `(n,m)↓k` of the families filling the rectangle
/// `[1, n] × [1, m]`.
pub fn rectangle_endpoints(n: i64, m: i64, k: usize) -> (KPoint, KPoint) {
    (stack_up(Point::new(1, 1), k), stack_down(Point::new(n, m), k))
}

/// Calls `visit` for every up-right path from `a` to `b` avoiding
/// `blocked`, in lexicographic order of step sequences (east before north).
fn for_each_path<B, V>(a: Point, b: Point, blocked: &B, visit: &mut V) -> Result<()>
where
    B: Fn(Point) -> bool,
    V: FnMut(&[Point]) -> Result<()>,
{
    if !a.le(b) || blocked(a) {
        return Ok(());
    }
    let mut path = Vec::with_capacity((b.x1 - a.x1 + b.x2 - a.x2 + 1) as usize);
    path.push(a);
    walk(b, blocked, &mut path, visit)
}

fn walk<B, V>(b: Point, blocked: &B, path: &mut Vec<Point>, visit: &mut V) -> Result<()>
where
    B: Fn(Point) -> bool,
    V: FnMut(&[Point]) -> Result<()>,
{
    let here = *path.last().expect("path starts non-empty");
    if here == b {
        return visit(path);
    }
    for next in [here.shift(1, 0), here.shift(0, 1)] {
        if next.le(b) && !blocked(next) {
            path.push(next);
            walk(b, blocked, path, visit)?;
            path.pop();
        }
    }
    Ok(())
}

/// Visits every family of pairwise vertex-disjoint up-right paths with
/// `xs[i] → ys[i]`, in lexicographic order. Fails once more than `cap`
/// families have been seen.
pub fn for_each_kpath<V>(xs: &[Point], ys: &[Point], cap: usize, mut visit: V) -> Result<usize>
where
    V: FnMut(&KPath),
{
    if xs.len() != ys.len() {
        return Err(Error::Invalid("k-points of different lengths".into()));
    }
    let mut occupied = std::collections::HashSet::new();
    let mut family: KPath = Vec::with_capacity(xs.len());
    let mut count = 0usize;
    extend_family(xs, ys, 0, &mut occupied, &mut family, &mut count, cap, &mut visit)?;
    Ok(count)
}

#[allow(clippy::too_many_arguments)]
fn extend_family<V: FnMut(&KPath)>(
    xs: &[Point],
    ys: &[Point],
    i: usize,
    occupied: &mut std::collections::HashSet<Point>,
    family: &mut KPath,
    count: &mut usize,
    cap: usize,
    visit: &mut V,
) -> Result<()> {
    if i == xs.len() {
        *count += 1;
        if *count > cap {
            return Err(Error::CapExceeded {
                what: "k-path enumeration",
                cap,
            });
        }
        visit(family);
        return Ok(());
    }
    let mut paths = Vec::new();
    {
        let occ = &*occupied;
        for_each_path(xs[i], ys[i], &|p| occ.contains(&p), &mut |p: &[Point]| {
            paths.push(p.to_vec());
            if paths.len() > cap {
                Err(Error::CapExceeded {
                    what: "path enumeration",
                    cap,
                })
            } else {
                Ok(())
            }
        })?;
    }
    for p in paths {
        for &s in &p {
            occupied.insert(s);
        }
        family.push(p);
        let r = extend_family(xs, ys, i + 1, occupied, family, count, cap, visit);
        let p = family.pop().expect("just pushed");
        for s in &p {
            occupied.remove(s);
        }
        r?;
    }
    Ok(())
}

/// Every non-intersecting family `xs → ys`, in lexicographic order.
pub fn enumerate_kpaths(xs: &[Point], ys: &[Point], cap: usize) -> Result<Vec<KPath>> {
    let mut out = Vec::new();
    for_each_kpath(xs, ys, cap, |f| out.push(f.clone()))?;
    Ok(out)
}

/// Number of non-intersecting families by the determinant of single-path
/// counts. Valid when `xs` and `ys` are nice.
pub fn lgv_count(xs: &[Point], ys: &[Point]) -> Result<LogSigned> {
    let m: Vec<Vec<LogSigned>> = xs
        .iter()
        .map(|&x| ys.iter().map(|&y| x.path_count(y)).collect())
        .collect();
    logdet(&m)
}

/// Log of the number of `k`-paths `(1,1)↑k → (n,m)↓k`, by the
/// superfactorial product formula.
pub fn macmahon_log_count(n: u64, m: u64, k: u64) -> Result<f64> {
    if k > n.min(m) {
        return Err(Error::Invalid(format!(
            "macmahon_log_count: k = {k} exceeds min(n, m) = {}",
            n.min(m)
        )));
    }
    let h = log_superfactorial;
    Ok(h(m + n - k) + h(k) + h(m - k) + h(n - k) - h(m) - h(n) - h(m + n - 2 * k))
}

/// Two evaluations of the boxed plane partition count with box `k × a × b`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct KrattenthalerReport {
    /// `ln det(C(a+b, a+j-i))`.
    pub log_det: f64,
    /// `ln ∏ (r+s+t-1)/(r+s+t-2)`.
    pub log_product: f64,
    /// Superfactorial form of the same product.
    pub log_superfactorials: f64,
}

impl KrattenthalerReport {
    pub fn max_residual(&self) -> f64 {
        (self.log_det - self.log_product)
            .abs()
            .max((self.log_det - self.log_superfactorials).abs())
    }
}

pub fn krattenthaler_check(k: u64, a: u64, b: u64) -> Result<KrattenthalerReport> {
    let (ki, ai, bi) = (k as i64, a as i64, b as i64);
    let m: Vec<Vec<LogSigned>> = (1..=ki)
        .map(|i| (1..=ki).map(|j| log_binomial(ai + bi, ai + j - i)).collect())
        .collect();
    let d = logdet(&m)?;
    if d.sign() <= 0 {
        return Err(Error::Precision {
            what: "krattenthaler_check",
            detail: "determinant is not positive".into(),
        });
    }
    let mut log_product = 0.0;
    for r in 1..=k {
        for s in 1..=a {
            for t in 1..=b {
                let v = (r + s + t) as f64;
                log_product += ((v - 1.0) / (v - 2.0)).ln();
            }
        }
    }
    let h = log_superfactorial;
    let log_superfactorials = h(k + a + b) + h(k) + h(a) + h(b) - h(k + a) - h(k + b) - h(a + b);
    Ok(KrattenthalerReport {
        log_det: d.logmag(),
        log_product,
        log_superfactorials,
    })
}
