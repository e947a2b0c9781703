//! Deterministic limit shapes of the interfaces, the random-matrix laws
//! behind them, and the bead-model surface tension.

pub mod fluctuations;
pub mod matrices;

use crate::error::{Error, Result};
use crate::interface::theta_min;
use crate::numeric::{bisect, integrate, tanh_sinh};
use crate::polymer::sup_digamma_pair;
use crate::special::{digamma, log_superfactorial, trigamma};
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI};

pub use fluctuations::{fluctuation_mc, FluctuationPoint, FluctuationReport};
pub use matrices::{
    eigenvalue_process, gue_matrix, gue_sample, johansson_check, lue_matrix, lue_sample, HermitianMatrix,
    JohanssonReport,
};

fn check_unit(func: &'static str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain {
            func,
            value: x,
            expected: "value in [0, 1]",
        })
    }
}

/// `(1 − √c)² + 4√c sin²(θ/2) = 1 + c − 2√c cos θ` without cancellation.
fn mp_point(c: f64, theta: f64) -> f64 {
    let r = c.sqrt();
    let h = (0.5 * theta).sin();
    (1.0 - r).powi(2) + 4.0 * r * h * h
}

/// Marčenko–Pastur mass above `ρ`, for ratio `c ∈ (0, 1]`.
///
/// With `u = 1 + c − 2√c cos θ` the density becomes
/// `(2/π) sin²θ / (1 + c − 2√c cos θ)` on `θ ∈ [0, π]`.
pub fn mp_upper_mass(c: f64, rho: f64) -> Result<f64> {
    if !(c > 0.0 && c <= 1.0) {
        return Err(Error::Domain {
            func: "mp_upper_mass",
            value: c,
            expected: "c in (0, 1]",
        });
    }
    let r = c.sqrt();
    let cos_theta = ((1.0 + c - rho) / (2.0 * r)).clamp(-1.0, 1.0);
    let theta = cos_theta.acos();
    mp_upper_mass_angle(c, theta)
}

fn mp_upper_mass_angle(c: f64, theta: f64) -> Result<f64> {
    if theta >= PI {
        return Ok(0.0);
    }
    let g = |phi: f64| {
        let s = phi.sin();
        2.0 / PI * s * s / mp_point(c, phi)
    };
    integrate(g, theta, PI, 1e-14)
}

/// `ρ` with `∫_ρ^{M_c} ν_c = α / c`, where `ν_c` is the Marčenko–Pastur law
/// of ratio `c` supported on `[(1−√c)², (1+√c)²]`.
pub fn mp_quantile(c: f64, alpha: f64) -> Result<f64> {
    if !(c > 0.0 && c <= 1.0) {
        return Err(Error::Domain {
            func: "mp_quantile",
            value: c,
            expected: "c in (0, 1]",
        });
    }
    if !(0.0..=c).contains(&alpha) {
        return Err(Error::Domain {
            func: "mp_quantile",
            value: alpha,
            expected: "alpha in [0, c]",
        });
    }
    let target = alpha / c;
    if target == 0.0 {
        return Ok(mp_point(c, PI));
    }
    if target == 1.0 {
        return Ok(mp_point(c, 0.0));
    }
    let theta = bisect(|th| mp_upper_mass_angle(c, th).unwrap_or(f64::NAN) - target, 0.0, PI)?;
    Ok(mp_point(c, theta))
}

/// Symmetric extension of a function given on `{s ≤ t}`.
fn symmetric(s: f64, t: f64) -> (f64, f64) {
    if s <= t {
        (s, t)
    } else {
        (t, s)
    }
}

/// `ξ_mp(s, t) = ρ_mp(1 − t + s, s)` for `s ≤ t`, extended symmetrically.
pub fn xi_mp(s: f64, t: f64) -> Result<f64> {
    check_unit("xi_mp", s)?;
    check_unit("xi_mp", t)?;
    let (s, t) = symmetric(s, t);
    let c = 1.0 - t + s;
    if c == 0.0 {
        return Ok(1.0);
    }
    mp_quantile(c, s.min(c))
}

/// Semicircle mass below `2 sin φ`.
pub fn sc_cdf_angle(phi: f64) -> f64 {
    0.5 + phi / PI + phi.sin() * phi.cos() / PI
}

/// `f_sc(u) = √(4 − u²) / 2π` on `[−2, 2]`.
pub fn sc_density(u: f64) -> f64 {
    if u.abs() >= 2.0 {
        0.0
    } else {
        (4.0 - u * u).sqrt() / (2.0 * PI)
    }
}

/// The point of `[−2, 2]` with semicircle mass `x` above it.
pub fn sc_quantile(x: f64) -> Result<f64> {
    check_unit("sc_quantile", x)?;
    if x == 0.0 {
        return Ok(2.0);
    }
    if x == 1.0 {
        return Ok(-2.0);
    }
    let phi = bisect(|p| 1.0 - sc_cdf_angle(p) - x, -FRAC_PI_2, FRAC_PI_2)?;
    Ok(2.0 * phi.sin())
}

/// `|F_sc(2 sin φ)|` by quadrature against the closed form.
pub fn sc_cdf_residual(phi: f64) -> Result<f64> {
    let x = 2.0 * phi.sin();
    let quad = tanh_sinh(
        |_, da, _| {
            // 4 − u² = (2 + u)(2 − u) with 2 + u = da.
            (da * (4.0 - da)).max(0.0).sqrt() / (2.0 * PI)
        },
        -2.0,
        x,
        1e-15,
    )?;
    Ok((quad - sc_cdf_angle(phi)).abs())
}

/// `ξ_sc(s, t) = √(1 − t + s) ρ_sc(s / (1 − t + s))` for `s ≤ t`.
pub fn xi_sc(s: f64, t: f64) -> Result<f64> {
    check_unit("xi_sc", s)?;
    check_unit("xi_sc", t)?;
    let (s, t) = symmetric(s, t);
    let w = 1.0 - t + s;
    if w == 0.0 {
        return Ok(0.0);
    }
    Ok(w.sqrt() * sc_quantile((s / w).min(1.0))?)
}

fn xlogx(u: f64) -> f64 {
    if u == 0.0 {
        0.0
    } else {
        u * u.ln()
    }
}

/// High-temperature, large-`N` limit of the rescaled interface:
/// `q(s) + 2q(2−s−t) − q(2−t) − q(1−t) − q(1−s)` with `q(u) = u ln u`.
pub fn xi_ht(s: f64, t: f64) -> Result<f64> {
    check_unit("xi_ht", s)?;
    check_unit("xi_ht", t)?;
    let (s, t) = symmetric(s, t);
    Ok(xlogx(s) + 2.0 * xlogx(2.0 - s - t) - xlogx(2.0 - t) - xlogx(1.0 - t) - xlogx(1.0 - s))
}

/// `max_{i,j} |θ_min(i,j)/N − ξ_ht(i/N, j/N)|`.
pub fn theta_min_sup_error(n: usize) -> Result<f64> {
    let theta = theta_min(n);
    let nf = n as f64;
    let mut worst = 0.0f64;
    for i in 1..=n {
        for j in 1..=n {
            let d = theta.get(i, j) / nf - xi_ht(i as f64 / nf, j as f64 / nf)?;
            worst = worst.max(d.abs());
        }
    }
    Ok(worst)
}

fn check_edge_args(func: &'static str, mu: f64, t: f64) -> Result<()> {
    if !(mu > 0.0) {
        return Err(Error::Domain {
            func,
            value: mu,
            expected: "mu > 0",
        });
    }
    check_unit(func, t)
}

/// `−sup_{θ∈[0,μ]} ((1−t) ψ₀(θ) + ψ₀(μ−θ))`.
pub fn xi_edge_bottom(mu: f64, t: f64) -> Result<f64> {
    check_edge_args("xi_edge_bottom", mu, t)?;
    Ok(-sup_digamma_pair(1.0 - t, 1.0, mu))
}

/// `sup_{θ>0} (t ψ₀(θ) − ψ₀(μ+θ))`.
pub fn xi_edge_top(mu: f64, t: f64) -> Result<f64> {
    check_edge_args("xi_edge_top", mu, t)?;
    if t == 0.0 {
        return Ok(-digamma(mu)?);
    }
    if t == 1.0 {
        // ψ₀(θ) − ψ₀(μ+θ) increases to 0.
        return Ok(0.0);
    }
    // The derivative t ψ₁(θ) − ψ₁(μ+θ) is positive near 0 and negative for
    // large θ; its zero sits near μ / (1 − t).
    let slope = |th: f64| t * trigamma(th).unwrap_or(f64::NAN) - trigamma(mu + th).unwrap_or(f64::NAN);
    let mut hi = (2.0 * mu / (1.0 - t)).max(1.0);
    while slope(hi) > 0.0 {
        hi *= 2.0;
        if hi > 1e15 {
            return Err(Error::NoConvergence {
                what: "xi_edge_top bracket",
                iterations: 50,
            });
        }
    }
    let th = bisect(slope, 1e-150, hi)?;
    Ok(t * digamma(th)? - digamma(mu + th)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagonalReport {
    pub mu: f64,
    pub c: f64,
    pub n: usize,
    pub estimate: crate::stats::Estimate,
    /// `−c ψ₀(μ)`.
    pub predicted: f64,
    /// `c ψ₁(μ) / N²`.
    pub predicted_variance: f64,
    pub sample_variance: f64,
}

/// `(1/N²) log τ(cN, cN)` against `−c ψ₀(μ)`.
///
/// With as many paths as rows the family fills the whole `N × cN`
/// rectangle, so `log τ` is the sum of all log-weights.
pub fn diagonal_free_energy_check(mu: f64, c: f64, n: usize, replicas: usize, seed: u64) -> Result<DiagonalReport> {
    use crate::environment::{derive_seed, Environment, WeightSpec};
    use rayon::prelude::*;
    let m = crate::polymer::endpoint_height(n, c);
    if m > n {
        return Err(Error::Invalid(format!("diagonal_free_energy_check needs cN ≤ N, got {m} > {n}")));
    }
    let samples: Vec<f64> = (0..replicas as u64)
        .into_par_iter()
        .map(|r| -> Result<f64> {
            let env = Environment::new(derive_seed(seed, r), WeightSpec::LogGamma(mu))?;
            Ok(env.omega_grid(n, m).iter().sum::<f64>() / (n * n) as f64)
        })
        .collect::<Result<_>>()?;
    let cf = m as f64 / n as f64;
    Ok(DiagonalReport {
        mu,
        c,
        n,
        estimate: crate::stats::Estimate::from_samples(&samples),
        predicted: -cf * digamma(mu)?,
        predicted_variance: cf * trigamma(mu)? / (n * n) as f64,
        sample_variance: crate::stats::variance(&samples),
    })
}

/// Surface tension of the bead model; `Infinite` outside the cone of
/// admissible slopes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SurfaceTension {
    Finite(f64),
    Infinite,
}

impl SurfaceTension {
    pub fn finite(self) -> Option<f64> {
        match self {
            SurfaceTension::Finite(v) => Some(v),
            SurfaceTension::Infinite => None,
        }
    }
}

/// `−log(|p| cos(π q / |p|))` for `p < 0`, `|q| < |p| / 2`.
///
/// The cosine is positive exactly on `|q| < |p| / 2`, which is also the
/// set where both untilted slopes `p/2 ∓ q` are negative.
pub fn bead_sigma_tilted(p: f64, q: f64) -> SurfaceTension {
    if p < 0.0 && q.abs() < -0.5 * p {
        let v = -p * (PI * q / -p).cos();
        if v > 0.0 {
            return SurfaceTension::Finite(-v.ln());
        }
    }
    SurfaceTension::Infinite
}

/// Surface tension in the original gradient coordinates, through
/// `p = s + t`, `q = (t − s) / 2`.
pub fn bead_sigma(s: f64, t: f64) -> SurfaceTension {
    bead_sigma_tilted(s + t, 0.5 * (t - s))
}

#[derive(Debug, Clone, Serialize)]
pub struct OmegaRow {
    pub phi: f64,
    /// `(1/ρ′) Ω′(∂_τ ξ / ρ′)` with `Ω′(s) = π tan π s`.
    pub tension_term: f64,
    /// The same term with `Ω′(−φ/π)` read as `−π tan πφ`.
    pub alternate_term: f64,
    /// Closed-form principal value `−sin φ`.
    pub pv_closed: f64,
    pub residual: f64,
    pub alternate_residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OmegaReport {
    pub rows: Vec<OmegaRow>,
    pub max_residual: f64,
    pub max_alternate_residual: f64,
}

/// Euler–Lagrange balance for the semicircle profile at `ρ_sc(r) = 2 sin φ`.
pub fn omega_identity_check(phis: &[f64]) -> Result<OmegaReport> {
    let rows: Vec<OmegaRow> = phis
        .iter()
        .map(|&phi| {
            if !(phi.abs() < FRAC_PI_2) {
                return Err(Error::Domain {
                    func: "omega_identity_check",
                    value: phi,
                    expected: "|phi| < pi/2",
                });
            }
            let rho_prime = -PI / phi.cos();
            let dxi_dtau = phi / phi.cos();
            let omega_prime = |s: f64| PI * (PI * s).tan();
            let tension_term = omega_prime(dxi_dtau / rho_prime) / rho_prime;
            let alternate_term = -(phi.cos() / PI) * (-PI * (PI * phi).tan());
            let pv_closed = -phi.sin();
            Ok(OmegaRow {
                phi,
                tension_term,
                alternate_term,
                pv_closed,
                residual: (tension_term + pv_closed).abs(),
                alternate_residual: (alternate_term + pv_closed).abs(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(OmegaReport {
        max_residual: rows.iter().map(|r| r.residual).fold(0.0, f64::max),
        max_alternate_residual: rows.iter().map(|r| r.alternate_residual).fold(0.0, f64::max),
        rows,
    })
}

/// `−PV ∫_{−2}^{2} f_sc(u) / (a − u) du` for `a ∈ (−2, 2)`, by subtracting
/// the singular part: `PV ∫ du / (a − u) = ln((2 + a)/(2 − a))`.
pub fn semicircle_pv(a: f64) -> Result<f64> {
    if !(a.abs() < 2.0) {
        return Err(Error::Domain {
            func: "semicircle_pv",
            value: a,
            expected: "|a| < 2",
        });
    }
    let fa = sc_density(a);
    let regular = |u: f64| {
        let d = a - u;
        if d == 0.0 {
            0.0
        } else {
            (sc_density(u) - fa) / d
        }
    };
    let left = tanh_sinh(|u, _, _| regular(u), -2.0, a, 1e-13)?;
    let right = tanh_sinh(|u, _, _| regular(u), a, 2.0, 1e-13)?;
    Ok(-(left + right + fa * ((2.0 + a) / (2.0 - a)).ln()))
}

#[derive(Debug, Clone, Serialize)]
pub struct AffineWulffReport {
    pub b: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    /// Minimiser of `f ↦ σ_tilted(b, f)` over the finite cone.
    pub argmin: f64,
}

/// `½ min_f σ_tilted(b, f)` against `−∫∫_{s<t} log(|b|(t − s)) ds dt − ¾`.
pub fn affine_wulff_check(b: f64) -> Result<AffineWulffReport> {
    if !(b < 0.0) {
        return Err(Error::Domain {
            func: "affine_wulff_check",
            value: b,
            expected: "b < 0",
        });
    }
    let sigma = |f: f64| bead_sigma_tilted(b, f).finite().unwrap_or(f64::INFINITY);
    // Golden-section search on the convex slice.
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut lo, mut hi) = (0.499 * b, -0.499 * b);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    for _ in 0..200 {
        if sigma(x1) <= sigma(x2) {
            hi = x2;
        } else {
            lo = x1;
        }
        x1 = hi - g * (hi - lo);
        x2 = lo + g * (hi - lo);
    }
    let argmin = 0.5 * (lo + hi);
    let lhs = 0.5 * sigma(argmin);
    // ∫∫_{0<s<t<1} h(t − s) = ∫_0^1 (1 − u) h(u) du.
    let lb = (-b).ln();
    let double = tanh_sinh(|u, du, _| (1.0 - u) * (lb + du.ln()), 0.0, 1.0, 1e-15)?;
    let rhs = -double - 0.75;
    Ok(AffineWulffReport {
        b,
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
        argmin,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SuperfactorialReport {
    pub p: usize,
    pub n: usize,
    pub exact: f64,
    pub predicted: f64,
    pub residual: f64,
}

/// `(1/N²) ln H(pN)` against `p²/2 ln p + p²/2 ln N − 3p²/4`.
pub fn superfactorial_asymptotic_check(p: usize, n: usize) -> Result<SuperfactorialReport> {
    if p * n < 2 {
        return Err(Error::Invalid(format!("superfactorial_asymptotic_check needs pN ≥ 2, got {}", p * n)));
    }
    let (pf, nf) = (p as f64, n as f64);
    let exact = log_superfactorial((p * n) as u64) / (nf * nf);
    let predicted = 0.5 * pf * pf * pf.ln() + 0.5 * pf * pf * nf.ln() - 0.75 * pf * pf;
    Ok(SuperfactorialReport {
        p,
        n,
        exact,
        predicted,
        residual: (exact - predicted).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymer::rost_ell;
    use crate::special::EULER_GAMMA;

    #[test]
    fn mp_quantile_values() {
        for &c in &[0.1, 0.5, 1.0] {
            assert!((mp_quantile(c, 0.0).unwrap() - (1.0 + c.sqrt()).powi(2)).abs() < 1e-14);
            assert!((mp_quantile(c, c).unwrap() - (1.0 - c.sqrt()).powi(2)).abs() < 1e-14);
        }
        // Closed CDF for c = 1: F(4 sin² t) = (2/π)(t + sin t cos t).
        let t = bisect(|t| t + t.sin() * t.cos() - PI / 4.0, 0.0, FRAC_PI_2).unwrap();
        let median = 4.0 * t.sin().powi(2);
        assert!((mp_quantile(1.0, 0.5).unwrap() - median).abs() < 1e-10);
        assert!((median - 0.6527).abs() < 1e-4);
        assert!(mp_quantile(1.2, 0.5).is_err());
        assert!(mp_quantile(0.5, 0.6).is_err());
    }

    #[test]
    fn mp_round_trip_and_monotone() {
        for &c in &[0.2, 0.5, 1.0] {
            let mut prev = f64::INFINITY;
            for i in 1..20 {
                let alpha = c * i as f64 / 20.0;
                let q = mp_quantile(c, alpha).unwrap();
                assert!(q < prev);
                prev = q;
                assert!((c * mp_upper_mass(c, q).unwrap() - alpha).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn xi_mp_values() {
        for &c in &[0.1, 0.3, 0.7, 1.0] {
            assert!((xi_mp(0.0, 1.0 - c).unwrap() - rost_ell(c)).abs() < 1e-12);
        }
        assert_eq!(xi_mp(0.0, 1.0).unwrap(), 1.0);
        assert_eq!(xi_mp(0.2, 0.7).unwrap(), xi_mp(0.7, 0.2).unwrap());
        assert_eq!(xi_mp(0.4, 0.4).unwrap(), mp_quantile(1.0, 0.4).unwrap());
    }

    #[test]
    fn sc_values() {
        assert!(sc_quantile(0.5).unwrap().abs() < 1e-14);
        assert_eq!(sc_quantile(0.0).unwrap(), 2.0);
        assert_eq!(sc_quantile(1.0).unwrap(), -2.0);
        for i in 1..99 {
            let phi = -FRAC_PI_2 + PI * i as f64 / 99.0;
            assert!(sc_cdf_residual(phi).unwrap() < 1e-12, "phi = {phi}");
        }
        let mut prev = 2.0;
        for i in 1..50 {
            let x = i as f64 / 50.0;
            let q = sc_quantile(x).unwrap();
            assert!(q < prev);
            prev = q;
            let phi = (q / 2.0).asin();
            assert!((1.0 - sc_cdf_angle(phi) - x).abs() < 1e-10);
        }
        assert_eq!(xi_sc(0.2, 0.6).unwrap(), xi_sc(0.6, 0.2).unwrap());
        assert_eq!(xi_sc(0.0, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn xi_ht_values() {
        assert!(xi_ht(1.0, 1.0).unwrap().abs() < 1e-15);
        assert!((xi_ht(0.0, 0.0).unwrap() - 2.0 * 2f64.ln()).abs() < 1e-15);
        assert_eq!(xi_ht(0.3, 0.8).unwrap(), xi_ht(0.8, 0.3).unwrap());
        let errs: Vec<f64> = [20, 40, 80].iter().map(|&n| theta_min_sup_error(n).unwrap()).collect();
        assert!(errs[0] > errs[1] && errs[1] > errs[2] && errs[2] < 0.15, "{errs:?}");
    }

    #[test]
    fn edge_shapes() {
        assert!((xi_edge_bottom(2.0, 0.0).unwrap() - 2.0 * EULER_GAMMA).abs() < 1e-10);
        for &mu in &[0.5, 1.0, 3.0] {
            let target = -digamma(mu).unwrap();
            assert!((xi_edge_bottom(mu, 1.0).unwrap() - target).abs() < 1e-12);
            assert!((xi_edge_top(mu, 0.0).unwrap() - target).abs() < 1e-12);
            // Continuity at the endpoints.
            assert!((xi_edge_top(mu, 1e-8).unwrap() - target).abs() < 1e-3);
            assert!(xi_edge_top(mu, 0.999).unwrap().abs() < 0.05);
        }
        assert!((xi_edge_top(1.0, 0.0).unwrap() - EULER_GAMMA).abs() < 1e-12);
        // Against a crude grid search.
        for &t in &[0.2, 0.5, 0.8] {
            let grid = (1..200_000)
                .map(|i| {
                    let th = i as f64 * 1e-4;
                    t * digamma(th).unwrap() - digamma(1.5 + th).unwrap()
                })
                .fold(f64::NEG_INFINITY, f64::max);
            let v = xi_edge_top(1.5, t).unwrap();
            assert!(v >= grid - 1e-12 && v - grid < 1e-6, "t = {t}: {v} vs {grid}");
        }
    }

    #[test]
    fn diagonal_free_energy() {
        let r = diagonal_free_energy_check(2.0, 1.0, 100, 40, 3).unwrap();
        assert!((r.predicted - (EULER_GAMMA - 1.0)).abs() < 1e-12);
        assert!((r.estimate.mean - r.predicted).abs() < 3.0 * r.estimate.stderr);
        assert!((r.sample_variance / r.predicted_variance - 1.0).abs() < 0.5);
    }

    #[test]
    fn bead_sigma_values() {
        assert_eq!(bead_sigma_tilted(-1.0, 0.0), SurfaceTension::Finite(0.0));
        assert_eq!(bead_sigma_tilted(1.0, 0.0), SurfaceTension::Infinite);
        assert_eq!(bead_sigma_tilted(-1.0, 1.0), SurfaceTension::Infinite);
        assert_eq!(bead_sigma_tilted(-1.0, 0.7), SurfaceTension::Infinite);
        assert!(bead_sigma_tilted(-1.0, 0.499_999_99).finite().unwrap() > 15.0);
        let (p, q, l) = (-1.7, 0.4, 3.3);
        let lhs = bead_sigma_tilted(l * p, l * q).finite().unwrap();
        let rhs = -l.ln() + bead_sigma_tilted(p, q).finite().unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
        assert_eq!(bead_sigma(-0.5, -0.5), bead_sigma_tilted(-1.0, 0.0));
    }

    #[test]
    fn omega_identity() {
        let phis: Vec<f64> = (1..100).map(|i| -FRAC_PI_2 + PI * i as f64 / 100.0).collect();
        let r = omega_identity_check(&phis).unwrap();
        assert!(r.max_residual < 1e-12);
        assert!(r.max_alternate_residual > 0.1);
        let zero = omega_identity_check(&[0.0]).unwrap();
        assert_eq!(zero.rows[0].tension_term, 0.0);
        assert_eq!(zero.rows[0].pv_closed, 0.0);
        let phi = PI / 6.0;
        assert!((semicircle_pv(2.0 * phi.sin()).unwrap() + phi.sin()).abs() < 1e-6);
    }

    #[test]
    fn affine_wulff() {
        for &b in &[-0.5, -1.0, -2.0, -4.0] {
            let r = affine_wulff_check(b).unwrap();
            assert!(r.residual < 1e-12, "{r:?}");
            assert!(r.argmin.abs() < 1e-6);
            assert!((r.lhs + 0.5 * (-b).ln()).abs() < 1e-12);
        }
        assert!(affine_wulff_check(1.0).is_err());
    }

    #[test]
    fn superfactorial() {
        assert!(superfactorial_asymptotic_check(1, 500).unwrap().residual < 0.02);
        assert!(superfactorial_asymptotic_check(2, 250).unwrap().residual < 0.04);
        let a = superfactorial_asymptotic_check(1, 200).unwrap().residual;
        let b = superfactorial_asymptotic_check(1, 400).unwrap().residual;
        assert!(b < 0.7 * a);
    }
}
