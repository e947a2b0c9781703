//! Pattern integrals: Gelfand–Tsetlin volumes and the GL(2) Whittaker
//! function, plus the diagonal (Whittaker) marginal of the log-gamma
//! interface for `N ≤ 2`.

use crate::error::{Error, Result};
use crate::special::{log_gamma, log_superfactorial};

/// Volume of the Gelfand–Tsetlin polytope with top row `λ`:
/// `∏_{i<j} (λ_i − λ_j) / H(N)`, zero unless `λ` is strictly decreasing.
pub fn gt_volume(lambda: &[f64]) -> f64 {
    let n = lambda.len();
    if lambda.windows(2).any(|w| w[0] <= w[1]) {
        return 0.0;
    }
    let mut log_v = -log_superfactorial(n as u64);
    for i in 0..n {
        for j in i + 1..n {
            log_v += (lambda[i] - lambda[j]).ln();
        }
    }
    log_v.exp()
}

/// `∫_R exp(−x (cosh u − 1)) du` by the trapezoid rule, which converges
/// geometrically for this entire integrand.
fn scaled_cosh_integral(x: f64) -> f64 {
    let h = (0.2 / x.sqrt()).min(0.05);
    let mut sum = 0.5;
    let mut k = 1u64;
    loop {
        let u = k as f64 * h;
        let v = (-x * (u.cosh() - 1.0)).exp();
        sum += v;
        if v < 1e-18 * sum {
            break;
        }
        k += 1;
    }
    2.0 * h * sum
}

/// `ln ∫ exp(−e^{φ−λ₁} − e^{λ₂−φ}) dφ`.
pub fn log_whittaker_gl2(lambda1: f64, lambda2: f64) -> f64 {
    // Centering at (λ₁+λ₂)/2 turns the exponent into −x cosh u.
    let x = 2.0 * (0.5 * (lambda2 - lambda1)).exp();
    -x + scaled_cosh_integral(x).ln()
}

/// GL(2) Whittaker function by quadrature.
pub fn whittaker_gl2(lambda1: f64, lambda2: f64) -> f64 {
    log_whittaker_gl2(lambda1, lambda2).exp()
}

/// Log-density of the diagonal marginal `(λ₁, ..., λ_N)` of the log-gamma
/// interface: `−e^{−λ_N} − μ Σ λ_i + 2 ln g(λ) − N² ln Γ(μ)`, where `g` is
/// the exponential pattern integral (1 for `N = 1`, [`whittaker_gl2`] for
/// `N = 2`).
pub fn whittaker_measure_logdensity(lambda: &[f64], mu: f64) -> Result<f64> {
    let n = lambda.len();
    let lg = log_gamma(mu)?;
    let base = -(-lambda[n.max(1) - 1]).exp() - mu * lambda.iter().sum::<f64>() - (n * n) as f64 * lg;
    match n {
        1 => Ok(base),
        2 => Ok(base + 2.0 * log_whittaker_gl2(lambda[0], lambda[1])),
        _ => Err(Error::Invalid(format!(
            "whittaker_measure_logdensity is available for N in {{1, 2}}, got {n}"
        ))),
    }
}

/// Trapezoid sum of `f` over `[lo, hi]` with step `h`.
pub(crate) fn trapezoid(f: impl Fn(f64) -> f64, lo: f64, hi: f64, h: f64) -> f64 {
    let k = ((hi - lo) / h).round() as usize;
    let h = (hi - lo) / k as f64;
    let mut s = 0.5 * (f(lo) + f(hi));
    for i in 1..k {
        s += f(lo + i as f64 * h);
    }
    s * h
}

/// `∫ exp(−e^{−λ} − μλ) dλ / Γ(μ)`, the total mass of the one-site
/// interface law.
pub fn one_site_mass(mu: f64) -> Result<f64> {
    let lg = log_gamma(mu)?;
    let hi = 60.0 / mu.min(1.0) + 10.0;
    Ok(trapezoid(|l| (-(-l).exp() - mu * l - lg).exp(), -6.0, hi, 0.02))
}

/// Mean of the one-site interface law by quadrature.
pub fn one_site_mean(mu: f64) -> Result<f64> {
    let lg = log_gamma(mu)?;
    let hi = 60.0 / mu.min(1.0) + 10.0;
    Ok(trapezoid(|l| l * (-(-l).exp() - mu * l - lg).exp(), -6.0, hi, 0.02))
}

/// Total mass and diagonal means of the `N = 2` Whittaker marginal by a
/// two-dimensional trapezoid rule on `[lo, hi]²`.
pub fn whittaker_n2_moments(mu: f64, lo: f64, hi: f64, h: f64) -> Result<(f64, f64, f64)> {
    log_gamma(mu)?;
    let k = ((hi - lo) / h).round() as usize;
    let h = (hi - lo) / k as f64;
    let (mut mass, mut m1, mut m2) = (0.0, 0.0, 0.0);
    for a in 0..=k {
        let l1 = lo + a as f64 * h;
        let wa = if a == 0 || a == k { 0.5 } else { 1.0 };
        for b in 0..=k {
            let l2 = lo + b as f64 * h;
            let wb = if b == 0 || b == k { 0.5 } else { 1.0 };
            let d = whittaker_measure_logdensity(&[l1, l2], mu)?.exp() * wa * wb;
            mass += d;
            m1 += d * l1;
            m2 += d * l2;
        }
    }
    let area = h * h;
    Ok((mass * area, m1 * area, m2 * area))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{bessel_k0, digamma};

    #[test]
    fn gt_volumes() {
        assert!((gt_volume(&[1.0, 0.0]) - 1.0).abs() < 1e-15);
        assert!((gt_volume(&[2.0, 1.0, 0.0]) - 1.0).abs() < 1e-14);
        assert_eq!(gt_volume(&[0.0, 1.0]), 0.0);
        assert_eq!(gt_volume(&[1.0, 1.0, 0.0]), 0.0);
    }

    #[test]
    fn gt_volume_by_rejection() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let lambda = [2.0, 1.0, 0.0];
        let trials = 1_000_000;
        let mut hits = 0;
        for _ in 0..trials {
            let (a, b, c): (f64, f64, f64) = (rng.gen_range(0.0..2.0), rng.gen_range(0.0..2.0), rng.gen_range(0.0..2.0));
            // a = φ(1,2), b = φ(2,3), c = φ(1,3).
            if lambda[0] >= a && a >= lambda[1] && lambda[1] >= b && b >= lambda[2] && a >= c && c >= b {
                hits += 1;
            }
        }
        let vol = 8.0 * hits as f64 / trials as f64;
        assert!((vol - gt_volume(&lambda)).abs() < 0.02);
    }

    #[test]
    fn whittaker_is_twice_k0() {
        assert!((whittaker_gl2(0.0, 0.0) - 0.227_787_745_499_066_8).abs() < 1e-12);
        for &(a, b) in &[(0.0, 0.0), (1.0, -1.0), (-2.0, 3.0), (5.0, 0.5), (0.3, 0.2)] {
            let k = 2.0 * bessel_k0(2.0 * ((b - a) / 2.0f64).exp()).unwrap();
            assert!((whittaker_gl2(a, b) - k).abs() < 1e-8, "{a} {b}");
        }
        assert!(whittaker_gl2(1.0, 0.0) > whittaker_gl2(0.0, 0.0));
        assert!((whittaker_gl2(3.0, 1.0) - whittaker_gl2(5.0, 3.0)).abs() < 1e-14);
    }

    #[test]
    fn one_site_law() {
        for mu in [0.5, 1.5, 3.0] {
            assert!((one_site_mass(mu).unwrap() - 1.0).abs() < 1e-8);
            assert!((one_site_mean(mu).unwrap() + digamma(mu).unwrap()).abs() < 1e-8);
        }
        let l = 0.4;
        let a = whittaker_measure_logdensity(&[l], 1.5).unwrap();
        let grid = super::super::InterfaceGrid::from_fn(1, |_, _| l);
        assert!((a - super::super::interface_log_density(&grid, 1.5).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn two_site_whittaker_mass() {
        let (mass, _, _) = whittaker_n2_moments(2.0, -8.0, 30.0, 0.1).unwrap();
        assert!((mass - 1.0).abs() < 1e-4, "{mass}");
        assert!(whittaker_measure_logdensity(&[0.0; 3], 1.0).is_err());
    }
}
