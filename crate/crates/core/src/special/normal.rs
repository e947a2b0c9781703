//! Standard normal CDF and quantile.

use super::gamma::log_incomplete_gamma;
use crate::error::{Error, Result};

/// `Φ(x)`, via `erfc(t) = Q(1/2, t²)`.
pub fn normal_cdf(x: f64) -> f64 {
    if x == 0.0 {
        return 0.5;
    }
    let ln_t2 = 2.0 * (x.abs() * std::f64::consts::FRAC_1_SQRT_2).ln();
    let (_, ln_q) = log_incomplete_gamma(0.5, ln_t2).expect("shape 1/2 is valid");
    let tail = 0.5 * ln_q.exp();
    if x < 0.0 {
        tail
    } else {
        1.0 - tail
    }
}

/// `Φ⁻¹(p)`: rational initial guess refined by Newton steps on `Φ`.
pub fn normal_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain {
            func: "normal_quantile",
            value: p,
            expected: "0 < p < 1",
        });
    }
    // Work in the lower tail for accuracy.
    if p > 0.5 {
        return normal_quantile(1.0 - p).map(|x| -x);
    }
    let mut x = initial_guess(p);
    for _ in 0..4 {
        let err = normal_cdf(x) - p;
        let dens = (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let step = err / dens;
        x -= step;
        if step.abs() < 1e-15 * x.abs().max(1.0) {
            break;
        }
    }
    Ok(x)
}

/// Acklam's rational approximation, relative error about 1e-9.
fn initial_guess(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969_683_028_665_376e1,
        2.209_460_984_245_205e2,
        -2.759_285_104_469_687e2,
        1.383_577_518_672_69e2,
        -3.066_479_806_614_716e1,
        2.506_628_277_459_239,
    ];
    const B: [f64; 5] = [
        -5.447_609_879_822_406e1,
        1.615_858_368_580_409e2,
        -1.556_989_798_598_866e2,
        6.680_131_188_771_972e1,
        -1.328_068_155_288_572e1,
    ];
    const C: [f64; 6] = [
        -7.784_894_002_430_293e-3,
        -3.223_964_580_411_365e-1,
        -2.400_758_277_161_838,
        -2.549_732_539_343_734,
        4.374_664_141_464_968,
        2.938_163_982_698_783,
    ];
    const D: [f64; 4] = [
        7.784_695_709_041_462e-3,
        3.224_671_290_700_398e-1,
        2.445_134_137_142_996,
        3.754_408_661_907_416,
    ];
    if p < 0.02425 {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert!((normal_cdf(1.0) - 0.841_344_746_068_542_9).abs() < 1e-15);
        assert!((normal_cdf(-3.0) - 1.349_898_031_630_094_5e-3).abs() < 1e-17);
        assert!((normal_quantile(0.975).unwrap() - 1.959_963_984_540_054).abs() < 1e-13);
        for &p in &[1e-12, 1e-4, 0.1, 0.5, 0.9, 1.0 - 1e-6] {
            let x = normal_quantile(p).unwrap();
            assert!((normal_cdf(x) - p).abs() < 1e-14 * p.max(1e-2) * 100.0, "p = {p}");
        }
    }
}
