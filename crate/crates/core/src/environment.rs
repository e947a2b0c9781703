//! Random environments: a counter-based uniform field on `Z²` and the
//! weight laws built from it.
//!
//! Every weight is a deterministic function of `(seed, site)`, so two
//! computations over the same seed see the same environment regardless of
//! evaluation order, and distinct shape parameters are coupled through the
//! shared uniforms.

use crate::error::{Error, Result};
use crate::lattice::Point;
use crate::special::{
    digamma, inv_gamma_cdf_log_arg, inv_gamma_log_quantile, log_gamma, normal_cdf, normal_quantile,
};
use serde::{Deserialize, Serialize};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the `stream`-th independent sub-stream of `seed`.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    mix64(mix64(seed ^ GOLDEN).wrapping_add(mix64(stream.wrapping_add(1).wrapping_mul(GOLDEN))))
}

/// I.i.d. uniforms on `(0, 1)` indexed by lattice sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniformField {
    key: u64,
    seed: u64,
}

impl UniformField {
    pub fn new(seed: u64) -> Self {
        UniformField {
            key: mix64(seed ^ GOLDEN),
            seed,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `U(z)`, never exactly 0 or 1.
    pub fn uniform_at(&self, z: Point) -> f64 {
        let h = mix64(self.key ^ (z.x1 as u64).wrapping_mul(GOLDEN));
        let h = mix64(h.wrapping_add((z.x2 as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F)));
        ((h >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Exponential(1) variable `-ln(1 - U(z))`, the small-shape limit of
    /// `μ ln ζ_μ(z)`.
    pub fn coupled_exponential(&self, z: Point) -> f64 {
        -(-self.uniform_at(z)).ln_1p()
    }
}

/// Law of the single-site disorder `ω`; the Boltzmann factor at inverse
/// temperature `β` is `exp(β ω)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum WeightSpec {
    /// `ω = ln ζ` with `ζ` inverse-gamma of shape `μ` (used at `β = 1`).
    LogGamma(f64),
    ExponentialMean1,
    Gaussian,
    Bernoulli(f64),
    Constant(f64),
}

impl WeightSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            WeightSpec::LogGamma(mu) if !(mu > 0.0 && mu.is_finite()) => Err(Error::Domain {
                func: "WeightSpec::LogGamma",
                value: mu,
                expected: "mu > 0",
            }),
            WeightSpec::Bernoulli(p) if !(0.0..=1.0).contains(&p) => Err(Error::Domain {
                func: "WeightSpec::Bernoulli",
                value: p,
                expected: "0 <= p <= 1",
            }),
            WeightSpec::Constant(c) if !c.is_finite() => Err(Error::Domain {
                func: "WeightSpec::Constant",
                value: c,
                expected: "finite",
            }),
            _ => Ok(()),
        }
    }

    /// `ω` as a function of the underlying uniform.
    pub fn from_uniform(&self, u: f64) -> Result<f64> {
        match *self {
            WeightSpec::LogGamma(mu) => inv_gamma_log_quantile(mu, u),
            WeightSpec::ExponentialMean1 => Ok(-(-u).ln_1p()),
            WeightSpec::Gaussian => normal_quantile(u),
            WeightSpec::Bernoulli(p) => Ok(if u > 1.0 - p { 1.0 } else { 0.0 }),
            WeightSpec::Constant(c) => Ok(c),
        }
    }

    /// Mean `ν = E ω`.
    pub fn mean(&self) -> f64 {
        match *self {
            WeightSpec::LogGamma(mu) => -digamma(mu).expect("validated shape"),
            WeightSpec::ExponentialMean1 => 1.0,
            WeightSpec::Gaussian => 0.0,
            WeightSpec::Bernoulli(p) => p,
            WeightSpec::Constant(c) => c,
        }
    }

    /// `ln E exp(β ω)`, or `None` where the moment is infinite.
    pub fn log_mgf(&self, beta: f64) -> Option<f64> {
        match *self {
            WeightSpec::LogGamma(mu) => {
                if beta >= mu {
                    None
                } else if beta == 0.0 {
                    Some(0.0)
                } else {
                    Some(log_gamma(mu - beta).ok()? - log_gamma(mu).ok()?)
                }
            }
            WeightSpec::ExponentialMean1 => (beta < 1.0).then(|| -(-beta).ln_1p()),
            WeightSpec::Gaussian => Some(0.5 * beta * beta),
            WeightSpec::Bernoulli(p) => Some((p * beta.exp_m1()).ln_1p()),
            WeightSpec::Constant(c) => Some(beta * c),
        }
    }

    /// CDF of `ω` (right-continuous for the atomic laws).
    pub fn cdf(&self, x: f64) -> f64 {
        match *self {
            WeightSpec::LogGamma(mu) => inv_gamma_cdf_log_arg(mu, x).expect("validated shape"),
            WeightSpec::ExponentialMean1 => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-x).exp_m1()
                }
            }
            WeightSpec::Gaussian => normal_cdf(x),
            WeightSpec::Bernoulli(p) => {
                if x < 0.0 {
                    0.0
                } else if x < 1.0 {
                    1.0 - p
                } else {
                    1.0
                }
            }
            WeightSpec::Constant(c) => {
                if x < c {
                    0.0
                } else {
                    1.0
                }
            }
        }
    }

    pub fn is_continuous(&self) -> bool {
        matches!(
            self,
            WeightSpec::LogGamma(_) | WeightSpec::ExponentialMean1 | WeightSpec::Gaussian
        )
    }
}

/// A uniform field paired with a weight law.
#[derive(Debug, Clone, Copy)]
pub struct Environment {
    pub field: UniformField,
    pub spec: WeightSpec,
}

impl Environment {
    pub fn new(seed: u64, spec: WeightSpec) -> Result<Self> {
        spec.validate()?;
        Ok(Environment {
            field: UniformField::new(seed),
            spec,
        })
    }

    /// `ω(z)`.
    pub fn omega(&self, z: Point) -> f64 {
        self.spec
            .from_uniform(self.field.uniform_at(z))
            .expect("uniform lies in (0, 1) and the spec was validated")
    }

    /// `ω` on the rectangle `[1, n] × [1, m]`, row-major in `x2`, so the
    /// value at `(a, b)` sits at index `(b - 1) * n + (a - 1)`.
    pub fn omega_grid(&self, n: usize, m: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(n * m);
        for b in 1..=m as i64 {
            for a in 1..=n as i64 {
                out.push(self.omega(Point::new(a, b)));
            }
        }
        out
    }
}

/// `ζ_μ(z) = F_μ⁻¹(U(z))`; overflows to `inf` for tiny shapes, where
/// [`Environment::omega`] with [`WeightSpec::LogGamma`] stays finite.
pub fn weight_at(field: &UniformField, mu: f64, z: Point) -> Result<f64> {
    inv_gamma_log_quantile(mu, field.uniform_at(z)).map(f64::exp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::{correlation, ks_statistic, mean};

    fn sites(n: i64) -> impl Iterator<Item = Point> {
        (0..n).map(|i| Point::new(i % 1000, i / 1000))
    }

    #[test]
    fn uniforms_pass_ks() {
        let f = UniformField::new(2024);
        let xs: Vec<f64> = sites(1_000_000).map(|z| f.uniform_at(z)).collect();
        assert!(xs.iter().all(|&u| u > 0.0 && u < 1.0));
        assert!(ks_statistic(&xs, |u| u) < 0.002);
    }

    #[test]
    fn seeds_decorrelate() {
        let (a, b) = (UniformField::new(1), UniformField::new(2));
        let xs: Vec<f64> = sites(100_000).map(|z| a.uniform_at(z)).collect();
        let ys: Vec<f64> = sites(100_000).map(|z| b.uniform_at(z)).collect();
        assert!(correlation(&xs, &ys).abs() < 0.01);
        let c = UniformField::new(derive_seed(1, 0));
        let zs: Vec<f64> = sites(100_000).map(|z| c.uniform_at(z)).collect();
        assert!(correlation(&xs, &zs).abs() < 0.01);
    }

    #[test]
    fn every_law_matches_its_cdf() {
        let specs = [
            WeightSpec::LogGamma(0.7),
            WeightSpec::LogGamma(3.0),
            WeightSpec::ExponentialMean1,
            WeightSpec::Gaussian,
            WeightSpec::Bernoulli(0.3),
            WeightSpec::Constant(1.5),
        ];
        for spec in specs {
            let env = Environment::new(99, spec).unwrap();
            let xs: Vec<f64> = sites(100_000).map(|z| env.omega(z)).collect();
            if spec.is_continuous() {
                let d = ks_statistic(&xs, |x| spec.cdf(x));
                assert!(d < 0.01, "{spec:?}: KS = {d}");
            } else {
                // Atomic laws: compare the mass below every atom.
                let mut atoms: Vec<f64> = xs.clone();
                atoms.sort_by(f64::total_cmp);
                atoms.dedup();
                for a in atoms {
                    let emp = xs.iter().filter(|&&x| x <= a).count() as f64 / xs.len() as f64;
                    assert!((emp - spec.cdf(a)).abs() < 0.01, "{spec:?}");
                }
            }
            if spec.is_continuous() {
                assert!((mean(&xs) - spec.mean()).abs() < 0.05, "{spec:?}");
            }
        }
    }

    #[test]
    fn exponential_shape_is_closed_form() {
        let f = UniformField::new(5);
        for z in sites(100) {
            let u = f.uniform_at(z);
            let w = weight_at(&f, 1.0, z).unwrap();
            assert!((w + 1.0 / u.ln()).abs() < 1e-12 * w.max(1.0));
        }
    }

    #[test]
    fn mean_log_weight_is_minus_digamma() {
        let env = Environment::new(17, WeightSpec::LogGamma(2.0)).unwrap();
        let xs: Vec<f64> = sites(200_000).map(|z| env.omega(z)).collect();
        let target = -digamma(2.0).unwrap();
        assert!((mean(&xs) - target).abs() < 0.01);
    }

    #[test]
    fn small_shape_coupling_tightens() {
        let f = UniformField::new(8);
        let mut prev = f64::INFINITY;
        for &mu in &[1.0, 0.1, 0.01] {
            let gap: f64 = sites(1000)
                .map(|z| (mu * inv_gamma_log_quantile(mu, f.uniform_at(z)).unwrap() - f.coupled_exponential(z)).abs())
                .sum();
            assert!(gap < prev, "mu = {mu}");
            prev = gap;
        }
    }

    #[test]
    fn moment_generating_functions() {
        assert!((WeightSpec::Bernoulli(0.5).log_mgf(1.0).unwrap() - ((1.0 + 1f64.exp()) / 2.0).ln()).abs() < 1e-15);
        assert_eq!(WeightSpec::LogGamma(1.0).log_mgf(1.0), None);
        assert!((WeightSpec::LogGamma(3.0).log_mgf(1.0).unwrap() - 0.5f64.ln()).abs() < 1e-13);
        assert!(WeightSpec::LogGamma(-1.0).validate().is_err());
    }
}
