use nipoly::lattice::{enumerate_kpaths, lgv_count, macmahon_log_count, rectangle_endpoints};
use nipoly::limit_shapes::{bead_sigma, bead_sigma_tilted, mp_quantile, sc_quantile, xi_ht, xi_mp, xi_sc};
use nipoly::special::{
    digamma, inv_gamma_cdf_log_arg, inv_gamma_log_quantile, log_gamma, logdet_f64, logsumexp, trigamma,
};
use nipoly::szego::{log_coefficients, winding_number, Symbol};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn exact_det(m: &[Vec<i64>]) -> BigRational {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let mut det = BigRational::from_integer(BigInt::from(1));
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= a[col][col].clone();
        for r in col + 1..n {
            let f = a[r][col].clone() / a[col][col].clone();
            for c in col..n {
                let v = a[col][c].clone() * f.clone();
                a[r][c] -= v;
            }
        }
    }
    det
}

fn to_f64(r: &BigRational) -> f64 {
    let (num, den) = (r.numer().to_string(), r.denom().to_string());
    num.parse::<f64>().unwrap() / den.parse::<f64>().unwrap()
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-9i64..=9, n), n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn gamma_family_recurrences(x in 0.05f64..60.0) {
        let lg = log_gamma(x + 1.0).unwrap() - log_gamma(x).unwrap() - x.ln();
        prop_assert!(lg.abs() < 1e-12 * (1.0 + log_gamma(x + 1.0).unwrap().abs()));
        let dg = digamma(x + 1.0).unwrap() - digamma(x).unwrap() - 1.0 / x;
        prop_assert!(dg.abs() < 1e-12 * (1.0 + 1.0 / x));
        let tg = trigamma(x).unwrap() - trigamma(x + 1.0).unwrap() - 1.0 / (x * x);
        prop_assert!(tg.abs() < 1e-11 * (1.0 + 1.0 / (x * x)));
    }

    #[test]
    fn inverse_gamma_quantile_round_trip(mu in prop::sample::select(vec![0.5, 1.0, 2.0, 10.0]), u in 1e-6f64..(1.0 - 1e-6)) {
        let log_s = inv_gamma_log_quantile(mu, u).unwrap();
        let back = inv_gamma_cdf_log_arg(mu, log_s).unwrap();
        prop_assert!((back - u).abs() < 1e-10, "mu {} u {} back {}", mu, u, back);
    }

    #[test]
    fn logdet_agrees_with_exact_rational(m in matrix()) {
        let exact = exact_det(&m);
        let rows: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
        let got = logdet_f64(&rows).unwrap();
        if exact.is_zero() {
            prop_assert!(got.sign() == 0 || got.to_f64().abs() < 1e-8);
        } else {
            let want = to_f64(&exact);
            prop_assert_eq!(got.sign(), if exact.is_positive() { 1 } else { -1 });
            prop_assert!((got.to_f64() - want).abs() <= 1e-10 * want.abs(), "{} vs {}", got.to_f64(), want);
        }
    }

    #[test]
    fn logsumexp_matches_direct_sum(xs in prop::collection::vec(-30.0f64..30.0, 1..20), shift in -500.0f64..500.0) {
        let direct = xs.iter().map(|x| x.exp()).sum::<f64>().ln();
        let shifted: Vec<f64> = xs.iter().map(|x| x + shift).collect();
        prop_assert!((logsumexp(&shifted) - shift - direct).abs() < 1e-12 * (1.0 + direct.abs()));
    }

    #[test]
    fn rectangle_lgv_matches_product_formula(n in 1i64..=5, m in 1i64..=5, k in 1usize..=3) {
        prop_assume!(k as i64 <= n.min(m));
        let (xs, ys) = rectangle_endpoints(n, m, k);
        let lgv = lgv_count(&xs, &ys).unwrap();
        let formula = macmahon_log_count(n as u64, m as u64, k as u64).unwrap();
        prop_assert!((lgv.logmag() - formula).abs() < 1e-10);
        if n + m <= 7 {
            let families = enumerate_kpaths(&xs, &ys, 1_000_000).unwrap().len() as f64;
            prop_assert!((families.ln() - formula).abs() < 1e-10);
        }
    }

    #[test]
    fn bead_tension_scales_and_reflects(p in -10.0f64..-0.01, frac in -0.499f64..0.499, lambda in 0.01f64..100.0) {
        let q = frac * -p;
        let base = bead_sigma_tilted(p, q).finite().unwrap();
        let scaled = bead_sigma_tilted(lambda * p, lambda * q).finite().unwrap();
        prop_assert!((scaled - (base - lambda.ln())).abs() < 1e-10 * (1.0 + base.abs()));
        prop_assert_eq!(bead_sigma_tilted(p, -q), bead_sigma_tilted(p, q));
        let (s, t) = (0.5 * p - q, 0.5 * p + q);
        prop_assert_eq!(bead_sigma(s, t), bead_sigma(t, s));
        prop_assert!(bead_sigma_tilted(-p, q).finite().is_none());
    }

    #[test]
    fn limit_shapes_are_symmetric(s in 0.0f64..=1.0, t in 0.0f64..=1.0) {
        for f in [xi_ht, xi_mp, xi_sc] {
            prop_assert_eq!(f(s, t).unwrap(), f(t, s).unwrap());
        }
    }

    #[test]
    fn quantiles_decrease_in_mass(a in 0.0f64..1.0, b in 0.0f64..1.0, c in 0.05f64..=1.0) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(sc_quantile(lo).unwrap() >= sc_quantile(hi).unwrap());
        prop_assert!(mp_quantile(c, c * lo).unwrap() >= mp_quantile(c, c * hi).unwrap() - 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn symbol_scaling_shifts_only_the_constant_term(
        lo in 0.1f64..3.0, mid in 6.5f64..10.0, hi in 0.1f64..3.0, scale in 0.05f64..20.0,
    ) {
        let sym = Symbol::new([(-1, lo), (0, mid), (1, hi)]);
        let scaled = sym.scale(scale);
        prop_assert_eq!(winding_number(&sym).unwrap(), 0);
        prop_assert_eq!(winding_number(&scaled).unwrap(), 0);
        let a = log_coefficients(&sym, 4).unwrap();
        let b = log_coefficients(&scaled, 4).unwrap();
        prop_assert!((b.get(0) - a.get(0) - scale.ln()).abs() < 1e-10);
        for m in [-4i64, -3, -2, -1, 1, 2, 3, 4] {
            prop_assert!((b.get(m) - a.get(m)).abs() < 1e-10);
        }
    }
}
