use super::{CommandSpec, Ctx};
use crate::error::{CliError, CliResult};
use crate::output::{RunOutput, Table};
use crate::schema::{choice, int, positive, Kind, Param};
use nipoly::limit_shapes::{
    affine_wulff_check, fluctuation_mc, gue_sample, johansson_check, lue_sample, mp_quantile,
    omega_identity_check, sc_quantile, xi_edge_bottom, xi_edge_top, xi_ht, xi_mp, xi_sc,
};
use serde_json::json;
use std::f64::consts::{FRAC_PI_2, PI};

fn mp(ctx: &Ctx) -> CliResult<RunOutput> {
    let p = &ctx.config.params;
    let (c, points) = (p.real("c"), p.usize("points"));
    let mut table = Table::new("", &["c", "alpha", "rho"]);
    for i in 0..=points {
        let alpha = c * i as f64 / points as f64;
        table.push(vec![c.into(), alpha.into(), mp_quantile(c, alpha)?.into()]);
    }
    Ok(RunOutput {
        tables: vec![table],
        results: json!({ "lower_edge": (1.0 - c.sqrt()).powi(2), "upper_edge": (1.0 + c.sqrt()).powi(2) }),
    })
}

fn sc(ctx: &Ctx) -> CliResult<RunOutput> {
    let points = ctx.config.params.usize("points");
    let mut table = Table::new("", &["x", "rho"]);
    for i in 0..=points {
        let x = i as f64 / points as f64;
        table.push(vec![x.into(), sc_quantile(x)?.into()]);
    }
    Ok(RunOutput {
        tables: vec![table],
        results: json!({ "median": sc_quantile(0.5)? }),
    })
}

fn xi(ctx: &Ctx) -> CliResult<RunOutput> {
    let p = &ctx.config.params;
    let points = p.usize("points");
    let kind = p.text("kind").unwrap_or("ht");
    let f = match kind {
        "mp" => xi_mp,
        "sc" => xi_sc,
        _ => xi_ht,
    };
    let mut table = Table::new("", &["s", "t", "xi"]);
    for i in 0..=points {
        for j in 0..=points {
            let (s, t) = (i as f64 / points as f64, j as f64 / points as f64);
            table.push(vec![s.into(), t.into(), f(s, t)?.into()]);
        }
    }
    Ok(RunOutput {
        tables: vec![table],
        results: json!({ "kind": kind, "corner_00": f(0.0, 0.0)?, "corner_11": f(1.0, 1.0)? }),
    })
}

fn edge(ctx: &Ctx) -> CliResult<RunOutput> {
    let p = &ctx.config.params;
    let (mu, points) = (p.real("mu"), p.usize("points"));
    let mut table = Table::new("", &["mu", "t", "bottom", "top"]);
    for i in 0..=points {
        let t = i as f64 / points as f64;
        table.push(vec![mu.into(), t.into(), xi_edge_bottom(mu, t)?.into(), xi_edge_top(mu, t)?.into()]);
    }
    let meet = xi_edge_bottom(mu, 1.0)?;
    Ok(RunOutput {
        tables: vec![table],
        results: json!({ "corner": meet, "corner_mismatch": (meet - xi_edge_top(mu, 0.0)?).abs() }),
    })
}

fn bead(ctx: &Ctx) -> CliResult<RunOutput> {
    let points = ctx.config.params.usize("points");
    let phis: Vec<f64> = (1..=points).map(|i| -FRAC_PI_2 + PI * i as f64 / (points + 1) as f64).collect();
    let r = omega_identity_check(&phis)?;
    let mut table = Table::new("", &["phi", "tension_term", "pv_closed", "residual", "alternate_residual"]);
    for row in &r.rows {
        table.push(vec![
            row.phi.into(),
            row.tension_term.into(),
            row.pv_closed.into(),
            row.residual.into(),
            row.alternate_residual.into(),
        ]);
    }
    let mut wulff = Table::new("wulff", &["b", "lhs", "rhs", "residual", "argmin"]);
    for &b in &[-0.5, -1.0, -2.0, -4.0] {
        let w = affine_wulff_check(b)?;
        wulff.push(vec![b.into(), w.lhs.into(), w.rhs.into(), w.residual.into(), w.argmin.into()]);
    }
    Ok(RunOutput {
        tables: vec![table, wulff],
        results: json!({ "max_residual": r.max_residual, "max_alternate_residual": r.max_alternate_residual }),
    })
}

fn eigen(ctx: &Ctx) -> CliResult<RunOutput> {
    let p = &ctx.config.params;
    let (n, seed) = (p.usize("n"), ctx.config.seed);
    let ensemble = p.text("ensemble").unwrap_or("gue");
    let mut table = Table::new("", &["index", "eigenvalue", "scaled", "predicted"]);
    let mut gap = 0.0f64;
    if ensemble == "gue" {
        let ev = gue_sample(n, seed)?;
        for (i, &l) in ev.iter().enumerate() {
            let scaled = l / (n as f64).sqrt();
            let q = sc_quantile((i as f64 + 0.5) / n as f64)?;
            gap = gap.max((scaled - q).abs());
            table.push(vec![(i + 1).into(), l.into(), scaled.into(), q.into()]);
        }
    } else {
        let m = p.usize("m");
        if m > n {
            return Err(CliError::Schema(format!("m = {m} must not exceed n = {n}")));
        }
        let ev = lue_sample(n, m, seed)?;
        let c = m as f64 / n as f64;
        for (i, &l) in ev.iter().enumerate() {
            let scaled = l / n as f64;
            let q = mp_quantile(c, c * (i as f64 + 0.5) / m as f64)?;
            gap = gap.max((scaled - q).abs());
            table.push(vec![(i + 1).into(), l.into(), scaled.into(), q.into()]);
        }
    }
    Ok(RunOutput {
        tables: vec![table],
        results: json!({ "ensemble": ensemble, "sup_quantile_gap": gap }),
    })
}

fn johansson(ctx: &Ctx) -> CliResult<RunOutput> {
    let p = &ctx.config.params;
    let (n, m, k) = (p.usize("n"), p.usize("m"), p.usize("k"));
    let r = johansson_check(n, m, k, ctx.replicas(), ctx.config.seed)?;
    let mut table = Table::new(
        "",
        &["N", "m", "k", "samples", "passage_mean", "passage_stderr", "eigen_mean", "eigen_stderr", "ks"],
    );
    table.push(vec![
        n.into(),
        m.into(),
        k.into(),
        r.samples.into(),
        r.passage.mean.into(),
        r.passage.stderr.into(),
        r.eigen.mean.into(),
        r.eigen.stderr.into(),
        r.ks.into(),
    ]);
    Ok(RunOutput {
        tables: vec![table],
        results: serde_json::to_value(&r).expect("report serialises"),
    })
}

fn fluctuations(ctx: &Ctx) -> CliResult<RunOutput> {
    let p = &ctx.config.params;
    let r = fluctuation_mc(p.real("kappa"), p.usize("n"), p.reals("t"), ctx.replicas(), ctx.config.seed)?;
    let mut table = Table::new(
        "",
        &["t", "mean", "exact_mean", "variance", "exact_variance", "skewness", "excess_kurtosis"],
    );
    for q in &r.points {
        table.push(vec![
            q.t.into(),
            q.mean.into(),
            q.exact_mean.into(),
            q.variance.into(),
            q.exact_variance.into(),
            q.skewness.into(),
            q.excess_kurtosis.into(),
        ]);
    }
    Ok(RunOutput {
        tables: vec![table],
        results: json!({ "increment_correlations": r.increment_correlations }),
    })
}

pub static COMMANDS: &[&CommandSpec] = &[
    &CommandSpec {
        path: &["shapes", "mp"],
        about: "Marčenko–Pastur quantile curve",
        params: &[
            Param {
                name: "c",
                kind: Kind::Real {
                    min: 0.0,
                    max: 1.0,
                    open: true,
                },
                default: Some("0.5"),
                help: "ratio c in (0, 1]",
            },
            int("points", 1, 100_000, Some("100"), "number of intervals"),
        ],
        replicas: None,
        run: mp,
    },
    &CommandSpec {
        path: &["shapes", "sc"],
        about: "Semicircle quantile curve",
        params: &[int("points", 1, 100_000, Some("100"), "number of intervals")],
        replicas: None,
        run: sc,
    },
    &CommandSpec {
        path: &["shapes", "xi"],
        about: "Limit shape on a square grid",
        params: &[
            choice("kind", &["ht", "mp", "sc"], Some("ht"), "which limit shape"),
            int("points", 1, 2000, Some("20"), "grid intervals per side"),
        ],
        replicas: None,
        run: xi,
    },
    &CommandSpec {
        path: &["shapes", "edge"],
        about: "Boundary values of the log-gamma limit shape along the two edges",
        params: &[
            positive("mu", 1e6, Some("1"), "shape parameter"),
            int("points", 1, 100_000, Some("50"), "number of intervals"),
        ],
        replicas: None,
        run: edge,
    },
    &CommandSpec {
        path: &["shapes", "bead"],
        about: "Euler–Lagrange balance and affine Wulff checks for the bead surface tension",
        params: &[int("points", 1, 100_000, Some("99"), "number of interior angles")],
        replicas: None,
        run: bead,
    },
    &CommandSpec {
        path: &["shapes", "eigen"],
        about: "Eigenvalues of one GUE or LUE sample against the limiting quantiles",
        params: &[
            choice("ensemble", &["gue", "lue"], Some("gue"), "matrix ensemble"),
            int("n", 1, 600, Some("100"), "size N (LUE: number of columns)"),
            int("m", 1, 600, Some("50"), "LUE rows, at most N"),
        ],
        replicas: None,
        run: eigen,
    },
    &CommandSpec {
        path: &["shapes", "johansson"],
        about: "Last-passage value against the sum of the top LUE eigenvalues",
        params: &[
            int("n", 1, 64, Some("5"), "N"),
            int("m", 1, 64, Some("3"), "m, at most N"),
            int("k", 1, 64, Some("1"), "number of paths / eigenvalues"),
        ],
        replicas: Some(10_000),
        run: johansson,
    },
    &CommandSpec {
        path: &["shapes", "fluctuations"],
        about: "Diagonal fluctuations of the high-temperature interface",
        params: &[
            positive("kappa", 1e6, Some("1"), "temperature scale: shape is kappa N^2"),
            int("n", 1, 5000, Some("200"), "N"),
            Param {
                name: "t",
                kind: Kind::RealList { min: 1e-9, max: 1.0 },
                default: Some("0.25,0.5,1"),
                help: "diagonal positions in (0, 1]",
            },
        ],
        replicas: Some(1000),
        run: fluctuations,
    },
];

