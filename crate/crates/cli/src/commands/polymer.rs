use super::{CommandSpec, Ctx};
use crate::error::{CliError, CliResult};
use crate::output::{RunOutput, Table};
use crate::schema::{choice, int, positive, real, Kind, Param};
use nipoly::environment::{derive_seed, Environment, WeightSpec};
use nipoly::lattice::{enumerate_kpaths, lgv_count, macmahon_log_count, rectangle_endpoints};
use nipoly::polymer::{
    free_energy_replica, kpath_logz, last_passage_replica, rost_ell, sepp_free_energy, WeightGrid,
};
use nipoly::stats::Estimate;
use serde_json::json;

const WEIGHTS: &[&str] = &["log-gamma", "exponential", "gaussian"];

fn weight_spec(name: &str, mu: f64) -> WeightSpec {
    match name {
        "log-gamma" => WeightSpec::LogGamma(mu),
        "exponential" => WeightSpec::ExponentialMean1,
        _ => WeightSpec::Gaussian,
    }
}

/// Largest `N² × replicas` accepted for free-energy runs.
const SITE_BUDGET: f64 = 2e10;

fn check_budget(n: usize, replicas: usize, c: f64) -> CliResult<()> {
    let work = (n as f64) * (n as f64) * c.max(1.0) * replicas as f64;
    if work > SITE_BUDGET {
        return Err(CliError::Cap(format!(
            "{work:.3e} site updates requested, cap is {SITE_BUDGET:.0e}"
        )));
    }
    Ok(())
}

fn free_energy_rows(ctx: &Ctx, n: usize, table: &mut Table) -> CliResult<(Estimate, Vec<f64>)> {
    let p = &ctx.config.params;
    let (mu, c, beta) = (p.real("mu"), p.real("c"), p.real("beta"));
    let spec = weight_spec(p.text("weights").unwrap_or("log-gamma"), mu);
    check_budget(n, ctx.replicas(), c)?;
    let seed = ctx.config.seed;
    let values = ctx.replicated(|r| free_energy_replica(spec, beta, n, c, seed, r as u64))?;
    let e = Estimate::from_samples(&values);
    table.push(vec![
        n.into(),
        c.into(),
        beta.into(),
        mu.into(),
        e.mean.into(),
        e.stderr.into(),
        ctx.replicas().into(),
        seed.into(),
    ]);
    Ok((e, values))
}

const ESTIMATE_COLUMNS: [&str; 8] = ["N", "c", "beta", "mu", "estimate", "stderr", "replicas", "seed"];

fn free_energy(ctx: &Ctx) -> CliResult<RunOutput> {
    let p = &ctx.config.params;
    let n = p.usize("n");
    let mut table = Table::new("", &ESTIMATE_COLUMNS);
    let (e, values) = free_energy_rows(ctx, n, &mut table)?;
    let mut reps = Table::new("replicas", &["replica", "value"]);
    for (i, v) in values.iter().enumerate() {
        reps.push(vec![i.into(), (*v).into()]);
    }
    let exact = if p.text("weights") == Some("log-gamma") && p.real("beta") == 1.0 {
        Some(sepp_free_energy(p.real("mu"), p.real("c"))?)
    } else {
        None
    };
    Ok(RunOutput {
        tables: vec![table, reps],
        results: json!({
            "estimate": e.mean,
            "stderr": e.stderr,
            "exact": exact,
            "gap": exact.map(|x| (e.mean - x).abs()),
        }),
    })
}

fn sweep(ctx: &Ctx) -> CliResult<RunOutput> {
    let mut table = Table::new("", &ESTIMATE_COLUMNS);
    let mut rows = Vec::new();
    for &n in ctx.config.params.ints("ns") {
        if n < 1 {
            return Err(CliError::Schema(format!("ns: sizes must be positive, got {n}")));
        }
        // Each size gets its own checkpoint through a derived command name.
        let config = crate::config::RunConfig {
            command: format!("{} n{n}", ctx.config.command),
            ..ctx.config.clone()
        };
        let sub = Ctx {
            config: &config,
            halt_after: ctx.halt_after,
        };
        let (e, _) = free_energy_rows(&sub, n as usize, &mut table)?;
        rows.push(json!({ "N": n, "estimate": e.mean, "stderr": e.stderr }));
    }
    Ok(RunOutput {
        tables: vec![table],
        results: json!({ "sizes": rows }),
    })
}

fn count(ctx: &Ctx) -> CliResult<RunOutput> {
    let p = &ctx.config.params;
    let (n, m, k) = (p.int("n"), p.int("m"), p.usize("k"));
    if k as i64 > n.min(m) {
        return Err(CliError::Schema(format!("k = {k} exceeds min(n, m) = {}", n.min(m))));
    }
    let formula = macmahon_log_count(n as u64, m as u64, k as u64)?;
    let (xs, ys) = rectangle_endpoints(n, m, k);
    let lgv = lgv_count(&xs, &ys)?;
    let mut table = Table::new("", &["n", "m", "k", "log_count_formula[nats]", "log_count_lgv[nats]"]);
    table.push(vec![n.into(), m.into(), k.into(), formula.into(), lgv.logmag().into()]);
    Ok(RunOutput {
        tables: vec![table],
        results: json!({
            "log_count": formula,
            "log_count_lgv": lgv.logmag(),
            "difference": (formula - lgv.logmag()).abs(),
        }),
    })
}

fn enumerate(ctx: &Ctx) -> CliResult<RunOutput> {
    let p = &ctx.config.params;
    let (n, m, k) = (p.int("n"), p.int("m"), p.usize("k"));
    if k as i64 > n.min(m) {
        return Err(CliError::Schema(format!("k = {k} exceeds min(n, m) = {}", n.min(m))));
    }
    let (xs, ys) = rectangle_endpoints(n, m, k);
    let families = enumerate_kpaths(&xs, &ys, p.usize("cap"))?;
    let formula = macmahon_log_count(n as u64, m as u64, k as u64)?.exp();
    let mut table = Table::new("", &["n", "m", "k", "enumerated", "formula"]);
    table.push(vec![n.into(), m.into(), k.into(), families.len().into(), formula.round().into()]);
    Ok(RunOutput {
        tables: vec![table],
        results: json!({ "enumerated": families.len(), "formula": formula.round(), "agree": families.len() as f64 == formula.round() }),
    })
}

fn logz(ctx: &Ctx) -> CliResult<RunOutput> {
    let p = &ctx.config.params;
    let (n, m, k) = (p.usize("n"), p.usize("m"), p.usize("k"));
    if k > n.min(m) {
        return Err(CliError::Schema(format!("k = {k} exceeds min(n, m) = {}", n.min(m))));
    }
    let (mu, beta) = (p.real("mu"), p.real("beta"));
    let spec = weight_spec(p.text("weights").unwrap_or("log-gamma"), mu);
    let seed = ctx.config.seed;
    let (xs, ys) = rectangle_endpoints(n as i64, m as i64, k);
    let values = ctx.replicated(|r| {
        let env = Environment::new(derive_seed(seed, r as u64), spec)?;
        kpath_logz(&WeightGrid::rectangle(&env, beta, n, m), &xs, &ys, true)
    })?;
    let mut table = Table::new("", &["N", "m", "k", "beta", "mu", "replica", "seed", "log_z[nats]"]);
    for (r, v) in values.iter().enumerate() {
        table.push(vec![
            n.into(),
            m.into(),
            k.into(),
            beta.into(),
            mu.into(),
            r.into(),
            seed.into(),
            (*v).into(),
        ]);
    }
    let e = Estimate::from_samples(&values);
    Ok(RunOutput {
        tables: vec![table],
        results: json!({ "mean_log_z": e.mean, "stderr": e.stderr }),
    })
}

fn last_passage(ctx: &Ctx) -> CliResult<RunOutput> {
    let p = &ctx.config.params;
    let (n, c) = (p.usize("n"), p.real("c"));
    check_budget(n, ctx.replicas(), c)?;
    let seed = ctx.config.seed;
    let values = ctx.replicated(|r| Ok(last_passage_replica(n, c, seed, r as u64)))?;
    let e = Estimate::from_samples(&values);
    let mut table = Table::new("", &["N", "c", "estimate", "stderr", "replicas", "seed", "limit"]);
    table.push(vec![
        n.into(),
        c.into(),
        e.mean.into(),
        e.stderr.into(),
        ctx.replicas().into(),
        seed.into(),
        rost_ell(c).into(),
    ]);
    Ok(RunOutput {
        tables: vec![table],
        results: json!({ "estimate": e.mean, "stderr": e.stderr, "limit": rost_ell(c) }),
    })
}

const FREE_ENERGY_PARAMS: &[Param] = &[
    positive("mu", 1e6, Some("2"), "shape of the inverse-gamma weights"),
    positive("c", 1e3, Some("1"), "endpoint slope: the path ends at (N, round(cN))"),
    int("n", 1, 100_000, Some("512"), "horizontal size N"),
    real("beta", 0.0, 1e3, Some("1"), "inverse temperature"),
    choice("weights", WEIGHTS, Some("log-gamma"), "environment distribution"),
];

pub static FREE_ENERGY: CommandSpec = CommandSpec {
    path: &["free-energy"],
    about: "Monte Carlo estimate of the point-to-point free energy (1/N) log Z",
    params: FREE_ENERGY_PARAMS,
    replicas: Some(50),
    run: free_energy,
};

const KPATH_PARAMS: &[Param] = &[
    int("n", 1, 100_000, None, "rectangle width"),
    int("m", 1, 100_000, None, "rectangle height"),
    int("k", 1, 100_000, Some("1"), "number of paths"),
];

pub static COMMANDS: &[&CommandSpec] = &[
    &CommandSpec {
        path: &["polymer", "sweep"],
        about: "Free-energy estimates over several sizes",
        params: &[
            positive("mu", 1e6, Some("2"), "shape of the inverse-gamma weights"),
            positive("c", 1e3, Some("1"), "endpoint slope"),
            Param {
                name: "ns",
                kind: Kind::IntList { len: None },
                default: Some("64,128,256"),
                help: "comma-separated sizes N",
            },
            real("beta", 0.0, 1e3, Some("1"), "inverse temperature"),
            choice("weights", WEIGHTS, Some("log-gamma"), "environment distribution"),
        ],
        replicas: Some(20),
        run: sweep,
    },
    &CommandSpec {
        path: &["polymer", "count"],
        about: "Number of non-intersecting path families in a rectangle, by product formula and by determinant",
        params: KPATH_PARAMS,
        replicas: None,
        run: count,
    },
    &CommandSpec {
        path: &["polymer", "enumerate"],
        about: "Explicit enumeration of non-intersecting path families, capped",
        params: &[
            int("n", 1, 64, None, "rectangle width"),
            int("m", 1, 64, None, "rectangle height"),
            int("k", 1, 64, Some("1"), "number of paths"),
            int("cap", 1, 50_000_000, Some("2000000"), "maximum number of families"),
        ],
        replicas: None,
        run: enumerate,
    },
    &CommandSpec {
        path: &["polymer", "logz"],
        about: "log partition function of k paths across a random rectangle, one row per replica",
        params: &[
            int("n", 1, 2000, None, "rectangle width"),
            int("m", 1, 2000, None, "rectangle height"),
            int("k", 1, 2000, Some("1"), "number of paths"),
            positive("mu", 1e6, Some("2"), "shape of the inverse-gamma weights"),
            real("beta", 0.0, 1e3, Some("1"), "inverse temperature"),
            choice("weights", WEIGHTS, Some("log-gamma"), "environment distribution"),
        ],
        replicas: Some(10),
        run: logz,
    },
    &CommandSpec {
        path: &["polymer", "last-passage"],
        about: "Exponential last-passage time (1/N) L against its limit (1 + sqrt c)^2",
        params: &[
            int("n", 1, 100_000, Some("600"), "horizontal size N"),
            positive("c", 1e3, Some("1"), "endpoint slope"),
        ],
        replicas: Some(20),
        run: last_passage,
    },
];
