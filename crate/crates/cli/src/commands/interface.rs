use super::{CommandSpec, Ctx};
use crate::error::CliResult;
use crate::output::{RunOutput, Table};
use crate::schema::{int, positive};
use nipoly::environment::{Environment, WeightSpec};
use nipoly::interface::{
    build_phi, gibbs_site_moments, grad_f, phi_inversion_residual, phi_site_moments, theta_min, InterfaceGrid,
};
use nipoly::limit_shapes::xi_ht;
use serde_json::json;

fn grid_rows(table: &mut Table, n: usize, mu: f64, seed: u64, grids: &[&InterfaceGrid]) {
    for i in 1..=n {
        for j in 1..=n {
            let mut row = vec![n.into(), mu.into(), seed.into(), i.into(), j.into()];
            row.extend(grids.iter().map(|g| g.get(i, j).into()));
            table.push(row);
        }
    }
}

fn phi(ctx: &Ctx) -> CliResult<RunOutput> {
    let p = &ctx.config.params;
    let (n, mu, seed) = (p.usize("n"), p.real("mu"), ctx.config.seed);
    let env = Environment::new(seed, WeightSpec::LogGamma(mu))?;
    let grid = build_phi(&env, n)?;
    let mut table = Table::new("", &["N", "mu", "seed", "i", "j", "phi"]);
    grid_rows(&mut table, n, mu, seed, &[&grid]);
    Ok(RunOutput {
        tables: vec![table],
        results: json!({ "inversion_residual": phi_inversion_residual(&env, n)? }),
    })
}

fn moments(ctx: &Ctx) -> CliResult<RunOutput> {
    let p = &ctx.config.params;
    let (n, mu, seed) = (p.usize("n"), p.real("mu"), ctx.config.seed);
    let m = phi_site_moments(n, mu, ctx.replicas(), seed)?;
    let mut table = Table::new("", &["N", "mu", "seed", "i", "j", "mean", "stderr"]);
    grid_rows(&mut table, n, mu, seed, &[&m.means, &m.stderr]);
    Ok(RunOutput {
        tables: vec![table],
        results: json!({ "samples": m.samples }),
    })
}

fn gibbs(ctx: &Ctx) -> CliResult<RunOutput> {
    let p = &ctx.config.params;
    let (n, mu, seed) = (p.usize("n"), p.real("mu"), ctx.config.seed);
    let r = gibbs_site_moments(n, mu, p.int("updates") as u64, seed)?;
    let mut table = Table::new("", &["N", "mu", "seed", "i", "j", "mean", "stderr"]);
    grid_rows(&mut table, n, mu, seed, &[&r.means, &r.stderr]);
    Ok(RunOutput {
        tables: vec![table],
        results: json!({
            "updates": r.updates,
            "acceptance": r.acceptance,
            "proposal_scale": r.scale,
            "max_autocorrelation_time_sweeps": r.max_iat,
        }),
    })
}

fn theta(ctx: &Ctx) -> CliResult<RunOutput> {
    let n = ctx.config.params.usize("n");
    let t = theta_min(n);
    let nf = n as f64;
    let mut table = Table::new("", &["N", "i", "j", "theta_min", "theta_min_over_N", "xi_ht"]);
    let mut worst = 0.0f64;
    for i in 1..=n {
        for j in 1..=n {
            let xi = xi_ht(i as f64 / nf, j as f64 / nf)?;
            worst = worst.max((t.get(i, j) / nf - xi).abs());
            table.push(vec![n.into(), i.into(), j.into(), t.get(i, j).into(), (t.get(i, j) / nf).into(), xi.into()]);
        }
    }
    let grad = grad_f(&t).values().iter().fold(0.0f64, |a, v| a.max(v.abs()));
    Ok(RunOutput {
        tables: vec![table],
        results: json!({ "max_gradient": grad, "sup_gap_to_limit": worst }),
    })
}

pub static COMMANDS: &[&CommandSpec] = &[
    &CommandSpec {
        path: &["interface", "phi"],
        about: "The log-gamma interface of one environment",
        params: &[
            int("n", 1, 64, Some("8"), "grid size N"),
            positive("mu", 1e8, Some("1.5"), "shape of the inverse-gamma weights"),
        ],
        replicas: None,
        run: phi,
    },
    &CommandSpec {
        path: &["interface", "moments"],
        about: "Per-site means of the interface over independent environments",
        params: &[
            int("n", 1, 32, Some("2"), "grid size N"),
            positive("mu", 1e8, Some("1.5"), "shape of the inverse-gamma weights"),
        ],
        replicas: Some(10_000),
        run: moments,
    },
    &CommandSpec {
        path: &["interface", "gibbs"],
        about: "Per-site means of the interface law sampled by Metropolis-within-Gibbs",
        params: &[
            int("n", 1, 32, Some("2"), "grid size N"),
            positive("mu", 1e8, Some("1.5"), "shape parameter"),
            int("updates", 1, 10_000_000_000, Some("1000000"), "single-site updates after tuning"),
        ],
        replicas: None,
        run: gibbs,
    },
    &CommandSpec {
        path: &["interface", "theta-min"],
        about: "Minimiser of the large-shape energy against its scaling limit",
        params: &[int("n", 1, 2000, Some("20"), "grid size N")],
        replicas: None,
        run: theta,
    },
];
