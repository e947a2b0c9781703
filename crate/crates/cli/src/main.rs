mod checkpoint;
mod commands;
mod config;
mod error;
mod output;
mod schema;

use clap::{Arg, ArgAction, ArgMatches, Command};
use commands::{CommandSpec, Ctx, GROUPS};
use config::{read_config_file, RunConfig, SETTING_KEYS};
use error::{CliError, CliResult};
use schema::Kind;
use nipoly::validation::{self, Faults, CRITERIA};
use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

fn value_arg(name: &'static str, help: &'static str) -> Arg {
    Arg::new(name).long(name).value_name("VALUE").help(help).allow_hyphen_values(true)
}

fn run_args() -> Vec<Arg> {
    vec![
        value_arg("seed", "base seed (default 0)"),
        value_arg("replicas", "number of independent replicas"),
        value_arg("out", "output directory (overrides NIPOLY_OUT)"),
        value_arg("format", "table format: csv or json"),
        value_arg("threads", "worker threads"),
        value_arg("config", "key=value config file; flags take precedence"),
        value_arg("halt-after", "stop after this many checkpointed replicas").hide(true),
    ]
}

fn leaf(spec: &'static CommandSpec) -> Command {
    let name = spec.path.last().expect("non-empty path");
    let mut cmd = Command::new(*name).about(spec.about).args(run_args());
    for p in spec.params {
        let help = match p.default {
            Some(d) => format!("{} [default: {d}]", p.help),
            None if matches!(p.kind, Kind::Text) => p.help.to_string(),
            None => format!("{} [required]", p.help),
        };
        cmd = cmd.arg(Arg::new(p.name).long(p.name).value_name("VALUE").help(help).allow_hyphen_values(true));
    }
    cmd
}

fn cli() -> Command {
    let mut root = Command::new("nipoly")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Non-intersecting polymers, interfaces and limit shapes")
        .subcommand_required(true)
        .arg_required_else_help(true);
    let registry = commands::registry();
    for spec in registry.iter().filter(|s| s.path.len() == 1) {
        root = root.subcommand(leaf(spec));
    }
    for (group, about) in GROUPS {
        let mut g = Command::new(group).about(about).subcommand_required(true);
        for spec in registry.iter().filter(|s| s.path.len() == 2 && s.path[0] == group) {
            g = g.subcommand(leaf(spec));
        }
        root = root.subcommand(g);
    }
    root.subcommand(
        Command::new("selftest")
            .about("Run the built-in acceptance checks")
            .arg(Arg::new("all").long("all").action(ArgAction::SetTrue).help("include the slow checks"))
            .arg(Arg::new("only").long("only").value_name("IDS").help("comma-separated criterion ids"))
            .arg(
                Arg::new("inject-fault")
                    .long("inject-fault")
                    .value_name("FAULT")
                    .value_parser(["digamma"])
                    .help("deliberately break a routine to confirm the checks catch it"),
            ),
    )
}

fn run_command(spec: &'static CommandSpec, m: &ArgMatches) -> CliResult<()> {
    let file = match m.get_one::<String>("config") {
        Some(path) => read_config_file(Path::new(path))?,
        None => BTreeMap::new(),
    };
    let mut flags = BTreeMap::new();
    for key in &SETTING_KEYS[1..] {
        if let Some(v) = m.get_one::<String>(key) {
            flags.insert(key.to_string(), v.clone());
        }
    }
    for p in spec.params {
        if let Some(v) = m.get_one::<String>(p.name) {
            flags.insert(p.name.to_string(), v.clone());
        }
    }
    let halt_after = match m.get_one::<String>("halt-after") {
        None => None,
        Some(s) => Some(s.parse().map_err(|_| CliError::Schema(format!("halt-after: bad count {s:?}")))?),
    };
    let config = RunConfig::build(&spec.name(), spec.params, spec.replicas, file, flags)?;
    if let Some(t) = config.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Io(e.to_string()))?;
    }
    let started = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs_f64()).unwrap_or(0.0);
    let clock = Instant::now();
    let output = (spec.run)(&Ctx { config: &config, halt_after })?;
    let manifest = output::write_run(&config, &output, started, clock.elapsed().as_secs_f64())?;
    let summary = output::summary(&config, &output.results);
    println!("{}", serde_json::to_string_pretty(&summary).expect("summary serialises"));
    eprintln!("wrote {} files to {}", manifest["outputs"].as_array().map_or(0, Vec::len) + 1, config.out.display());
    Ok(())
}

fn selftest(m: &ArgMatches) -> CliResult<bool> {
    let faults = Faults {
        digamma: m.get_one::<String>("inject-fault").is_some_and(|f| f == "digamma"),
    };
    let ids: Vec<u32> = match m.get_one::<String>("only") {
        Some(list) => list
            .split(',')
            .map(|s| {
                let id = s.trim().parse::<u32>().ok().filter(|id| validation::criterion(*id).is_some());
                id.ok_or_else(|| CliError::Schema(format!("only: unknown criterion {s:?}")))
            })
            .collect::<CliResult<_>>()?,
        None => CRITERIA.iter().filter(|c| c.fast || m.get_flag("all")).map(|c| c.id).collect(),
    };
    let mut all = true;
    for id in ids {
        let outcome = validation::run(id, &faults);
        println!("{}", outcome.line());
        all &= outcome.passed;
    }
    Ok(all)
}

fn dispatch(m: &ArgMatches) -> CliResult<ExitCode> {
    let (name, sub) = m.subcommand().expect("subcommand required");
    if name == "selftest" {
        return Ok(if selftest(sub)? { ExitCode::SUCCESS } else { ExitCode::FAILURE });
    }
    let (path, leaf_m) = match sub.subcommand() {
        Some((child, cm)) => (vec![name, child], cm),
        None => (vec![name], sub),
    };
    let spec = commands::find(&path).expect("clap only accepts registered commands");
    run_command(spec, leaf_m)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let matches = cli().get_matches();
    match dispatch(&matches) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", e.record());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
