//! Subcommand registry.

mod interface;
mod polymer;
mod shapes;
mod szego;

use crate::checkpoint::Checkpoint;
use crate::config::RunConfig;
use crate::error::CliResult;
use crate::output::RunOutput;
use crate::schema::Param;

/// Everything a command needs while running.
pub struct Ctx<'a> {
    pub config: &'a RunConfig,
    pub halt_after: Option<usize>,
}

impl Ctx<'_> {
    pub fn replicas(&self) -> usize {
        self.config.replicas.expect("command declares replicas")
    }

    /// Runs `f` over all replicas with checkpointing.
    pub fn replicated<F>(&self, f: F) -> CliResult<Vec<f64>>
    where
        F: Fn(usize) -> nipoly::Result<f64> + Sync,
    {
        let checkpoint = Checkpoint::open(self.config)?;
        if checkpoint.completed() > 0 {
            eprintln!("resuming: {} of {} replicas already done", checkpoint.completed(), self.replicas());
        }
        checkpoint.run(self.replicas(), self.halt_after, f)
    }
}

pub struct CommandSpec {
    /// Subcommand path, e.g. `["polymer", "count"]`.
    pub path: &'static [&'static str],
    pub about: &'static str,
    pub params: &'static [Param],
    pub replicas: Option<usize>,
    pub run: fn(&Ctx) -> CliResult<RunOutput>,
}

impl CommandSpec {
    pub fn name(&self) -> String {
        self.path.join(" ")
    }
}

pub fn registry() -> Vec<&'static CommandSpec> {
    let mut all: Vec<&'static CommandSpec> = vec![&polymer::FREE_ENERGY, &szego::SZEGO];
    all.extend(polymer::COMMANDS);
    all.extend(interface::COMMANDS);
    all.extend(shapes::COMMANDS);
    all
}

/// Groups that hold further subcommands.
pub const GROUPS: [(&str, &str); 3] = [
    ("polymer", "Partition functions, counts and free energies of path families"),
    ("interface", "Interfaces built from polymer partition functions"),
    ("shapes", "Limit shapes, random-matrix laws and the bead surface tension"),
];

pub fn find(path: &[&str]) -> Option<&'static CommandSpec> {
    registry().into_iter().find(|c| c.path == path)
}
