//! Acceptance gate. Runs the criteria one after another so the reported
//! runtimes are not distorted by each other, prints one line per criterion,
//! then the detailed report of every failure. Positional numeric arguments
//! restrict the run to those criteria.

use nipoly::validation::{run, Faults, CRITERIA};
use std::process::ExitCode;

fn main() -> ExitCode {
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = Vec::new();
    let mut count = 0;
    for c in CRITERIA.iter().filter(|c| only.is_empty() || only.contains(&c.id)) {
        let outcome = run(c.id, &Faults::default());
        println!("{}", outcome.line());
        count += 1;
        if !outcome.passed {
            failed.push(outcome);
        }
    }
    for outcome in &failed {
        println!("\n{}", outcome.report());
    }
    println!("\nacceptance: {} of {count} criteria passed", count - failed.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
