//! Replica-level checkpoints so interrupted runs resume where they stopped.
//!
//! The file starts with the configuration fingerprint; every further line
//! is `replica,bits` with the value's IEEE bits in hex, so resumed results
//! are bit-identical to uninterrupted ones.

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

pub struct Checkpoint {
    path: PathBuf,
    done: BTreeMap<usize, f64>,
}

impl Checkpoint {
    pub fn open(config: &RunConfig) -> CliResult<Checkpoint> {
        std::fs::create_dir_all(&config.out)?;
        let path = config.out.join(format!("{}.checkpoint", config.stem()));
        let header = format!("fingerprint {}", config.fingerprint());
        let mut done = BTreeMap::new();
        let mut fresh = true;
        if let Ok(text) = std::fs::read_to_string(&path) {
            let mut lines = text.lines();
            if lines.next() == Some(header.as_str()) {
                fresh = false;
                for line in lines {
                    // A torn final line from an interrupted write is ignored.
                    let parsed = line
                        .split_once(',')
                        .and_then(|(i, b)| Some((i.parse::<usize>().ok()?, u64::from_str_radix(b, 16).ok()?)));
                    if let Some((i, bits)) = parsed {
                        done.insert(i, f64::from_bits(bits));
                    }
                }
            }
        }
        if fresh {
            std::fs::write(&path, format!("{header}\n"))?;
        }
        Ok(Checkpoint { path, done })
    }

    pub fn completed(&self) -> usize {
        self.done.len()
    }

    fn append(&mut self, results: &[(usize, f64)]) -> CliResult<()> {
        let mut f = std::fs::OpenOptions::new().append(true).open(&self.path)?;
        let mut buf = String::new();
        for &(i, v) in results {
            buf.push_str(&format!("{i},{:016x}\n", v.to_bits()));
            self.done.insert(i, v);
        }
        f.write_all(buf.as_bytes())?;
        f.sync_data()?;
        Ok(())
    }

    /// Computes the missing replicas in chunks, checkpointing after each,
    /// and returns all values in replica order. With `halt_after`, stops
    /// with [`CliError::Halted`] once that many replicas are stored.
    pub fn run<F>(mut self, replicas: usize, halt_after: Option<usize>, f: F) -> CliResult<Vec<f64>>
    where
        F: Fn(usize) -> nipoly::Result<f64> + Sync,
    {
        let todo: Vec<usize> = (0..replicas).filter(|i| !self.done.contains_key(i)).collect();
        let chunk = (4 * rayon::current_num_threads()).max(4);
        for block in todo.chunks(chunk) {
            if let Some(h) = halt_after {
                if self.done.len() >= h {
                    return Err(CliError::Halted { done: self.done.len() });
                }
            }
            let results: Vec<(usize, f64)> = block
                .par_iter()
                .map(|&i| f(i).map(|v| (i, v)))
                .collect::<nipoly::Result<_>>()?;
            self.append(&results)?;
        }
        let values = (0..replicas).map(|i| self.done[&i]).collect();
        std::fs::remove_file(&self.path)?;
        Ok(values)
    }
}
