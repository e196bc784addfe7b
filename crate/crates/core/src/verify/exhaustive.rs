use std::collections::BTreeSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::space::{enumerate_class, EnumerationStats, SearchSpace};
use super::VerifyError;
use crate::graph::{decode_graph6, encode_graph6, Graph};
use crate::spectral::{hong_shu_fang_bound, spectral_radius, SpectralConfig};

/// Number of shards the full mask range is cut into, independent of the
/// thread count so checkpoints and results do not depend on it.
pub const SHARD_COUNT: usize = 256;

/// Running maximum of `rho` with every labelling inside the tolerance band
/// and the best value below it.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Tally {
    pub stats: EnumerationStats,
    pub rho_max: Option<f64>,
    /// `(rho, mask)` for every labelling with `rho >= rho_max - band`.
    pub band: Vec<(f64, u64)>,
    /// Largest `rho` strictly below the band.
    pub runner_up: Option<f64>,
}

fn max_opt(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Tally {
    /// Lowest `rho` that can still change the outcome.
    pub fn relevance_floor(&self) -> f64 {
        self.runner_up.unwrap_or(f64::NEG_INFINITY)
    }

    pub fn offer(&mut self, rho: f64, mask: u64, band: f64) {
        match self.rho_max {
            Some(top) if rho <= top => {
                if rho >= top - band {
                    self.band.push((rho, mask));
                } else {
                    self.runner_up = max_opt(self.runner_up, Some(rho));
                }
            }
            _ => {
                self.rho_max = Some(rho);
                self.band.push((rho, mask));
                self.rebalance(band);
            }
        }
    }

    fn rebalance(&mut self, band: f64) {
        let Some(top) = self.rho_max else { return };
        let mut dropped = None;
        self.band.retain(|&(r, _)| {
            let keep = r >= top - band;
            if !keep {
                dropped = max_opt(dropped, Some(r));
            }
            keep
        });
        self.runner_up = max_opt(self.runner_up, dropped);
        self.band.sort_by_key(|&(_, m)| m);
    }

    /// Associative and commutative merge.
    pub fn merge(mut self, other: Tally, band: f64) -> Tally {
        self.stats.merge(&other.stats);
        self.rho_max = max_opt(self.rho_max, other.rho_max);
        self.runner_up = max_opt(self.runner_up, other.runner_up);
        self.band.extend(other.band);
        self.rebalance(band);
        self
    }
}

/// Enumerates one shard. Graphs whose Hong–Shu–Fang bound lies below the
/// current runner-up cannot affect the tally and skip the eigenvalue.
pub fn run_shard(space: &SearchSpace, cfg: &SpectralConfig, band: f64) -> Result<Tally, VerifyError> {
    let mut tally = Tally::default();
    let mut failure = None;
    let f = space.filter;
    tally.stats = enumerate_class(space, |mask, g| {
        if failure.is_some() {
            return;
        }
        if let Ok(bound) = hong_shu_fang_bound(f.n, g.size(), f.delta) {
            if bound + band < tally.relevance_floor() {
                return;
            }
        }
        match spectral_radius(g, cfg) {
            Ok(rho) => tally.offer(rho, mask, band),
            Err(e) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e.into()),
        None => Ok(tally),
    }
}

/// One completed shard as persisted in the checkpoint file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShardRecord {
    pub range: [u64; 2],
    pub examined: u64,
    pub local_max: Option<f64>,
    pub maximizers: Vec<String>,
    pub runner_up: Option<f64>,
    pub stats: EnumerationStats,
}

impl ShardRecord {
    fn from_tally(space: &SearchSpace, t: &Tally) -> Result<Self, VerifyError> {
        let n = space.filter.n;
        let maximizers = t
            .band
            .iter()
            .map(|&(_, m)| Graph::from_pair_mask(n, m).map(|g| encode_graph6(&g)))
            .collect::<Result<_, _>>()?;
        Ok(ShardRecord {
            range: [space.lo, space.hi],
            examined: t.stats.members,
            local_max: t.rho_max,
            maximizers,
            runner_up: t.runner_up,
            stats: t.stats,
        })
    }

    /// Rebuilds the tally, recomputing every `rho` from the stored graphs.
    fn to_tally(&self, cfg: &SpectralConfig, band: f64) -> Result<Tally, VerifyError> {
        let mut t = Tally { stats: self.stats, runner_up: self.runner_up, ..Tally::default() };
        for g6 in &self.maximizers {
            let g = decode_graph6(g6)?;
            let mask = g.pair_mask().ok_or_else(|| VerifyError::Checkpoint(format!("graph {g6} too large")))?;
            let rho = spectral_radius(&g, cfg)?;
            t.rho_max = max_opt(t.rho_max, Some(rho));
            t.band.push((rho, mask));
        }
        t.rebalance(band);
        Ok(t)
    }
}

fn load_checkpoint(path: &Path) -> Result<Vec<ShardRecord>, VerifyError> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(VerifyError::Io(format!("{}: {e}", path.display()))),
    };
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| VerifyError::Io(format!("{}: {e}", path.display())))?;
        if line.trim().is_empty() {
            continue;
        }
        // A torn final line from an interrupted write is dropped.
        match serde_json::from_str::<ShardRecord>(&line) {
            Ok(r) => out.push(r),
            Err(e) => log_torn_line(path, i + 1, &e),
        }
    }
    Ok(out)
}

fn log_torn_line(path: &Path, line: usize, e: &serde_json::Error) {
    eprintln!("warning: ignoring unreadable checkpoint line {line} of {}: {e}", path.display());
}

#[derive(Clone, Debug, Default)]
pub struct ExhaustiveOptions<'a> {
    pub checkpoint: Option<&'a Path>,
    /// Stop after this many new shards (simulates an interrupted run).
    pub shard_budget: Option<usize>,
}

/// Sweeps the whole space in [`SHARD_COUNT`] shards on the current rayon
/// pool, resuming from and appending to the checkpoint when one is given.
pub fn run_exhaustive(
    space: &SearchSpace,
    cfg: &SpectralConfig,
    band: f64,
    opts: &ExhaustiveOptions,
) -> Result<Tally, VerifyError> {
    let shards = space.shards(SHARD_COUNT);
    let mut done: Vec<Tally> = Vec::new();
    let mut finished: BTreeSet<[u64; 2]> = BTreeSet::new();
    if let Some(path) = opts.checkpoint {
        let planned: BTreeSet<[u64; 2]> = shards.iter().map(|s| [s.lo, s.hi]).collect();
        for rec in load_checkpoint(path)? {
            if planned.contains(&rec.range) && finished.insert(rec.range) {
                done.push(rec.to_tally(cfg, band)?);
            }
        }
    }
    let mut todo: Vec<&SearchSpace> = shards.iter().filter(|s| !finished.contains(&[s.lo, s.hi])).collect();
    let interrupted = opts.shard_budget.is_some_and(|b| b < todo.len());
    if let Some(budget) = opts.shard_budget {
        todo.truncate(budget);
    }
    let sink = match opts.checkpoint {
        Some(path) => Some(Mutex::new(
            OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| VerifyError::Io(format!("{}: {e}", path.display())))?,
        )),
        None => None,
    };
    let fresh: Vec<Tally> = todo
        .par_iter()
        .map(|s| {
            let t = run_shard(s, cfg, band)?;
            if let Some(sink) = &sink {
                let line = serde_json::to_string(&ShardRecord::from_tally(s, &t)?)
                    .map_err(|e| VerifyError::Checkpoint(e.to_string()))?;
                let mut f = sink.lock().expect("checkpoint lock");
                writeln!(f, "{line}").and_then(|_| f.flush()).map_err(|e| VerifyError::Io(e.to_string()))?;
            }
            Ok(t)
        })
        .collect::<Result<_, VerifyError>>()?;
    if interrupted {
        return Err(VerifyError::Incomplete { done: finished.len() + fresh.len(), total: shards.len() });
    }
    Ok(done.into_iter().chain(fresh).fold(Tally::default(), |acc, t| acc.merge(t, band)))
}
