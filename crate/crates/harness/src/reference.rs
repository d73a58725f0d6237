//! Empirical optimal hypervolume values.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Algorithm, RunConfig};
use crate::error::{HarnessError, Result};
use crate::run::run_single;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HvReferenceEntry {
    pub problem: String,
    pub p: usize,
    pub r: [f64; 2],
    pub value: f64,
    /// Number of runs the value is the maximum over.
    pub seeds: u64,
    /// MO-feval budget of each run.
    pub budget: u64,
}

impl HvReferenceEntry {
    fn matches(&self, problem: &str, p: usize, r: [f64; 2]) -> bool {
        self.problem == problem && self.p == p && self.r == r
    }
}

/// Best known `HV*_p` per (problem, p, r). Stored values only ever increase.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct HvReferenceStore {
    pub entries: Vec<HvReferenceEntry>,
}

impl HvReferenceStore {
    /// Loads a store; a missing file gives an empty store.
    pub fn load(path: &Path) -> Result<Self> {
        match std::fs::read_to_string(path) {
            Ok(text) => serde_json::from_str(&text).map_err(|e| HarnessError::json(path, e)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Self::default()),
            Err(e) => Err(HarnessError::io(path, e)),
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut file = std::fs::File::create(path).map_err(|e| HarnessError::io(path, e))?;
        serde_json::to_writer_pretty(&mut file, self).map_err(|e| HarnessError::json(path, e))?;
        writeln!(file).map_err(|e| HarnessError::io(path, e))
    }

    pub fn get(&self, problem: &str, p: usize, r: [f64; 2]) -> Option<&HvReferenceEntry> {
        self.entries.iter().find(|e| e.matches(problem, p, r))
    }

    /// Inserts `entry` unless an entry with at least its value exists. Returns whether the
    /// store changed.
    pub fn insert(&mut self, entry: HvReferenceEntry) -> bool {
        match self
            .entries
            .iter_mut()
            .find(|e| e.matches(&entry.problem, entry.p, entry.r))
        {
            Some(old) if old.value >= entry.value => false,
            Some(old) => {
                *old = entry;
                true
            }
            None => {
                self.entries.push(entry);
                true
            }
        }
    }
}

/// Maximum final HV over `seeds` UHVEA-gb runs of `budget` MO-fevals each.
pub fn compute_hv_reference(
    problem: &str,
    p: usize,
    r: [f64; 2],
    budget: u64,
    seeds: u64,
) -> Result<HvReferenceEntry> {
    let mut cfg = RunConfig::new(Algorithm::UhveaGb, problem, p, budget);
    cfg.r = r;
    cfg.trace_stride = u64::MAX;
    let values: Vec<f64> = (0..seeds)
        .into_par_iter()
        .map(|s| run_single(&cfg, s).map(|b| b.metrics.hv))
        .collect::<Result<_>>()?;
    Ok(HvReferenceEntry {
        problem: cfg.benchmark()?.id(),
        p,
        r,
        value: values.into_iter().fold(f64::NEG_INFINITY, f64::max),
        seeds,
        budget,
    })
}
