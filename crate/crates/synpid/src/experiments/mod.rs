//! End-to-end pipelines over elementary cellular automata.
//!
//! Run `i` of a batch uses seed `base_seed + i`. Runs are simulated and
//! counted in parallel; per-run distributions are merged, and since merging
//! adds integer counts and stores entries sorted, results do not depend on
//! thread count or scheduling.

mod or_demo;
mod profile;
mod table1;

pub use or_demo::{or_discontinuity, or_distribution, run_or_demo, OrDemo, OrDemoRow};
pub use profile::{export_local_profiles, ProfileMeasure, ProfileOutput};
pub use table1::{run_table1, RuleRow, TableReport};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use synpid_core::distributions::{Counter, JointDistribution};
use synpid_core::eca::{ca_variables, decode_rule, run, RuleTable, SpacetimeGrid};

use crate::{Error, Result};

/// Output format of a raw CA grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridFormat {
    Pgm,
    Csv,
}

/// Batch parameters. Defaults: 100 runs of 200 cells for 200 time steps,
/// `k = 16`, rules 18, 22, 30, 54 and 110.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub rules: Vec<u32>,
    pub runs: usize,
    pub width: usize,
    pub steps: usize,
    pub k: usize,
    pub base_seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            rules: vec![18, 22, 30, 54, 110],
            runs: 100,
            width: 200,
            steps: 200,
            k: 16,
            base_seed: 0,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::Config("runs must be at least 1".into()));
        }
        if self.k == 0 {
            return Err(Error::Config("k must be at least 1".into()));
        }
        if self.steps <= self.k {
            return Err(Error::Config(format!(
                "steps ({}) must exceed k ({})",
                self.steps, self.k
            )));
        }
        if self.width < 3 {
            return Err(Error::Config("width must be at least 3".into()));
        }
        for &rule in &self.rules {
            decode_rule(rule)?;
        }
        Ok(())
    }

    pub fn seeds(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.runs as u64).map(|i| self.base_seed.wrapping_add(i))
    }
}

/// Simulates one run of the batch.
pub fn simulate(
    rule: &RuleTable,
    config: &ExperimentConfig,
    run_index: usize,
) -> Result<SpacetimeGrid> {
    let seed = config.base_seed.wrapping_add(run_index as u64);
    Ok(run(rule, config.width, config.steps, seed)?)
}

/// Pools the CA observations of every run into one distribution per
/// requested history length, each over [`ca_variables`].
pub fn pooled_distributions(
    rule: &RuleTable,
    config: &ExperimentConfig,
    ks: &[usize],
) -> Result<Vec<JointDistribution>> {
    let empty = ks
        .iter()
        .map(|&k| Ok(JointDistribution::empty(ca_variables(k)?)?))
        .collect::<Result<Vec<_>>>()?;
    (0..config.runs)
        .into_par_iter()
        .map(|i| {
            let grid = simulate(rule, config, i)?;
            ks.iter()
                .map(|&k| {
                    let mut counter = Counter::new(ca_variables(k)?)?;
                    for s in grid.samples(k)? {
                        counter.add(&s.values)?;
                    }
                    Ok(counter.finish())
                })
                .collect::<Result<Vec<_>>>()
        })
        .try_reduce(
            || empty.clone(),
            |a, b| {
                a.iter()
                    .zip(&b)
                    .map(|(x, y)| Ok(x.merge(y)?))
                    .collect::<Result<Vec<_>>>()
            },
        )
}
