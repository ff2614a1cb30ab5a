use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use synpid_core::dynamics::{ca_local_profile, LocalProfile, Measure};
use synpid_core::eca::decode_rule;

use super::{pooled_distributions, simulate, ExperimentConfig, GridFormat};
use crate::io::{create, write_profile_csv, write_profile_pgm};
use crate::{Error, Result};

/// Local measures that can be exported for a CA run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileMeasure {
    LocalAis,
    LocalTeLeft,
    LocalTeRight,
    LocalSeparable,
}

impl ProfileMeasure {
    pub const ALL: [Self; 4] = [
        Self::LocalAis,
        Self::LocalTeLeft,
        Self::LocalTeRight,
        Self::LocalSeparable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::LocalAis => "local_ais",
            Self::LocalTeLeft => "local_te_left",
            Self::LocalTeRight => "local_te_right",
            Self::LocalSeparable => "local_separable",
        }
    }

    pub fn measure(self) -> Measure {
        let te = |source: &str| Measure::TransferEntropy {
            source: source.into(),
            conditionals: Vec::new(),
        };
        match self {
            Self::LocalAis => Measure::ActiveInfoStorage,
            Self::LocalTeLeft => te("left"),
            Self::LocalTeRight => te("right"),
            Self::LocalSeparable => Measure::Separable,
        }
    }
}

impl FromStr for ProfileMeasure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown measure `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileOutput {
    pub profiles: Vec<LocalProfile>,
    pub files: Vec<PathBuf>,
}

/// Writes the CA run with seed `base_seed` and one CSV and one 16-bit PGM per
/// measure into `out_dir`. Probabilities come from the distribution pooled
/// over all `config.runs` runs; the displayed run is the first of them.
///
/// File names: `rule<R>_ca.pgm`, `rule<R>_<measure>.csv`,
/// `rule<R>_<measure>.pgm`.
pub fn export_local_profiles(
    rule: u32,
    config: &ExperimentConfig,
    measures: &[ProfileMeasure],
    out_dir: &Path,
) -> Result<ProfileOutput> {
    let config = ExperimentConfig {
        rules: vec![rule],
        ..config.clone()
    };
    config.validate()?;
    let table = decode_rule(rule)?;
    let dist = pooled_distributions(&table, &config, &[config.k])?.remove(0);
    let grid = simulate(&table, &config, 0)?;
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;

    let mut files = Vec::new();
    let grid_path = out_dir.join(format!("rule{rule}_ca.pgm"));
    GridFormat::Pgm.write_file(&grid, &grid_path)?;
    files.push(grid_path);

    let profiles = measures
        .par_iter()
        .map(|m| {
            Ok(ca_local_profile(
                &dist,
                m.name(),
                &m.measure(),
                &grid,
                config.k,
            )?)
        })
        .collect::<Result<Vec<_>>>()?;
    for (m, profile) in measures.iter().zip(&profiles) {
        let csv_path = out_dir.join(format!("rule{rule}_{}.csv", m.name()));
        write_profile_csv(profile, create(&csv_path)?).map_err(|e| Error::io(&csv_path, e))?;
        let pgm_path = out_dir.join(format!("rule{rule}_{}.pgm", m.name()));
        write_profile_pgm(profile, create(&pgm_path)?).map_err(|e| Error::io(&pgm_path, e))?;
        files.push(csv_path);
        files.push(pgm_path);
    }
    Ok(ProfileOutput { profiles, files })
}
