use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use synpid_core::distributions::{JointDistribution, Symbol, VariableSpec, Weighting};

use crate::{Error, Result};

pub const SNAPSHOT_VERSION: u32 = 1;

/// JSON form of a [`JointDistribution`]. Counted distributions carry
/// `counts`; analytic ones carry `probabilities`. Loading re-validates the
/// tuples and that `total` equals the sum of weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionSnapshot {
    pub version: u32,
    pub weighting: Weighting,
    pub variables: Vec<VariableSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<(Vec<Symbol>, u64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probabilities: Option<Vec<(Vec<Symbol>, f64)>>,
    pub total: f64,
}

impl DistributionSnapshot {
    pub fn from_distribution(dist: &JointDistribution) -> Self {
        let (counts, probabilities) = match dist.weighting() {
            Weighting::Counts => (
                Some(dist.iter().map(|(t, w)| (t, w as u64)).collect()),
                None,
            ),
            Weighting::Probabilities => (None, Some(dist.iter().collect())),
        };
        Self {
            version: SNAPSHOT_VERSION,
            weighting: dist.weighting(),
            variables: dist.variables().to_vec(),
            counts,
            probabilities,
            total: dist.total(),
        }
    }

    pub fn into_distribution(self) -> Result<JointDistribution> {
        if self.version != SNAPSHOT_VERSION {
            return Err(Error::Input(format!(
                "unsupported snapshot version {}",
                self.version
            )));
        }
        let dist = match (self.weighting, self.counts, self.probabilities) {
            (Weighting::Counts, Some(counts), None) => {
                JointDistribution::from_counts(self.variables, counts)?
            }
            (Weighting::Probabilities, None, Some(p)) => {
                JointDistribution::from_probabilities(self.variables, p)?
            }
            _ => {
                return Err(Error::Input(
                    "snapshot must carry exactly the table matching its weighting".into(),
                ))
            }
        };
        if (dist.total() - self.total).abs() > 1e-9 * self.total.max(1.0) {
            return Err(Error::Input(format!(
                "snapshot total {} does not match the sum of weights {}",
                self.total,
                dist.total()
            )));
        }
        Ok(dist)
    }
}

pub fn save_snapshot(dist: &JointDistribution, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(&DistributionSnapshot::from_distribution(dist))?;
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn load_snapshot(path: &Path) -> Result<JointDistribution> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str::<DistributionSnapshot>(&text)?.into_distribution()
}
