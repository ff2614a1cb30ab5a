use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::imin::{IminEstimator, LocalRedundancy};
use super::lattice::Antichain;
use crate::distributions::{JointDistribution, Symbol};
use crate::Result;

/// Average and per-configuration local redundancy of one node.
#[derive(Debug, Clone, PartialEq)]
pub struct Localized {
    pub average: f64,
    /// One entry per support tuple of the distribution.
    pub local: Vec<(Vec<Symbol>, LocalRedundancy)>,
}

/// A redundancy measure with a candidate localization.
pub trait RedundancyMeasure {
    fn name(&self) -> &str;

    fn localize(
        &self,
        dist: &JointDistribution,
        target: usize,
        sources: &[Vec<usize>],
        node: &Antichain,
    ) -> Result<Localized>;
}

/// `I_min` localized through the minimizing source set.
#[derive(Debug, Clone, Copy, Default)]
pub struct Imin;

impl RedundancyMeasure for Imin {
    fn name(&self) -> &str {
        "i_min"
    }

    fn localize(
        &self,
        dist: &JointDistribution,
        target: usize,
        sources: &[Vec<usize>],
        node: &Antichain,
    ) -> Result<Localized> {
        let est = IminEstimator::new(dist, target, sources)?;
        let local = dist
            .iter()
            .map(|(tuple, _)| {
                let value = est.local(node, &tuple)?;
                Ok((tuple, value))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Localized {
            average: est.i_min(node)?,
            local,
        })
    }
}

/// Local and average redundancy at one parameter value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub parameter: f64,
    pub average: f64,
    /// Aligned with [`DiscontinuityReport::observations`]; `None` where the
    /// observation is outside this distribution's support.
    pub local: Vec<Option<LocalRedundancy>>,
    /// Some observation's localization is not unique here.
    pub non_unique: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscontinuityReport {
    pub measure: alloc::string::String,
    pub observations: Vec<Vec<Symbol>>,
    pub points: Vec<ScanPoint>,
    /// Per observation, the largest change of its local value between
    /// consecutive parameters where both are defined.
    pub local_jumps: Vec<f64>,
    /// Largest change of the average between consecutive parameters.
    pub average_jump: f64,
}

impl DiscontinuityReport {
    pub fn max_local_jump(&self) -> f64 {
        self.local_jumps.iter().copied().fold(0.0, f64::max)
    }

    pub fn non_unique_parameters(&self) -> Vec<f64> {
        self.points
            .iter()
            .filter(|p| p.non_unique)
            .map(|p| p.parameter)
            .collect()
    }
}

/// Evaluates a localized redundancy measure across a parameterized family of
/// distributions and reports how far local values and the average move
/// between neighbouring parameters. `parameters` is scanned in the order
/// given.
pub fn discontinuity_scan<M, F>(
    measure: &M,
    family: F,
    parameters: &[f64],
    target: usize,
    sources: &[Vec<usize>],
    node: &Antichain,
) -> Result<DiscontinuityReport>
where
    M: RedundancyMeasure + ?Sized,
    F: Fn(f64) -> Result<JointDistribution>,
{
    let mut localized = Vec::with_capacity(parameters.len());
    for &p in parameters {
        localized.push(measure.localize(&family(p)?, target, sources, node)?);
    }
    let mut observations: Vec<Vec<Symbol>> = localized
        .iter()
        .flat_map(|l| l.local.iter().map(|(t, _)| t.clone()))
        .collect();
    observations.sort();
    observations.dedup();

    let points: Vec<ScanPoint> = parameters
        .iter()
        .zip(&localized)
        .map(|(&parameter, l)| {
            let local: Vec<Option<LocalRedundancy>> = observations
                .iter()
                .map(|o| l.local.iter().find(|(t, _)| t == o).map(|(_, v)| *v))
                .collect();
            ScanPoint {
                parameter,
                average: l.average,
                non_unique: local.iter().flatten().any(|v| v.tie),
                local,
            }
        })
        .collect();

    let mut local_jumps = alloc::vec![0.0f64; observations.len()];
    let mut average_jump = 0.0f64;
    for pair in points.windows(2) {
        average_jump = average_jump.max((pair[1].average - pair[0].average).abs());
        for (jump, (a, b)) in local_jumps
            .iter_mut()
            .zip(pair[0].local.iter().zip(&pair[1].local))
        {
            if let (Some(a), Some(b)) = (a, b) {
                *jump = jump.max((b.value - a.value).abs());
            }
        }
    }
    Ok(DiscontinuityReport {
        measure: alloc::string::String::from(measure.name()),
        observations,
        points,
        local_jumps,
        average_jump,
    })
}
