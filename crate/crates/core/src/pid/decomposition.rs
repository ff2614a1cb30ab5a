use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::imin::IminEstimator;
use super::lattice::{build_lattice, Antichain, RedundancyLattice};
use crate::distributions::{avg_mi, JointDistribution};
use crate::dynamics::{DynamicsConfig, ResolvedConfig};
use crate::{Error, Result};

/// Möbius inversion over the lattice:
/// `I_∂(α) = I_∩(α) - sum_{β ≺ α} I_∂(β)`, accumulated in index order (a
/// linear extension of the lattice).
pub fn partial_terms(lattice: &RedundancyLattice, i_cap: &[f64]) -> Result<Vec<f64>> {
    if i_cap.len() != lattice.len() {
        return Err(Error::InvalidConfig(alloc::format!(
            "{} redundancy values for a lattice of {} nodes",
            i_cap.len(),
            lattice.len()
        )));
    }
    let mut partial = vec![0.0; lattice.len()];
    for (node, &cap) in i_cap.iter().enumerate() {
        let below: f64 = lattice
            .strictly_below(node)
            .iter()
            .map(|&b| partial[b])
            .sum();
        partial[node] = cap - below;
    }
    Ok(partial)
}

/// Redundancy and PI-term of one lattice node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeTerm {
    pub antichain: Antichain,
    pub i_cap: f64,
    pub i_partial: f64,
}

/// Full `I_min` decomposition of the information that `sources` carry about
/// one destination.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PidDecomposition {
    /// Source names; source `i` prints as `i + 1` in node labels.
    pub sources: Vec<String>,
    /// History length when the first source is a destination past state.
    pub k: Option<usize>,
    /// `I(X; A_1, ..., A_r)` computed directly from the distribution.
    pub total: f64,
    /// Nodes in lattice index order.
    pub nodes: Vec<NodeTerm>,
    /// Modified information: PI-terms of nodes whose sets all have more than
    /// one source.
    pub modified: f64,
    /// PI-terms of nodes containing at least one single-source set.
    pub non_modified: f64,
    /// `hierarchy[o - 1]` is the order-`o` term `I_∂^(o)`.
    pub hierarchy: Vec<f64>,
}

/// Order-`o` terms: the sum of PI-terms over nodes whose smallest set has
/// exactly `o` sources, for `o = 1..=r`.
pub fn hierarchy_terms(decomposition: &PidDecomposition) -> Vec<f64> {
    order_sums(&decomposition.nodes, decomposition.sources.len())
}

fn order_sums(nodes: &[NodeTerm], r: usize) -> Vec<f64> {
    let mut terms = vec![0.0; r];
    for node in nodes {
        terms[node.antichain.min_size() - 1] += node.i_partial;
    }
    terms
}

/// Decomposes `I(target; sources)` with `I_min` as the redundancy measure.
/// Each source is a group of variables treated jointly.
pub fn decompose(
    dist: &JointDistribution,
    target: usize,
    sources: &[Vec<usize>],
    names: Vec<String>,
) -> Result<PidDecomposition> {
    if names.len() != sources.len() {
        return Err(Error::InvalidConfig(String::from(
            "one name per source is required",
        )));
    }
    let estimator = IminEstimator::new(dist, target, sources)?;
    let lattice = build_lattice(sources.len())?;
    let i_cap = lattice
        .nodes()
        .iter()
        .map(|node| estimator.i_min(node))
        .collect::<Result<Vec<f64>>>()?;
    let partial = partial_terms(&lattice, &i_cap)?;
    let all: Vec<usize> = sources.iter().flatten().copied().collect();
    let total = avg_mi(dist, &[target], &all, &[])?;

    let nodes: Vec<NodeTerm> = lattice
        .nodes()
        .iter()
        .zip(i_cap.iter().zip(&partial))
        .map(|(a, (&i_cap, &i_partial))| NodeTerm {
            antichain: a.clone(),
            i_cap,
            i_partial,
        })
        .collect();
    let modified = nodes
        .iter()
        .filter(|n| n.antichain.min_size() > 1)
        .map(|n| n.i_partial)
        .sum();
    let non_modified = nodes
        .iter()
        .filter(|n| n.antichain.min_size() == 1)
        .map(|n| n.i_partial)
        .sum();
    let hierarchy = order_sums(&nodes, sources.len());
    Ok(PidDecomposition {
        sources: names,
        k: None,
        total,
        nodes,
        modified,
        non_modified,
        hierarchy,
    })
}

/// Decomposes `I(X'; X^(k), Y_1, ..., Y_g)` with the destination past state
/// as source 1 and the configured sources after it, and reports the modified
/// information `M_X`.
pub fn modified_information(
    dist: &JointDistribution,
    config: &DynamicsConfig,
) -> Result<PidDecomposition> {
    let r = ResolvedConfig::resolve(dist, config)?;
    let mut groups = vec![vec![r.history]];
    groups.extend(r.sources.iter().map(|&s| vec![s]));
    let names = groups
        .iter()
        .map(|g| dist.variables()[g[0]].name.clone())
        .collect();
    let mut decomposition = decompose(dist, r.next, &groups, names)?;
    decomposition.k = Some(config.k);
    Ok(decomposition)
}

impl PidDecomposition {
    pub fn node(&self, antichain: &str) -> Option<&NodeTerm> {
        let parsed: Antichain = antichain.parse().ok()?;
        self.nodes.iter().find(|n| n.antichain == parsed)
    }
}
