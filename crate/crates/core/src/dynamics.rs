//! Information-dynamics measures over a distribution of
//! `(next, history, sources...)` observations.
//!
//! Every measure is a (sum of) conditional mutual information terms, so each
//! has a local form whose probability-weighted mean is the average form.
//! Measures take the distribution explicitly; re-analysing the same data under
//! a different history length means counting a new distribution.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::distributions::{JointDistribution, MutualInformation, Role, Symbol};
use crate::eca::SpacetimeGrid;
use crate::{Error, Result};

/// Names the destination and sources of an analysis with history length `k`.
///
/// The destination-history variable is the distribution's unique variable
/// with [`Role::DestinationHistory`]; its arity must be `arity(destination)^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynamicsConfig {
    pub k: usize,
    pub destination: String,
    pub sources: Vec<String>,
}

impl DynamicsConfig {
    pub fn new(k: usize, destination: impl Into<String>, sources: &[&str]) -> Self {
        Self {
            k,
            destination: destination.into(),
            sources: sources.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// The layout produced by [`crate::eca::ca_variables`].
    pub fn ca(k: usize) -> Self {
        Self::new(k, "next", &["left", "right"])
    }
}

/// Variable indices of a [`DynamicsConfig`] within one distribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedConfig {
    pub next: usize,
    pub history: usize,
    pub sources: Vec<usize>,
}

impl ResolvedConfig {
    pub fn resolve(dist: &JointDistribution, config: &DynamicsConfig) -> Result<Self> {
        if config.k == 0 {
            return Err(Error::ZeroHistory);
        }
        let vars = dist.variables();
        let next = dist.index_of(&config.destination)?;
        if vars[next].role != Role::DestinationNext {
            return Err(Error::InvalidConfig(alloc::format!(
                "`{}` is not a destination-next variable",
                config.destination
            )));
        }
        let mut histories = vars
            .iter()
            .enumerate()
            .filter(|(_, v)| v.role == Role::DestinationHistory);
        let history = match (histories.next(), histories.next()) {
            (Some((i, _)), None) => i,
            _ => {
                return Err(Error::InvalidConfig(String::from(
                    "distribution needs exactly one destination-history variable",
                )))
            }
        };
        let expected = u32::try_from(config.k)
            .ok()
            .and_then(|k| vars[next].arity.checked_pow(k));
        if expected != Some(vars[history].arity) {
            return Err(Error::InvalidConfig(alloc::format!(
                "history arity {} does not match k = {}",
                vars[history].arity,
                config.k
            )));
        }
        let mut sources = Vec::with_capacity(config.sources.len());
        for name in &config.sources {
            let index = dist.index_of(name)?;
            if index == next || index == history || sources.contains(&index) {
                return Err(Error::OverlappingVariables(name.clone()));
            }
            sources.push(index);
        }
        Ok(Self {
            next,
            history,
            sources,
        })
    }

    fn source(&self, dist: &JointDistribution, name: &str) -> Result<usize> {
        let index = dist.index_of(name)?;
        if !self.sources.contains(&index) {
            return Err(Error::InvalidConfig(alloc::format!(
                "`{name}` is not a configured source"
            )));
        }
        Ok(index)
    }
}

/// A measure with both a local and an average form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Measure {
    /// `I(X^(k); X')`.
    ActiveInfoStorage,
    /// `I(Y; X' | X^(k), Z)` for the listed conditionals `Z`. Empty
    /// conditionals give the apparent transfer entropy.
    TransferEntropy {
        source: String,
        conditionals: Vec<String>,
    },
    /// Local AIS plus the apparent local TE of every configured source.
    ///
    /// This is a heuristic rather than an information-theoretic measure: it
    /// double counts redundancy and ignores synergy between sources, but
    /// negative values flag candidate information-modification events.
    Separable,
}

/// Evaluates one [`Measure`] against a fixed distribution.
#[derive(Debug, Clone)]
pub struct MeasureEvaluator {
    terms: Vec<MutualInformation>,
}

impl MeasureEvaluator {
    pub fn new(
        dist: &JointDistribution,
        config: &DynamicsConfig,
        measure: &Measure,
    ) -> Result<Self> {
        let r = ResolvedConfig::resolve(dist, config)?;
        let ais = || MutualInformation::new(dist, &[r.next], &[r.history], &[]);
        let terms = match measure {
            Measure::ActiveInfoStorage => alloc::vec![ais()?],
            Measure::TransferEntropy {
                source,
                conditionals,
            } => {
                let y = r.source(dist, source)?;
                let mut cond = alloc::vec![r.history];
                for name in conditionals {
                    let z = dist.index_of(name)?;
                    if z == y || z == r.next || cond.contains(&z) {
                        return Err(Error::OverlappingVariables(name.clone()));
                    }
                    cond.push(z);
                }
                alloc::vec![MutualInformation::new(dist, &[r.next], &[y], &cond)?]
            }
            Measure::Separable => {
                let mut terms = alloc::vec![ais()?];
                for &y in &r.sources {
                    terms.push(MutualInformation::new(dist, &[r.next], &[y], &[r.history])?);
                }
                terms
            }
        };
        Ok(Self { terms })
    }

    /// Local value for a full observation tuple of the distribution.
    pub fn local(&self, observation: &[Symbol]) -> Result<f64> {
        self.terms.iter().map(|t| t.local(observation)).sum()
    }

    pub fn average(&self) -> f64 {
        self.terms.iter().map(MutualInformation::average).sum()
    }
}

/// Active information storage `A_X(k) = I(X^(k); X')` in bits.
pub fn active_info_storage(dist: &JointDistribution, config: &DynamicsConfig) -> Result<f64> {
    Ok(MeasureEvaluator::new(dist, config, &Measure::ActiveInfoStorage)?.average())
}

/// Local AIS `a_X(n+1, k) = i(x^(k)_n; x_{n+1})`.
pub fn local_ais(
    dist: &JointDistribution,
    config: &DynamicsConfig,
    history: Symbol,
    next: Symbol,
) -> Result<f64> {
    let r = ResolvedConfig::resolve(dist, config)?;
    let mut observation = alloc::vec![0; dist.variables().len()];
    observation[r.history] = history;
    observation[r.next] = next;
    MutualInformation::new(dist, &[r.next], &[r.history], &[])?.local(&observation)
}

fn te_measure(source: &str, conditionals: &[&str]) -> Measure {
    Measure::TransferEntropy {
        source: source.to_string(),
        conditionals: conditionals.iter().map(|c| c.to_string()).collect(),
    }
}

/// Transfer entropy `I(Y; X' | X^(k), Z)` from `source`, conditioned on the
/// listed other variables. Empty `conditionals` give the apparent TE.
pub fn transfer_entropy(
    dist: &JointDistribution,
    config: &DynamicsConfig,
    source: &str,
    conditionals: &[&str],
) -> Result<f64> {
    Ok(MeasureEvaluator::new(dist, config, &te_measure(source, conditionals))?.average())
}

/// Transfer entropy conditioned on every other configured source.
pub fn complete_transfer_entropy(
    dist: &JointDistribution,
    config: &DynamicsConfig,
    source: &str,
) -> Result<f64> {
    let others: Vec<&str> = config
        .sources
        .iter()
        .map(String::as_str)
        .filter(|s| *s != source)
        .collect();
    transfer_entropy(dist, config, source, &others)
}

/// Local transfer entropy `i(y_n; x_{n+1} | x^(k)_n, z_n)`.
pub fn local_te(
    dist: &JointDistribution,
    config: &DynamicsConfig,
    source: &str,
    conditionals: &[&str],
    observation: &[Symbol],
) -> Result<f64> {
    MeasureEvaluator::new(dist, config, &te_measure(source, conditionals))?.local(observation)
}

/// Local separable information `s_X = a_X + sum_Y t_{Y->X}`.
pub fn local_separable(
    dist: &JointDistribution,
    config: &DynamicsConfig,
    observation: &[Symbol],
) -> Result<f64> {
    MeasureEvaluator::new(dist, config, &Measure::Separable)?.local(observation)
}

/// Average separable information.
pub fn separable_information(dist: &JointDistribution, config: &DynamicsConfig) -> Result<f64> {
    Ok(MeasureEvaluator::new(dist, config, &Measure::Separable)?.average())
}

/// Local values of one measure over the cells of a CA run.
///
/// `values` is indexed `[(time - first_time) * width + cell]`; times before
/// `first_time = k` have no value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalProfile {
    pub measure: String,
    pub k: usize,
    pub width: usize,
    pub first_time: usize,
    pub steps: usize,
    pub values: Vec<f64>,
}

impl LocalProfile {
    pub fn get(&self, cell: usize, time: usize) -> Option<f64> {
        if time < self.first_time || time >= self.steps || cell >= self.width {
            return None;
        }
        Some(self.values[(time - self.first_time) * self.width + cell])
    }
}

/// Evaluates `measure` at every `(cell, time >= k)` of `grid`, using
/// probabilities from `dist`, which must be a CA distribution over
/// [`crate::eca::ca_variables`] with the same `k`.
pub fn ca_local_profile(
    dist: &JointDistribution,
    measure_name: &str,
    measure: &Measure,
    grid: &SpacetimeGrid,
    k: usize,
) -> Result<LocalProfile> {
    let evaluator = MeasureEvaluator::new(dist, &DynamicsConfig::ca(k), measure)?;
    let values = grid
        .samples(k)?
        .map(|s| evaluator.local(&s.values))
        .collect::<Result<Vec<f64>>>()?;
    Ok(LocalProfile {
        measure: measure_name.to_string(),
        k,
        width: grid.width(),
        first_time: k.min(grid.steps()),
        steps: grid.steps(),
        values,
    })
}
