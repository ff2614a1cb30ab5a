use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::lattice::{Antichain, SourceSet, MAX_SOURCES};
use crate::distributions::{JointDistribution, MutualInformation, Symbol};
use crate::{Error, Result};

/// Specific-information values closer than this are treated as a tie when
/// localizing `I_min`.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Local redundancy at one observation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalRedundancy {
    /// `i(x; a_j)` in bits for the selected source set.
    pub value: f64,
    /// The source set with minimal specific information about `x`. On ties
    /// the first set of the node in canonical order wins.
    #[serde(serialize_with = "ser_set", deserialize_with = "de_set")]
    pub source: SourceSet,
    /// Another set of the node attains the same minimum, so the local value
    /// is not uniquely defined.
    pub tie: bool,
}

fn ser_set<S: serde::Serializer>(set: &SourceSet, s: S) -> core::result::Result<S::Ok, S::Error> {
    s.collect_str(set)
}

fn de_set<'de, D: serde::Deserializer<'de>>(d: D) -> core::result::Result<SourceSet, D::Error> {
    let node: Antichain = Deserialize::deserialize(d)?;
    match node.sets() {
        [only] => Ok(*only),
        _ => Err(serde::de::Error::custom("expected a single source set")),
    }
}

/// Per-outcome terms of one source set.
#[derive(Debug, Clone)]
struct SetTerms {
    /// `I(X = x; A)` per destination outcome, aligned with `outcomes`.
    specific: Vec<f64>,
    /// Local MI `i(x; a)` between the destination and this set.
    local: MutualInformation,
}

/// `I_min` for one destination variable and up to [`MAX_SOURCES`] sources,
/// each source a group of distribution variables.
///
/// The specific information of every nonempty source set about every
/// destination outcome is computed once, so `I_min` of any lattice node is a
/// cheap lookup.
#[derive(Debug, Clone)]
pub struct IminEstimator {
    target: usize,
    sources: usize,
    outcomes: Vec<(Symbol, f64)>,
    sets: Vec<SetTerms>,
}

impl IminEstimator {
    pub fn new(dist: &JointDistribution, target: usize, sources: &[Vec<usize>]) -> Result<Self> {
        let r = sources.len();
        if r == 0 || r > MAX_SOURCES {
            return Err(Error::SourceCount(r));
        }
        let n_vars = dist.variables().len();
        let mut seen = vec![false; n_vars];
        for &v in core::iter::once(&target).chain(sources.iter().flatten()) {
            if v >= n_vars {
                return Err(Error::VariableIndex(v));
            }
            if seen[v] {
                return Err(Error::OverlappingVariables(
                    dist.variables()[v].name.clone(),
                ));
            }
            seen[v] = true;
        }
        if sources.iter().any(Vec::is_empty) {
            return Err(Error::EmptyVariableSet);
        }
        if dist.total() <= 0.0 {
            return Err(Error::EmptyDistribution);
        }
        let total = dist.total();
        let outcomes: Vec<(Symbol, f64)> = dist
            .marginal(&[target])?
            .iter()
            .map(|(t, w)| (t[0], w / total))
            .collect();

        let mut sets = Vec::with_capacity((1 << r) - 1);
        for bits in 1u32..1 << r {
            let vars: Vec<usize> = (0..r)
                .filter(|i| bits & (1 << i) != 0)
                .flat_map(|i| sources[i].iter().copied())
                .collect();
            let local = MutualInformation::new(dist, &[target], &vars, &[])?;
            let mut specific = vec![0.0; outcomes.len()];
            for (config, p_xa, i_xa) in local.configurations() {
                let o = outcome_index(&outcomes, config[0]).ok_or(Error::ZeroProbability)?;
                // p(a|x) i(x;a) = p(x,a)/p(x) i(x;a)
                specific[o] += p_xa * i_xa;
            }
            for (s, &(_, p_x)) in specific.iter_mut().zip(&outcomes) {
                *s /= p_x;
            }
            sets.push(SetTerms { specific, local });
        }
        Ok(Self {
            target,
            sources: r,
            outcomes,
            sets,
        })
    }

    pub fn sources(&self) -> usize {
        self.sources
    }

    /// Destination outcomes with non-zero probability, with `p(x)`.
    pub fn outcomes(&self) -> &[(Symbol, f64)] {
        &self.outcomes
    }

    fn set_terms(&self, set: SourceSet) -> Result<&SetTerms> {
        if set.bits() >> self.sources != 0 {
            return Err(Error::InvalidAntichain(alloc::format!(
                "{set} is not a set of the {} declared sources",
                self.sources
            )));
        }
        Ok(&self.sets[set.bits() as usize - 1])
    }

    /// `I(X = x; A) = sum_a p(a|x) log2(p(x|a) / p(x))`.
    pub fn specific_information(&self, x: Symbol, set: SourceSet) -> Result<f64> {
        let o = outcome_index(&self.outcomes, x).ok_or(Error::ZeroProbability)?;
        Ok(self.set_terms(set)?.specific[o])
    }

    /// Minimal specific information over the node's sets, with the first
    /// minimizing set and whether another set ties with it.
    fn argmin(&self, node: &Antichain, outcome: usize) -> Result<(SourceSet, f64, bool)> {
        let mut best: Option<(SourceSet, f64)> = None;
        for &set in node.sets() {
            let v = self.set_terms(set)?.specific[outcome];
            if best.is_none_or(|(_, b)| v < b) {
                best = Some((set, v));
            }
        }
        let (set, min) =
            best.ok_or_else(|| Error::InvalidAntichain(alloc::string::String::from("empty node")))?;
        let tie = node.sets().iter().filter(|&&s| s != set).any(|&s| {
            (self.sets[s.bits() as usize - 1].specific[outcome] - min).abs() <= TIE_TOLERANCE
        });
        Ok((set, min, tie))
    }

    /// `I_min(X; node) = sum_x p(x) min_{A in node} I(X = x; A)`.
    pub fn i_min(&self, node: &Antichain) -> Result<f64> {
        let mut total = 0.0;
        for (o, &(_, p_x)) in self.outcomes.iter().enumerate() {
            total += p_x * self.argmin(node, o)?.1;
        }
        Ok(total)
    }

    /// Local `i_min(x; a_1, ..., a_r) = i(x; a_j)` where `A_j` minimizes the
    /// specific information about the observed `x`.
    pub fn local(&self, node: &Antichain, observation: &[Symbol]) -> Result<LocalRedundancy> {
        let x = *observation.get(self.target).ok_or(Error::TupleLength {
            expected: self.target + 1,
            got: observation.len(),
        })?;
        let o = outcome_index(&self.outcomes, x).ok_or(Error::ZeroProbability)?;
        let (set, _, tie) = self.argmin(node, o)?;
        let value = self.set_terms(set)?.local.local(observation)?;
        Ok(LocalRedundancy {
            value,
            source: set,
            tie,
        })
    }
}

fn outcome_index(outcomes: &[(Symbol, f64)], x: Symbol) -> Option<usize> {
    outcomes.binary_search_by_key(&x, |&(s, _)| s).ok()
}

/// Specific information `I(X = x; A)` that the variables `set` provide about
/// outcome `x` of `target`.
pub fn specific_information(
    dist: &JointDistribution,
    target: usize,
    x: Symbol,
    set: &[usize],
) -> Result<f64> {
    let est = IminEstimator::new(dist, target, &[set.to_vec()])?;
    est.specific_information(x, SourceSet::new(&[0])?)
}

/// `I_min` of one lattice node over the given source groups.
pub fn i_min(
    dist: &JointDistribution,
    target: usize,
    sources: &[Vec<usize>],
    node: &Antichain,
) -> Result<f64> {
    IminEstimator::new(dist, target, sources)?.i_min(node)
}

/// Local `i_min` of one node at a full observation tuple.
pub fn local_i_min(
    dist: &JointDistribution,
    target: usize,
    sources: &[Vec<usize>],
    node: &Antichain,
    observation: &[Symbol],
) -> Result<LocalRedundancy> {
    IminEstimator::new(dist, target, sources)?.local(node, observation)
}
