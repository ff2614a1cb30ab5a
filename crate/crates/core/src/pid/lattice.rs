use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Largest source count [`build_lattice`] accepts (7579 nodes).
pub const MAX_SOURCES: usize = 5;

/// A nonempty set of sources treated as one joint variable. Bit `i` marks
/// source `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SourceSet(u32);

impl SourceSet {
    pub fn new(members: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        for &m in members {
            if m >= 32 {
                return Err(Error::SourceCount(m + 1));
            }
            bits |= 1 << m;
        }
        Self::from_bits(bits)
            .ok_or_else(|| Error::InvalidAntichain(String::from("empty source set")))
    }

    pub fn from_bits(bits: u32) -> Option<Self> {
        (bits != 0).then_some(Self(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, source: usize) -> bool {
        source < 32 && self.0 & (1 << source) != 0
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn members(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.0 & (1 << i) != 0)
    }

    fn canonical_cmp(self, other: Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.members().cmp(other.members()))
    }
}

impl fmt::Display for SourceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, m) in self.members().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", m + 1)?;
        }
        f.write_str("}")
    }
}

/// A collection of pairwise-incomparable source sets: one node of the
/// redundancy lattice. Sets are kept in canonical order (smaller sets first,
/// then lexicographic by member).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Antichain(Vec<SourceSet>);

impl Antichain {
    pub fn new(mut sets: Vec<SourceSet>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::InvalidAntichain(String::from("no source sets")));
        }
        sets.sort_by(|a, b| a.canonical_cmp(*b));
        sets.dedup();
        for (i, a) in sets.iter().enumerate() {
            for b in &sets[i + 1..] {
                if a.is_subset_of(*b) || b.is_subset_of(*a) {
                    return Err(Error::InvalidAntichain(alloc::format!(
                        "{a} and {b} are comparable"
                    )));
                }
            }
        }
        Ok(Self(sets))
    }

    pub fn sets(&self) -> &[SourceSet] {
        &self.0
    }

    /// Size of the smallest member set: the interaction order of the node.
    pub fn min_size(&self) -> usize {
        self.0.iter().map(|s| s.len()).min().unwrap_or(0)
    }

    /// Union of all member sets.
    pub fn support(&self) -> u32 {
        self.0.iter().fold(0, |acc, s| acc | s.bits())
    }

    /// `self ⪯ other`: every set of `other` contains some set of `self`.
    pub fn is_below_or_equal(&self, other: &Self) -> bool {
        other
            .0
            .iter()
            .all(|a| self.0.iter().any(|b| b.is_subset_of(*a)))
    }
}

impl fmt::Display for Antichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Antichain {
    type Err = Error;

    /// Parses the canonical text form, e.g. `{1,2}{3}`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidAntichain(String::from(s));
        let mut sets = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('{').ok_or_else(bad)?;
            let end = body.find('}').ok_or_else(bad)?;
            let members = body[..end]
                .split(',')
                .map(|m| match m.trim().parse::<usize>() {
                    Ok(n) if n >= 1 => Ok(n - 1),
                    _ => Err(bad()),
                })
                .collect::<Result<Vec<_>>>()?;
            sets.push(SourceSet::new(&members)?);
            rest = body[end + 1..].trim_start();
        }
        Self::new(sets)
    }
}

impl Serialize for Antichain {
    fn serialize<S: Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Antichain {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> core::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// All antichains of nonempty subsets of `r` sources, ordered by
/// `β ⪯ α` iff every set in `α` contains some set in `β`.
///
/// Node indices form a linear extension of the order: every node comes
/// after everything strictly below it. The bottom node is `{1}{2}...{r}` and
/// the top is `{1,...,r}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedundancyLattice {
    sources: usize,
    nodes: Vec<Antichain>,
    strictly_below: Vec<Vec<usize>>,
}

/// Enumerates the redundancy lattice over `sources` sources.
pub fn build_lattice(sources: usize) -> Result<RedundancyLattice> {
    if sources == 0 || sources > MAX_SOURCES {
        return Err(Error::SourceCount(sources));
    }
    let mut subsets: Vec<SourceSet> = (1u32..1 << sources)
        .filter_map(SourceSet::from_bits)
        .collect();
    subsets.sort_by(|a, b| a.canonical_cmp(*b));

    let mut found = Vec::new();
    let mut current = Vec::new();
    enumerate(&subsets, 0, &mut current, &mut found);

    let n = found.len();
    let below: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            (0..n)
                .filter(|&b| b != a && found[b].is_below_or_equal(&found[a]))
                .collect()
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    let text: Vec<String> = found.iter().map(|a| alloc::format!("{a}")).collect();
    order.sort_by(|&a, &b| {
        below[a]
            .len()
            .cmp(&below[b].len())
            .then_with(|| text[a].len().cmp(&text[b].len()))
            .then_with(|| text[a].cmp(&text[b]))
    });
    let mut position = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    let nodes = order.iter().map(|&old| found[old].clone()).collect();
    let strictly_below = order
        .iter()
        .map(|&old| {
            let mut v: Vec<usize> = below[old].iter().map(|&b| position[b]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    Ok(RedundancyLattice {
        sources,
        nodes,
        strictly_below,
    })
}

fn enumerate(
    subsets: &[SourceSet],
    from: usize,
    current: &mut Vec<SourceSet>,
    out: &mut Vec<Antichain>,
) {
    for i in from..subsets.len() {
        let s = subsets[i];
        if current
            .iter()
            .any(|c| c.is_subset_of(s) || s.is_subset_of(*c))
        {
            continue;
        }
        current.push(s);
        out.push(Antichain(current.clone()));
        enumerate(subsets, i + 1, current, out);
        current.pop();
    }
}

impl RedundancyLattice {
    pub fn sources(&self) -> usize {
        self.sources
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Antichain] {
        &self.nodes
    }

    pub fn node(&self, index: usize) -> &Antichain {
        &self.nodes[index]
    }

    pub fn index_of(&self, node: &Antichain) -> Option<usize> {
        self.nodes.iter().position(|n| n == node)
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Indices strictly below `index`, ascending.
    pub fn strictly_below(&self, index: usize) -> &[usize] {
        &self.strictly_below[index]
    }

    /// `nodes[lower] ⪯ nodes[upper]`.
    pub fn le(&self, lower: usize, upper: usize) -> bool {
        lower == upper || self.strictly_below[upper].binary_search(&lower).is_ok()
    }

    /// Hasse-diagram edges `(lower, upper)` where `upper` covers `lower`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.nodes.len();
        let mut edges = Vec::new();
        let mut shadowed = vec![false; n];
        for upper in 0..n {
            for &mid in &self.strictly_below[upper] {
                for &low in &self.strictly_below[mid] {
                    shadowed[low] = true;
                }
            }
            for &lower in &self.strictly_below[upper] {
                if !shadowed[lower] {
                    edges.push((lower, upper));
                }
            }
            for &mid in &self.strictly_below[upper] {
                shadowed[mid] = false;
            }
        }
        edges
    }
}
