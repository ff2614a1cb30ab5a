//! Sparse empirical joint distributions over tuples of discrete variables.
//!
//! A [`JointDistribution`] keeps non-negative weights keyed by a mixed-radix
//! packing of the tuple (first variable in the lowest digit). Weights are
//! either integer counts from [`count_samples`] or exact probabilities from
//! [`JointDistribution::from_probabilities`]. Every probability is the plug-in
//! estimate `weight / total`; no bias correction is applied anywhere.
//!
//! Entries are stored sorted by key, so every sum over the support runs in a
//! fixed order and results are bit-reproducible.

use alloc::string::String;
use alloc::vec::Vec;

use hashbrown::HashMap;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A symbol index of a discrete variable.
pub type Symbol = u64;

#[inline]
pub(crate) fn log2(x: f64) -> f64 {
    libm::log2(x)
}

/// What a variable stands for in an information-dynamics analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    /// The destination's next value `x_{n+1}`.
    DestinationNext,
    /// The destination's packed past state `x^(k)_n`.
    DestinationHistory,
    /// Any other source.
    Source,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VariableSpec {
    pub name: String,
    pub arity: u64,
    pub role: Role,
}

impl VariableSpec {
    pub fn new(name: impl Into<String>, arity: u64, role: Role) -> Result<Self> {
        let name = name.into();
        if arity < 2 {
            return Err(Error::ArityTooSmall { name, arity });
        }
        Ok(Self { name, arity, role })
    }

    /// A destination-history variable of `k` symbols over a `base`-ary alphabet.
    pub fn history(name: impl Into<String>, base: u64, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroHistory);
        }
        let exp = u32::try_from(k).map_err(|_| Error::StateSpaceOverflow)?;
        let arity = base.checked_pow(exp).ok_or(Error::StateSpaceOverflow)?;
        Self::new(name, arity, Role::DestinationHistory)
    }
}

/// Packs the `k` values of `series` ending at index `t` into one symbol.
///
/// The most recent value `series[t]` is the lowest base-`base` digit and
/// `series[t - k + 1]` the highest.
pub fn embed_history(series: &[Symbol], base: u64, k: usize, t: usize) -> Result<Symbol> {
    if k == 0 {
        return Err(Error::ZeroHistory);
    }
    if t + 1 < k || t >= series.len() {
        return Err(Error::InsufficientHistory { k, t });
    }
    let mut packed: Symbol = 0;
    for &value in series[t + 1 - k..=t].iter() {
        if value >= base {
            return Err(Error::SymbolOutOfRange {
                name: String::from("series"),
                value,
                arity: base,
            });
        }
        packed = packed
            .checked_mul(base)
            .and_then(|p| p.checked_add(value))
            .ok_or(Error::StateSpaceOverflow)?;
    }
    Ok(packed)
}

/// Inverse of [`embed_history`]: returns the values most recent first.
pub fn unpack_history(mut packed: Symbol, base: u64, k: usize) -> Vec<Symbol> {
    (0..k)
        .map(|_| {
            let digit = packed % base;
            packed /= base;
            digit
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
struct Layout {
    arities: Vec<u64>,
    strides: Vec<u128>,
}

impl Layout {
    fn new(variables: &[VariableSpec]) -> Result<Self> {
        let mut strides = Vec::with_capacity(variables.len());
        let mut size: u128 = 1;
        for var in variables {
            if var.arity < 2 {
                return Err(Error::ArityTooSmall {
                    name: var.name.clone(),
                    arity: var.arity,
                });
            }
            strides.push(size);
            size = size
                .checked_mul(u128::from(var.arity))
                .ok_or(Error::StateSpaceOverflow)?;
        }
        Ok(Self {
            arities: variables.iter().map(|v| v.arity).collect(),
            strides,
        })
    }

    #[inline]
    fn digit(&self, key: u128, index: usize) -> Symbol {
        ((key / self.strides[index]) % u128::from(self.arities[index])) as Symbol
    }
}

/// Maps keys of one layout onto keys of a layout over a subset of its
/// variables.
#[derive(Debug, Clone)]
struct Projector {
    parts: Vec<(u128, u128, u128)>,
}

impl Projector {
    fn new(src: &Layout, positions: &[usize], dst: &Layout) -> Self {
        let parts = positions
            .iter()
            .zip(&dst.strides)
            .map(|(&p, &d)| (src.strides[p], u128::from(src.arities[p]), d))
            .collect();
        Self { parts }
    }

    #[inline]
    fn apply(&self, key: u128) -> u128 {
        self.parts
            .iter()
            .map(|&(s, a, d)| ((key / s) % a) * d)
            .sum()
    }
}

/// How the weights of a distribution were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Weighting {
    /// Integer sample counts.
    Counts,
    /// Exact probabilities set analytically.
    Probabilities,
}

/// Plug-in joint distribution over declared discrete variables.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    variables: Vec<VariableSpec>,
    layout: Layout,
    entries: Vec<(u128, f64)>,
    total: f64,
    weighting: Weighting,
}

impl JointDistribution {
    /// A distribution with no samples.
    pub fn empty(variables: Vec<VariableSpec>) -> Result<Self> {
        let layout = Layout::new(&variables)?;
        Ok(Self {
            variables,
            layout,
            entries: Vec::new(),
            total: 0.0,
            weighting: Weighting::Counts,
        })
    }

    /// Builds a counted distribution from `(tuple, count)` pairs. Repeated
    /// tuples are summed.
    pub fn from_counts<I, T>(variables: Vec<VariableSpec>, counts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (T, u64)>,
        T: AsRef<[Symbol]>,
    {
        let mut counter = Counter::new(variables)?;
        for (tuple, count) in counts {
            counter.add_many(tuple.as_ref(), count)?;
        }
        Ok(counter.finish())
    }

    /// Builds an analytic distribution. Probabilities must be finite,
    /// non-negative and sum to 1 within `1e-9`. Zero entries are dropped.
    pub fn from_probabilities<I, T>(variables: Vec<VariableSpec>, probabilities: I) -> Result<Self>
    where
        I: IntoIterator<Item = (T, f64)>,
        T: AsRef<[Symbol]>,
    {
        let layout = Layout::new(&variables)?;
        let mut map: HashMap<u128, f64> = HashMap::new();
        for (tuple, p) in probabilities {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::InvalidProbabilities(alloc::format!(
                    "probability {p} is not a finite non-negative number"
                )));
            }
            let key = encode(&variables, &layout, tuple.as_ref())?;
            if p > 0.0 {
                *map.entry(key).or_insert(0.0) += p;
            }
        }
        let mut entries: Vec<(u128, f64)> = map.into_iter().collect();
        entries.sort_unstable_by_key(|&(k, _)| k);
        let total: f64 = entries.iter().map(|&(_, w)| w).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidProbabilities(alloc::format!(
                "probabilities sum to {total}"
            )));
        }
        Ok(Self {
            variables,
            layout,
            entries,
            total,
            weighting: Weighting::Probabilities,
        })
    }

    pub fn variables(&self) -> &[VariableSpec] {
        &self.variables
    }

    pub fn weighting(&self) -> Weighting {
        self.weighting
    }

    /// Sum of all weights: the sample count for counted distributions.
    pub fn total(&self) -> f64 {
        self.total
    }

    /// Number of distinct tuples with non-zero weight.
    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.variables
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| Error::UnknownVariable(String::from(name)))
    }

    fn encode(&self, tuple: &[Symbol]) -> Result<u128> {
        encode(&self.variables, &self.layout, tuple)
    }

    fn decode(&self, key: u128) -> Vec<Symbol> {
        (0..self.variables.len())
            .map(|i| self.layout.digit(key, i))
            .collect()
    }

    #[inline]
    fn weight_of_key(&self, key: u128) -> f64 {
        self.entries
            .binary_search_by_key(&key, |&(k, _)| k)
            .map_or(0.0, |i| self.entries[i].1)
    }

    /// Raw weight (count or probability mass) of a tuple.
    pub fn weight(&self, tuple: &[Symbol]) -> Result<f64> {
        Ok(self.weight_of_key(self.encode(tuple)?))
    }

    pub fn probability(&self, tuple: &[Symbol]) -> Result<f64> {
        self.ensure_nonempty()?;
        Ok(self.weight(tuple)? / self.total)
    }

    /// Decoded `(tuple, weight)` pairs in key order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<Symbol>, f64)> + '_ {
        self.entries.iter().map(|&(k, w)| (self.decode(k), w))
    }

    fn ensure_nonempty(&self) -> Result<()> {
        if self.total <= 0.0 {
            return Err(Error::EmptyDistribution);
        }
        Ok(())
    }

    fn check_indices(&self, vars: &[usize]) -> Result<()> {
        for (n, &v) in vars.iter().enumerate() {
            if v >= self.variables.len() {
                return Err(Error::VariableIndex(v));
            }
            if vars[..n].contains(&v) {
                return Err(Error::OverlappingVariables(self.variables[v].name.clone()));
            }
        }
        Ok(())
    }

    /// The marginal over `vars`, whose variables appear in the given order.
    pub fn marginal(&self, vars: &[usize]) -> Result<Self> {
        self.check_indices(vars)?;
        let variables: Vec<VariableSpec> =
            vars.iter().map(|&v| self.variables[v].clone()).collect();
        let layout = Layout::new(&variables)?;
        let projector = Projector::new(&self.layout, vars, &layout);
        let mut map: HashMap<u128, f64> = HashMap::with_capacity(self.entries.len().min(1 << 16));
        for &(key, w) in &self.entries {
            *map.entry(projector.apply(key)).or_insert(0.0) += w;
        }
        let mut entries: Vec<(u128, f64)> = map.into_iter().collect();
        entries.sort_unstable_by_key(|&(k, _)| k);
        Ok(Self {
            variables,
            layout,
            entries,
            total: self.total,
            weighting: self.weighting,
        })
    }

    /// Pointwise sum of weights. Both operands need identical variable specs
    /// and weighting.
    pub fn merge(&self, other: &Self) -> Result<Self> {
        if self.variables != other.variables {
            return Err(Error::SpecMismatch);
        }
        if self.is_empty() {
            return Ok(other.clone());
        }
        if other.is_empty() {
            return Ok(self.clone());
        }
        if self.weighting != other.weighting {
            return Err(Error::WeightingMismatch);
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut entries = Vec::with_capacity(a.len().max(b.len()));
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                core::cmp::Ordering::Less => {
                    entries.push(a[i]);
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    entries.push(b[j]);
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    entries.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        entries.extend_from_slice(&a[i..]);
        entries.extend_from_slice(&b[j..]);
        Ok(Self {
            variables: self.variables.clone(),
            layout: self.layout.clone(),
            entries,
            total: self.total + other.total,
            weighting: self.weighting,
        })
    }
}

fn encode(variables: &[VariableSpec], layout: &Layout, tuple: &[Symbol]) -> Result<u128> {
    if tuple.len() != variables.len() {
        return Err(Error::TupleLength {
            expected: variables.len(),
            got: tuple.len(),
        });
    }
    let mut key = 0u128;
    for ((var, &stride), &value) in variables.iter().zip(&layout.strides).zip(tuple) {
        if value >= var.arity {
            return Err(Error::SymbolOutOfRange {
                name: var.name.clone(),
                value,
                arity: var.arity,
            });
        }
        key += u128::from(value) * stride;
    }
    Ok(key)
}

/// Incremental sample counter. Single writer; combine per-thread counters
/// through [`JointDistribution::merge`].
#[derive(Debug, Clone)]
pub struct Counter {
    variables: Vec<VariableSpec>,
    layout: Layout,
    counts: HashMap<u128, u64>,
    total: u64,
}

impl Counter {
    pub fn new(variables: Vec<VariableSpec>) -> Result<Self> {
        let layout = Layout::new(&variables)?;
        Ok(Self {
            variables,
            layout,
            counts: HashMap::new(),
            total: 0,
        })
    }

    pub fn add(&mut self, tuple: &[Symbol]) -> Result<()> {
        self.add_many(tuple, 1)
    }

    fn add_many(&mut self, tuple: &[Symbol], count: u64) -> Result<()> {
        let key = encode(&self.variables, &self.layout, tuple)?;
        if count > 0 {
            *self.counts.entry(key).or_insert(0) += count;
            self.total += count;
        }
        Ok(())
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn finish(self) -> JointDistribution {
        let mut entries: Vec<(u128, f64)> = self
            .counts
            .into_iter()
            .map(|(k, c)| (k, c as f64))
            .collect();
        entries.sort_unstable_by_key(|&(k, _)| k);
        JointDistribution {
            variables: self.variables,
            layout: self.layout,
            entries,
            total: self.total as f64,
            weighting: Weighting::Counts,
        }
    }
}

/// Counts a stream of tuples into a plug-in distribution.
pub fn count_samples<I, T>(variables: Vec<VariableSpec>, samples: I) -> Result<JointDistribution>
where
    I: IntoIterator<Item = T>,
    T: AsRef<[Symbol]>,
{
    let mut counter = Counter::new(variables)?;
    for sample in samples {
        counter.add(sample.as_ref())?;
    }
    Ok(counter.finish())
}

/// Conditional mutual information `I(X; Y | C)` between disjoint variable
/// sets of one distribution, with its local values.
///
/// The marginals it needs are computed once on construction, so local
/// values for many observations are cheap.
#[derive(Debug, Clone)]
pub struct MutualInformation {
    x: Vec<usize>,
    y: Vec<usize>,
    cond: Vec<usize>,
    xyc: JointDistribution,
    yc: JointDistribution,
    xc: JointDistribution,
    c: Option<JointDistribution>,
    to_yc: Projector,
    to_xc: Projector,
    to_c: Projector,
    total: f64,
}

impl MutualInformation {
    pub fn new(dist: &JointDistribution, x: &[usize], y: &[usize], cond: &[usize]) -> Result<Self> {
        if x.is_empty() || y.is_empty() {
            return Err(Error::EmptyVariableSet);
        }
        dist.ensure_nonempty()?;
        let xyc_vars: Vec<usize> = x.iter().chain(y).chain(cond).copied().collect();
        let xyc = dist.marginal(&xyc_vars)?;
        let nx = x.len();
        let ny = y.len();
        let n = xyc_vars.len();
        let yc_pos: Vec<usize> = (nx..n).collect();
        let xc_pos: Vec<usize> = (0..nx).chain(nx + ny..n).collect();
        let c_pos: Vec<usize> = (nx + ny..n).collect();
        let pick = |pos: &[usize]| pos.iter().map(|&p| xyc_vars[p]).collect::<Vec<_>>();
        let yc = dist.marginal(&pick(&yc_pos))?;
        let xc = dist.marginal(&pick(&xc_pos))?;
        let c = if cond.is_empty() {
            None
        } else {
            Some(dist.marginal(cond)?)
        };
        let to_yc = Projector::new(&xyc.layout, &yc_pos, &yc.layout);
        let to_xc = Projector::new(&xyc.layout, &xc_pos, &xc.layout);
        let to_c = match &c {
            Some(c) => Projector::new(&xyc.layout, &c_pos, &c.layout),
            None => Projector { parts: Vec::new() },
        };
        Ok(Self {
            x: x.to_vec(),
            y: y.to_vec(),
            cond: cond.to_vec(),
            total: dist.total(),
            xyc,
            yc,
            xc,
            c,
            to_yc,
            to_xc,
            to_c,
        })
    }

    #[inline]
    fn local_from_key(&self, key: u128, w_xyc: f64) -> f64 {
        let w_yc = self.yc.weight_of_key(self.to_yc.apply(key));
        let w_xc = self.xc.weight_of_key(self.to_xc.apply(key));
        let w_c = match &self.c {
            Some(c) => c.weight_of_key(self.to_c.apply(key)),
            None => self.total,
        };
        log2(w_xyc * w_c / (w_yc * w_xc))
    }

    /// `i(x; y | c) = log2 p(x | y, c) / p(x | c)` for the values of these
    /// variables in a full observation tuple of the source distribution.
    pub fn local(&self, observation: &[Symbol]) -> Result<f64> {
        let expected = self
            .x
            .iter()
            .chain(&self.y)
            .chain(&self.cond)
            .max()
            .map_or(0, |m| m + 1);
        if observation.len() < expected {
            return Err(Error::TupleLength {
                expected,
                got: observation.len(),
            });
        }
        let picked: Vec<Symbol> = self
            .x
            .iter()
            .chain(&self.y)
            .chain(&self.cond)
            .map(|&v| observation[v])
            .collect();
        let key = self.xyc.encode(&picked)?;
        let w = self.xyc.weight_of_key(key);
        if w <= 0.0 {
            return Err(Error::ZeroProbability);
        }
        Ok(self.local_from_key(key, w))
    }

    /// `(probability, local value)` for every configuration of `(X, Y, C)`
    /// in the support.
    pub fn local_values(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xyc
            .entries
            .iter()
            .map(move |&(key, w)| (w / self.total, self.local_from_key(key, w)))
    }

    /// Decoded `(x, y, c)` values, probability and local value of every
    /// configuration in the support.
    pub fn configurations(&self) -> impl Iterator<Item = (Vec<Symbol>, f64, f64)> + '_ {
        self.xyc.entries.iter().map(move |&(key, w)| {
            (
                self.xyc.decode(key),
                w / self.total,
                self.local_from_key(key, w),
            )
        })
    }

    /// The probability-weighted mean of the local values.
    pub fn average(&self) -> f64 {
        self.local_values().map(|(p, v)| p * v).sum()
    }
}

/// Local (pointwise) conditional mutual information in bits; `cond` may be
/// empty. Negative values mean the observation of `y` misinforms about `x`.
pub fn local_mi(
    dist: &JointDistribution,
    x: &[usize],
    y: &[usize],
    cond: &[usize],
    observation: &[Symbol],
) -> Result<f64> {
    MutualInformation::new(dist, x, y, cond)?.local(observation)
}

/// Average conditional mutual information in bits.
pub fn avg_mi(dist: &JointDistribution, x: &[usize], y: &[usize], cond: &[usize]) -> Result<f64> {
    Ok(MutualInformation::new(dist, x, y, cond)?.average())
}

/// Shannon entropy of the marginal over `vars`, in bits.
pub fn entropy(dist: &JointDistribution, vars: &[usize]) -> Result<f64> {
    dist.ensure_nonempty()?;
    let m = dist.marginal(vars)?;
    Ok(m.entries
        .iter()
        .map(|&(_, w)| {
            let p = w / m.total;
            -p * log2(p)
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn bits(names: &[&str]) -> Vec<VariableSpec> {
        names
            .iter()
            .map(|n| VariableSpec::new(*n, 2, Role::Source).unwrap())
            .collect()
    }

    fn or_dist() -> JointDistribution {
        let rows = [
            ([0, 0, 0], 0.25),
            ([1, 0, 1], 0.25),
            ([1, 1, 0], 0.25),
            ([1, 1, 1], 0.25),
        ];
        JointDistribution::from_probabilities(bits(&["x", "a1", "a2"]), rows).unwrap()
    }

    #[test]
    fn embed_examples() {
        let alt = [0, 1, 0, 1];
        assert_eq!(embed_history(&alt, 2, 1, 3).unwrap(), 1);
        // (x1, x2, x3) = (1, 1, 0): most recent value is the lowest digit
        assert_eq!(embed_history(&[0, 1, 1, 0], 2, 3, 3).unwrap(), 0b110);
        assert_eq!(unpack_history(0b110, 2, 3), vec![0, 1, 1]);
        let ones = [1u64; 20];
        assert_eq!(embed_history(&ones, 2, 16, 19).unwrap(), 65_535);
        assert_eq!(
            embed_history(&alt, 2, 3, 1),
            Err(Error::InsufficientHistory { k: 3, t: 1 })
        );
        assert_eq!(embed_history(&alt, 2, 0, 1), Err(Error::ZeroHistory));
    }

    #[test]
    fn history_spec_arity() {
        assert_eq!(VariableSpec::history("h", 2, 16).unwrap().arity, 65_536);
        assert!(VariableSpec::new("c", 1, Role::Source).is_err());
    }

    #[test]
    fn counting_and_errors() {
        let empty = count_samples(bits(&["a", "b"]), Vec::<[u64; 2]>::new()).unwrap();
        assert_eq!(empty.total(), 0.0);
        assert_eq!(empty.probability(&[0, 0]), Err(Error::EmptyDistribution));
        assert_eq!(
            avg_mi(&empty, &[0], &[1], &[]).unwrap_err(),
            Error::EmptyDistribution
        );

        let d = count_samples(bits(&["a", "b"]), [[1, 0]; 4]).unwrap();
        assert_eq!(d.probability(&[1, 0]).unwrap(), 1.0);
        assert!(matches!(
            count_samples(bits(&["a", "b"]), [[2, 0]]),
            Err(Error::SymbolOutOfRange { .. })
        ));
        assert!(matches!(
            count_samples(bits(&["a", "b"]), [[0u64, 0, 0]]),
            Err(Error::TupleLength { .. })
        ));
    }

    #[test]
    fn state_space_bound_for_ca_tuples() {
        let vars = vec![
            VariableSpec::new("next", 2, Role::DestinationNext).unwrap(),
            VariableSpec::history("h", 2, 16).unwrap(),
            VariableSpec::new("l", 2, Role::Source).unwrap(),
            VariableSpec::new("r", 2, Role::Source).unwrap(),
        ];
        let layout = Layout::new(&vars).unwrap();
        assert_eq!(layout.strides[3] * 2, 1 << 19);
    }

    #[test]
    fn merge_identity_and_scaling() {
        let d = count_samples(bits(&["a", "b"]), [[0, 0], [0, 1], [1, 1]]).unwrap();
        let e = JointDistribution::empty(bits(&["a", "b"])).unwrap();
        assert_eq!(d.merge(&e).unwrap(), d);
        let dd = d.merge(&d).unwrap();
        assert_eq!(dd.total(), 6.0);
        for (t, _) in d.iter() {
            assert_eq!(dd.probability(&t).unwrap(), d.probability(&t).unwrap());
        }
        assert_eq!(
            d.merge(&count_samples(bits(&["a", "c"]), [[0, 0]]).unwrap()),
            Err(Error::SpecMismatch)
        );
    }

    #[test]
    fn merging_parts_equals_counting_concatenation() {
        let rows: Vec<[u64; 2]> = (0..300u64).map(|i| [i % 2, (i / 3) % 2]).collect();
        let whole = count_samples(bits(&["a", "b"]), rows.iter()).unwrap();
        let merged = rows
            .chunks(7)
            .map(|c| count_samples(bits(&["a", "b"]), c.iter()).unwrap())
            .fold(
                JointDistribution::empty(bits(&["a", "b"])).unwrap(),
                |acc, d| acc.merge(&d).unwrap(),
            );
        assert_eq!(whole, merged);
    }

    #[test]
    fn marginal_consistency() {
        let d = count_samples(
            bits(&["a", "b", "c"]),
            [[0, 0, 1], [0, 1, 1], [1, 1, 0], [0, 1, 1]],
        )
        .unwrap();
        let m = d.marginal(&[2, 0]).unwrap();
        assert_eq!(m.variables()[0].name, "c");
        assert_eq!(m.probability(&[1, 0]).unwrap(), 0.75);
        assert_eq!(m.total(), d.total());
    }

    #[test]
    fn mi_examples() {
        let copy = count_samples(bits(&["x", "y"]), [[0, 0], [1, 1]]).unwrap();
        assert!((avg_mi(&copy, &[0], &[1], &[]).unwrap() - 1.0).abs() < 1e-12);
        assert!((local_mi(&copy, &[0], &[1], &[], &[1, 1]).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(
            local_mi(&copy, &[0], &[1], &[], &[1, 0]),
            Err(Error::ZeroProbability)
        );

        let indep = count_samples(bits(&["x", "y"]), [[0, 0], [0, 1], [1, 0], [1, 1]]).unwrap();
        for (t, _) in indep.iter() {
            assert_eq!(local_mi(&indep, &[0], &[1], &[], &t).unwrap(), 0.0);
        }
        assert_eq!(avg_mi(&indep, &[0], &[1], &[]).unwrap(), 0.0);

        let or = or_dist();
        // log2((1/2) / (3/4))
        let v = local_mi(&or, &[0], &[1], &[], &[1, 0, 1]).unwrap();
        assert!((v - (-0.584_962_500_721_156_2)).abs() < 1e-12);
        // H(X) - H(X|A1) = 0.811278... - 0.5
        let v = avg_mi(&or, &[0], &[1], &[]).unwrap();
        assert!((v - 0.311_278_124_459_132_8).abs() < 1e-12);
    }

    #[test]
    fn rejects_overlapping_sets() {
        let or = or_dist();
        assert!(matches!(
            avg_mi(&or, &[0], &[0], &[]),
            Err(Error::OverlappingVariables(_))
        ));
        assert!(matches!(
            avg_mi(&or, &[0], &[1], &[1]),
            Err(Error::OverlappingVariables(_))
        ));
        assert_eq!(
            avg_mi(&or, &[], &[1], &[]).unwrap_err(),
            Error::EmptyVariableSet
        );
    }

    #[test]
    fn probability_table_validation() {
        assert!(JointDistribution::from_probabilities(bits(&["a"]), [([0], 0.5)]).is_err());
        assert!(
            JointDistribution::from_probabilities(bits(&["a"]), [([0], -0.5), ([1], 1.5)]).is_err()
        );
        let d =
            JointDistribution::from_probabilities(bits(&["a"]), [([0], 0.0), ([1], 1.0)]).unwrap();
        assert_eq!(d.support_len(), 1);
    }
}
